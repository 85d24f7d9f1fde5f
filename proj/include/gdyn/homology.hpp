#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/graph.hpp"

namespace gdyn {

/// Fixed-width edge bitset.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int m) : m_(m), words_(static_cast<std::size_t>((m + 63) / 64), 0) {}

  void set(int e) { words_[static_cast<std::size_t>(e) >> 6] |= std::uint64_t{1} << (e & 63); }
  bool test(int e) const { return (words_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1U; }
  int count() const;
  int intersection_count(const EdgeSet& o) const;
  bool disjoint(const EdgeSet& o) const;
  EdgeSet& operator|=(const EdgeSet& o);
  int size() const noexcept { return m_; }
  std::vector<int> members() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  int m_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CycleVector {
  std::vector<int> coords;  // entries in {-1, 0, 1}, length m
  EdgeSet support;
  std::vector<int> vertices;  // traversal order, empty for basis cycles

  int length() const { return support.count(); }
};

inline constexpr int kDefaultCycleCap = 10000;

/// Fundamental cycles of a BFS spanning forest, a basis of ker(B).
std::vector<CycleVector> cycle_basis(const Graph& g);

/// All simple cycles, one orientation each. Throws CycleCapExceeded when more than cap exist.
std::vector<CycleVector> enumerate_cycles(const Graph& g, int cap = kDefaultCycleCap);

struct CycleEnumeration {
  std::vector<CycleVector> cycles;
  bool complete = true;
};
CycleEnumeration enumerate_cycles_upto(const Graph& g, int cap = kDefaultCycleCap);

/// B * gamma using integer arithmetic.
std::vector<int> boundary(const Graph& g, const std::vector<int>& coords);

struct ChainResult {
  int cc = 0;
  bool exact = true;
  std::vector<int> chain;  // indices into the enumerated cycle list
};

struct ChainOptions {
  int cap = kDefaultCycleCap;
  std::chrono::milliseconds budget{20000};
};

/// Longest cycle chain; parallel over the first cycle of the chain.
ChainResult cycle_chain_number(const Graph& g, const ChainOptions& opt = {});

/// True iff the cycles at the given indices form a chain.
bool is_cycle_chain(const std::vector<CycleVector>& cycles, const std::vector<int>& chain);

struct DimensionBounds {
  int n_minus_c = 0;
  int half_m = 0;
  int m_minus_n_plus_c = 0;
  std::optional<int> chain_bound;  // present when cc >= 1
};

struct DimensionBoundReport {
  int dim_h1 = 0;
  int cc = 0;
  bool cc_exact = true;
  DimensionBounds bounds;
  bool applicable_chain_bound = false;

  /// Smallest bound that holds for the given coupling.
  int min_applicable_bound() const;
};

DimensionBoundReport dimension_bounds(const Graph& g, const Coupling& f, const ChainOptions& opt = {});

namespace serial {
ChainResult cycle_chain_number(const Graph& g, const ChainOptions& opt = {});
}

}  // namespace gdyn
