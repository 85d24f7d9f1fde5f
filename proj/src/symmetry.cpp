#include "gdyn/symmetry.hpp"

#include <algorithm>
#include <atomic>

#include "gdyn/errors.hpp"
#include "gdyn/field.hpp"

namespace gdyn {

namespace {

bool map_shape_ok(const VertexMap& phi, const Graph& g, const Graph& h) {
  if (static_cast<int>(phi.size()) != g.n()) return false;
  return std::all_of(phi.begin(), phi.end(), [&](int v) { return v >= 0 && v < h.n(); });
}

bool surjective(const VertexMap& phi, const Graph& h) {
  std::vector<bool> hit(static_cast<std::size_t>(h.n()), false);
  for (int v : phi) hit[static_cast<std::size_t>(v)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

// Fiber degree at i, or 0 when the condition fails there.
int local_degree(const VertexMap& phi, const Graph& g, const Graph& h, int i) {
  const int pi = phi[static_cast<std::size_t>(i)];
  const auto target = h.neighbors(pi);
  std::vector<int> counts(target.size(), 0);
  for (int j : g.neighbors(i)) {
    const int pj = phi[static_cast<std::size_t>(j)];
    if (pj == pi) continue;
    const auto it = std::lower_bound(target.begin(), target.end(), pj);
    if (it == target.end() || *it != pj) return 0;
    ++counts[static_cast<std::size_t>(it - target.begin())];
  }
  if (counts.empty()) return 0;
  const int d = counts.front();
  if (d < 1) return 0;
  for (int c : counts)
    if (c != d) return 0;
  return d;
}

}  // namespace

bool is_covering(const VertexMap& phi, const Graph& g, const Graph& h) {
  if (!map_shape_ok(phi, g, h) || !surjective(phi, h)) return false;
  for (int i = 0; i < g.n(); ++i) {
    const int pi = phi[static_cast<std::size_t>(i)];
    if (g.degree(i) != h.degree(pi)) return false;
    std::vector<int> img;
    for (int j : g.neighbors(i)) img.push_back(phi[static_cast<std::size_t>(j)]);
    std::sort(img.begin(), img.end());
    const auto nb = h.neighbors(pi);
    if (!std::equal(img.begin(), img.end(), nb.begin(), nb.end())) return false;
  }
  return true;
}

GeneralizedCoveringCheck is_generalized_covering(const VertexMap& phi, const Graph& g, const Graph& h) {
  GeneralizedCoveringCheck r;
  if (!map_shape_ok(phi, g, h) || !surjective(phi, h)) return r;
  std::vector<int> d(static_cast<std::size_t>(g.n()), 0);
  for (int i = 0; i < g.n(); ++i) {
    d[static_cast<std::size_t>(i)] = local_degree(phi, g, h, i);
    if (d[static_cast<std::size_t>(i)] == 0) return r;
  }
  r.valid = true;
  r.fiber_degrees = d;
  r.equitable = std::all_of(d.begin(), d.end(), [&](int v) { return v == d.front(); });
  r.ordinary_covering = is_covering(phi, g, h);
  return r;
}

namespace {

struct CoverSearch {
  const Graph& g;
  const Graph& h;
  int cap;
  std::atomic<int>& total;
  std::vector<int> phi;
  std::vector<VertexMap> found;
  bool overflow = false;

  // vertex i is complete once it and all its neighbours carry a colour
  bool complete_at(int i, int upto) const {
    for (int j : g.neighbors(i))
      if (j > upto) return false;
    return true;
  }

  void extend(int v) {
    if (overflow) return;
    if (v == g.n()) {
      if (!surjective(phi, h)) return;
      if (total.fetch_add(1) >= cap) {
        overflow = true;
        return;
      }
      found.push_back(phi);
      return;
    }
    for (int c = 0; c < h.n(); ++c) {
      phi[static_cast<std::size_t>(v)] = c;
      bool ok = true;
      for (int j : g.neighbors(v)) {
        if (j >= v) continue;
        const int pj = phi[static_cast<std::size_t>(j)];
        if (pj != c && !h.adjacent(pj, c)) {
          ok = false;
          break;
        }
      }
      if (ok && complete_at(v, v) && local_degree(phi, g, h, v) == 0) ok = false;
      if (ok) {
        for (int j : g.neighbors(v)) {
          if (j < v && complete_at(j, v) && local_degree(phi, g, h, j) == 0) {
            ok = false;
            break;
          }
        }
      }
      if (ok) extend(v + 1);
      if (overflow) return;
    }
    phi[static_cast<std::size_t>(v)] = -1;
  }
};

CoveringSearch covering_search(const Graph& g, const Graph& h, int cap, bool parallel) {
  if (g.n() > kMaxSearchVertices)
    throw Error(ErrorCode::GraphTooLarge, "covering search is limited to 16 vertices");
  CoveringSearch res;
  if (g.n() == 0 || h.n() == 0) return res;
  std::atomic<int> total{0};
  std::vector<std::vector<VertexMap>> per(static_cast<std::size_t>(h.n()));
  std::vector<char> overflow(static_cast<std::size_t>(h.n()), 0);
  const int hn = h.n();
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int c0 = 0; c0 < hn; ++c0) {
    CoverSearch s{g, h, cap, total, std::vector<int>(static_cast<std::size_t>(g.n()), -1), {}, false};
    s.phi[0] = c0;
    bool ok = !(s.complete_at(0, 0) && local_degree(s.phi, g, h, 0) == 0);
    if (ok) s.extend(1);
    per[static_cast<std::size_t>(c0)] = std::move(s.found);
    overflow[static_cast<std::size_t>(c0)] = s.overflow;
  }
  if (std::any_of(overflow.begin(), overflow.end(), [](char o) { return o != 0; }))
    throw Error(ErrorCode::SearchBudgetExceeded, "more than " + std::to_string(cap) + " covering maps");
  for (auto& v : per)
    for (auto& m : v) res.maps.push_back(std::move(m));
  std::sort(res.maps.begin(), res.maps.end());
  return res;
}

}  // namespace

CoveringSearch find_generalized_coverings(const Graph& g, const Graph& h, int cap) {
  return covering_search(g, h, cap, true);
}

namespace serial {
CoveringSearch find_generalized_coverings(const Graph& g, const Graph& h, int cap) {
  return covering_search(g, h, cap, false);
}
}  // namespace serial

EquilibriumPoint lift_equilibrium(const VertexMap& phi, const Graph& g, const Graph& h, const Coupling& f,
                                  const Vec& y, const Tolerances& tol) {
  if (!map_shape_ok(phi, g, h)) throw Error(ErrorCode::InvalidInput, "phi must map V(G) into V(H)");
  if (y.size() != h.n()) throw Error(ErrorCode::InvalidInput, "state length must equal |V(H)|");
  const double res = vector_field(h, f, y).norm();
  if (res > tol.eq_threshold(y))
    throw Error(ErrorCode::NotAnEquilibrium, "input residual " + std::to_string(res) + " exceeds T_eq");
  Vec x(g.n());
  for (int i = 0; i < g.n(); ++i) x(i) = y(phi[static_cast<std::size_t>(i)]);
  return make_point(g, f, x);
}

AutomorphismSet automorphisms(const Graph& g, int cap) {
  if (g.n() > kMaxSearchVertices) throw Error(ErrorCode::GraphTooLarge, "automorphism search is limited to 16 vertices");
  AutomorphismSet out;
  const int n = g.n();
  std::vector<int> sigma(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int v) -> void {
    if (!out.complete) return;
    if (v == n) {
      if (static_cast<int>(out.perms.size()) >= cap) {
        out.complete = false;
        return;
      }
      out.perms.push_back(sigma);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[static_cast<std::size_t>(w)] || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (g.adjacent(u, v) != g.adjacent(sigma[static_cast<std::size_t>(u)], w)) ok = false;
      if (!ok) continue;
      sigma[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = true;
      self(self, v + 1);
      used[static_cast<std::size_t>(w)] = false;
      if (!out.complete) return;
    }
  };
  rec(rec, 0);
  return out;
}

Vec act(const std::vector<int>& sigma, const Vec& x) {
  Vec out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) out(sigma[static_cast<std::size_t>(j)]) = x(j);
  return out;
}

Orbit orbit_of_equilibrium(const Graph& g, const Coupling& f, const AutomorphismSet& a, const EquilibriumPoint& x,
                           const Tolerances& tol, double dedup_distance) {
  if (x.residual > tol.eq_threshold(x.x))
    throw Error(ErrorCode::NotAnEquilibrium, "orbit needs an equilibrium");
  Orbit o;
  const auto period = f.period();
  for (const auto& sigma : a.perms) {
    auto p = make_point(g, f, act(sigma, x.x));
    if (p.residual > tol.eq_threshold(p.x))
      throw Error(ErrorCode::NotAnEquilibrium, "image under an automorphism is not an equilibrium");
    const bool is_identity = std::is_sorted(sigma.begin(), sigma.end());
    if (equivalence_distance(p.y, x.y, period) <= dedup_distance) {
      o.stabilizer.push_back(sigma);
      if (!is_identity) o.fixed_by_nontrivial = true;
    }
    const bool dup = std::any_of(o.members.begin(), o.members.end(), [&](const OrbitMember& m) {
      return equivalence_distance(m.point.y, p.y, period) <= dedup_distance;
    });
    if (!dup) o.members.push_back({std::move(p), sigma});
  }
  return o;
}

}  // namespace gdyn
