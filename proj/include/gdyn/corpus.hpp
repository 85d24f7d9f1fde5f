#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdyn/coupling.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/io.hpp"
#include "gdyn/symmetry.hpp"

namespace gdyn {

struct Expectation {
  std::string id;
  std::string claim;
};

struct CorpusExample {
  std::string name;
  std::string summary;
  Graph graph;
  Coupling coupling;
  std::optional<Graph> target;  // H of a covering example
  std::optional<VertexMap> phi;
  std::vector<Vec> points;      // constructed equilibria
  std::vector<Expectation> expectations;
};

struct CheckOutcome {
  std::string id;
  std::string claim;
  bool passed = false;
  json observed;
};

std::vector<std::string> corpus_names();

/// Throws UnknownExample.
CorpusExample load_corpus_example(const std::string& name);

/// Runs every expectation of the example, plus the dimension-bound compliance check.
std::vector<CheckOutcome> run_corpus_example(const CorpusExample& ex, std::uint64_t seed = 12345);

json to_json(const CorpusExample& ex);
json to_json(const CheckOutcome& c);

struct ObservedDimensions {
  int max_regular = 0;     // largest local dimension at regular points
  int max_kernel = 0;      // largest kernel count at any point, singular ones included
  int points = 0;
  int singular_points = 0;
};

/// Local dimensions seen at the constructed points and at multistart equilibria.
ObservedDimensions observed_local_dims(const CorpusExample& ex, int starts, std::uint64_t seed);

namespace constructions {
/// (0, pi, x_2, ..., x_{p+1}) on the book B_p with sum of sin(x_k) over the pages equal to 0;
/// the last angle is solved from the others.
Vec book_point(const std::vector<double>& free_angles);
/// (0, pi, a, b, c) on the theta graph with sin a + sin b + sin c = 0.
Vec theta_point(double a, double b);
/// (0, r1, r1 + r2) on K3 where r1 < r2 < r3 solve x - x^3 = lambda.
Vec k3_cubic_state(double lambda);
/// n angles with sum of exp(i x_j) equal to zero.
Vec balanced_angles(int n, std::uint64_t seed);
/// (0, t, pi, pi + t) on K4.
Vec k4_curve_state(double t);
}  // namespace constructions

}  // namespace gdyn
