#include "gdyn/field.hpp"

namespace gdyn {

Vec apply_coupling(const Coupling& f, const Vec& y) {
  Vec out(y.size());
  for (Eigen::Index e = 0; e < y.size(); ++e) out(e) = f(y(e));
  return out;
}

Vec vector_field(const Graph& g, const Coupling& f, const Vec& x) {
  Vec out = Vec::Zero(g.n());
  for (int e = 0; e < g.m(); ++e) {
    const auto [a, b] = g.edge(e);
    const double v = f(x(b) - x(a));
    out(a) += v;
    out(b) -= v;
  }
  return out;
}

double energy(const Graph& g, const Coupling& f, const Vec& x) {
  double s = 0.0;
  for (const auto& [a, b] : g.edges()) s += f.primitive(x(b) - x(a));
  return s;
}

Mat hessian(const Graph& g, const Coupling& f, const Vec& x) {
  Mat h = Mat::Zero(g.n(), g.n());
  for (const auto& [a, b] : g.edges()) {
    const double w = f.deriv(x(b) - x(a));
    h(a, a) += w;
    h(b, b) += w;
    h(a, b) -= w;
    h(b, a) -= w;
  }
  return h;
}

}  // namespace gdyn
