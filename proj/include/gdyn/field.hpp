#pragma once

#include "gdyn/coupling.hpp"
#include "gdyn/graph.hpp"
#include "gdyn/types.hpp"

namespace gdyn {

/// F(x) = -B f(B^T x), i.e. F_i = sum over neighbours j of f(x_j - x_i).
Vec vector_field(const Graph& g, const Coupling& f, const Vec& x);

/// Sum over oriented edges of g(x_head - x_tail) with g(0) = 0.
double energy(const Graph& g, const Coupling& f, const Vec& x);

/// Energy Hessian B diag(f'(y)) B^T; the Jacobian of F is its negative.
Mat hessian(const Graph& g, const Coupling& f, const Vec& x);

/// F applied in edge space: returns f(y) componentwise.
Vec apply_coupling(const Coupling& f, const Vec& y);

}  // namespace gdyn
