#include "gdyn/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gdyn/errors.hpp"

namespace gdyn {

namespace {

constexpr double kPi = std::numbers::pi;

double horner(const std::vector<double>& a, double x) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& a) {
  std::vector<double> d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<double>(i) * a[i]);
  return d;
}

void trim(std::vector<double>& a) {
  while (!a.empty() && a.back() == 0.0) a.pop_back();
}

int sign_of(double v) { return (v > 0) - (v < 0); }

double bisect(const auto& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < kMaxBisections && (b - a) > kRootTolerance; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

std::vector<Root> dedupe(std::vector<Root> roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
  std::vector<Root> out;
  for (const auto& r : roots) {
    if (!out.empty() && std::abs(out.back().value - r.value) <= 1e-9 * std::max(1.0, std::abs(r.value))) {
      out.back().sign_change = out.back().sign_change || r.sign_change;
      continue;
    }
    out.push_back(r);
  }
  return out;
}

/// f is monotone between consecutive knots; each knot is itself checked for a root.
std::vector<Root> isolate(const auto& f, std::vector<double> knots, double lo, double hi) {
  knots.push_back(lo);
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::remove_if(knots.begin(), knots.end(), [&](double t) { return t < lo || t > hi; }),
              knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<Root> roots;
  for (double t : knots) {
    if (std::abs(f(t)) <= kRootTolerance) {
      const double delta = 1e-6 * std::max(1.0, std::abs(t));
      roots.push_back({t, sign_of(f(t - delta)) * sign_of(f(t + delta)) < 0});
    }
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double fa = f(a), fb = f(b);
    if (std::abs(fa) > kRootTolerance && std::abs(fb) > kRootTolerance && sign_of(fa) != sign_of(fb))
      roots.push_back({bisect(f, a, b), true});
  }
  return dedupe(std::move(roots));
}

double cauchy_bound(const std::vector<double>& a) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) m = std::max(m, std::abs(a[i] / a.back()));
  return 1.0 + m;
}

}  // namespace

std::vector<Root> polynomial_roots(const std::vector<double>& ascending, double lo, double hi) {
  std::vector<double> a = ascending;
  trim(a);
  if (a.size() <= 1) return {};
  std::vector<double> knots;
  if (a.size() > 2) {
    for (const auto& r : polynomial_roots(derivative(a), lo, hi)) knots.push_back(r.value);
  }
  return isolate([&](double x) { return horner(a, x); }, std::move(knots), lo, hi);
}

std::string to_string(CouplingFamily family) {
  switch (family) {
    case CouplingFamily::OddPolynomial: return "odd_poly";
    case CouplingFamily::SineSum: return "sine_sum";
    case CouplingFamily::SineSeries: return "sine_series";
  }
  return "unknown";
}

std::string to_string(SignOnPositives sign) {
  switch (sign) {
    case SignOnPositives::NonNegative: return ">=0";
    case SignOnPositives::NonPositive: return "<=0";
    case SignOnPositives::Mixed: return "mixed";
  }
  return "unknown";
}

Coupling Coupling::odd_polynomial(std::vector<double> odd_coefficients) {
  for (double c : odd_coefficients)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidCoupling, "non-finite coefficient");
  trim(odd_coefficients);
  if (odd_coefficients.empty()) throw Error(ErrorCode::AllZero, "polynomial coupling is identically zero");
  Coupling f;
  f.family_ = CouplingFamily::OddPolynomial;
  f.odd_coeffs_ = std::move(odd_coefficients);
  f.finish();
  return f;
}

Coupling Coupling::sine_sum(const std::map<int, double>& amplitudes) {
  std::map<int, double> folded;
  for (const auto& [k, b] : amplitudes) {
    if (!std::isfinite(b)) throw Error(ErrorCode::InvalidCoupling, "non-finite amplitude");
    if (k == 0) continue;
    folded[std::abs(k)] += (k > 0 ? b : -b);
  }
  std::erase_if(folded, [](const auto& kv) { return kv.second == 0.0; });
  if (folded.empty()) throw Error(ErrorCode::AllZero, "sine coupling is identically zero");
  Coupling f;
  f.family_ = CouplingFamily::SineSum;
  f.terms_ = std::move(folded);
  f.scale_ = 1.0;
  f.finish();
  return f;
}

Coupling Coupling::sine_series(double half_period, const std::map<int, double>& odd_amplitudes) {
  if (!(half_period > 0.0) || !std::isfinite(half_period))
    throw Error(ErrorCode::InvalidCoupling, "sine series needs P > 0");
  std::map<int, double> terms;
  for (const auto& [m, a] : odd_amplitudes) {
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidCoupling, "non-finite amplitude");
    if (a == 0.0) continue;
    if (m <= 0 || m % 2 == 0)
      throw Error(ErrorCode::InvalidCoupling, "sine series admits only positive odd harmonics");
    terms[m] += a;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0.0; });
  if (terms.empty()) throw Error(ErrorCode::AllZero, "sine series coupling is identically zero");
  Coupling f;
  f.family_ = CouplingFamily::SineSeries;
  f.terms_ = std::move(terms);
  f.half_period_ = half_period;
  f.scale_ = kPi / half_period;
  f.finish();
  return f;
}

double Coupling::eval(double x) const {
  if (family_ == CouplingFamily::OddPolynomial) {
    const double x2 = x * x;
    double acc = 0.0;
    for (auto it = odd_coeffs_.rbegin(); it != odd_coeffs_.rend(); ++it) acc = acc * x2 + *it;
    return acc * x;
  }
  double s = 0.0;
  for (const auto& [k, a] : terms_) s += a * std::sin(k * scale_ * x);
  return s;
}

double Coupling::deriv(double x) const {
  if (family_ == CouplingFamily::OddPolynomial) {
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t i = odd_coeffs_.size(); i-- > 0;)
      acc = acc * x2 + static_cast<double>(2 * i + 1) * odd_coeffs_[i];
    return acc;
  }
  double s = 0.0;
  for (const auto& [k, a] : terms_) {
    const double w = k * scale_;
    s += a * w * std::cos(w * x);
  }
  return s;
}

double Coupling::second_deriv(double x) const {
  if (family_ == CouplingFamily::OddPolynomial) {
    // sum (2i+1)(2i) c_i x^(2i-1)
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t i = odd_coeffs_.size(); i-- > 1;)
      acc = acc * x2 + static_cast<double>((2 * i + 1) * (2 * i)) * odd_coeffs_[i];
    return acc * x;
  }
  double s = 0.0;
  for (const auto& [k, a] : terms_) {
    const double w = k * scale_;
    s -= a * w * w * std::sin(w * x);
  }
  return s;
}

double Coupling::primitive(double x) const {
  if (family_ == CouplingFamily::OddPolynomial) {
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t i = odd_coeffs_.size(); i-- > 0;)
      acc = acc * x2 + odd_coeffs_[i] / static_cast<double>(2 * i + 2);
    return acc * x2;
  }
  double s = 0.0;
  for (const auto& [k, a] : terms_) {
    const double w = k * scale_;
    // 1 - cos(wx) = 2 sin^2(wx/2) avoids cancellation near 0
    const double h = std::sin(0.5 * w * x);
    s += a * 2.0 * h * h / w;
  }
  return s;
}

double Coupling::max_frequency() const {
  double w = 0.0;
  for (const auto& [k, a] : terms_) w = std::max(w, k * scale_);
  return w;
}

std::vector<double> Coupling::critical_points(double lo, double hi) const {
  std::vector<double> out;
  if (family_ == CouplingFamily::OddPolynomial) {
    std::vector<double> dense(2 * odd_coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < odd_coeffs_.size(); ++i) dense[2 * i + 1] = odd_coeffs_[i];
    for (const auto& r : polynomial_roots(derivative(dense), lo, hi)) out.push_back(r.value);
    return out;
  }
  // Grid fine enough that f' has at most one sign change per cell for these trig sums.
  const double h = 2.0 * kPi / (64.0 * max_frequency());
  const auto cells = static_cast<long>(std::ceil((hi - lo) / h));
  auto fp = [this](double x) { return deriv(x); };
  double a = lo, fa = fp(a);
  for (long i = 1; i <= cells; ++i) {
    const double b = std::min(hi, lo + static_cast<double>(i) * h);
    const double fb = fp(b);
    if (fb == 0.0) {
      out.push_back(b);
    } else if (fa != 0.0 && sign_of(fa) != sign_of(fb)) {
      out.push_back(bisect(fp, a, b));
    }
    a = b;
    fa = fb;
  }
  return out;
}

ZeroSet Coupling::zeros_in(double lo, double hi) const {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidInput, "zeros_in needs a bounded interval lo <= hi");
  return {isolate([this](double x) { return eval(x); }, critical_points(lo, hi), lo, hi)};
}

std::vector<Root> Coupling::positive_zeros() const {
  double hi;
  if (flags_.period) {
    hi = *flags_.period;
  } else {
    std::vector<double> dense(2 * odd_coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < odd_coeffs_.size(); ++i) dense[2 * i + 1] = odd_coeffs_[i];
    hi = cauchy_bound(dense);
  }
  std::vector<Root> out;
  for (const auto& r : zeros_in(0.0, hi).roots) {
    if (r.value <= kRootTolerance) continue;
    if (flags_.period && r.value >= *flags_.period - 1e-9) continue;
    out.push_back(r);
  }
  return out;
}

void Coupling::finish() {
  if (family_ != CouplingFamily::OddPolynomial) {
    int g = 0;
    for (const auto& [k, a] : terms_) g = std::gcd(g, k);
    const double period = 2.0 * kPi / (g * scale_);
    flags_.period = period;
    const bool all_odd = std::all_of(terms_.begin(), terms_.end(),
                                     [g](const auto& kv) { return (kv.first / g) % 2 == 1; });
    if (all_odd) antiperiod_ = 0.5 * period;
  }
  flags_ = classify(*this);
}

CouplingFlags classify(const Coupling& f) {
  CouplingFlags out;
  if (f.family() == CouplingFamily::OddPolynomial) {
    const auto& c = f.odd_coefficients();
    out.finite_fibers = true;
    std::vector<double> dense(2 * c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) dense[2 * i + 1] = c[i];
    const double r = cauchy_bound(dense);
    const auto d = derivative(dense);
    const double dr = d.size() > 1 ? cauchy_bound(d) : 1.0;
    // increasing <=> f' >= 0 with isolated zeros <=> no sign change of f' and f' > 0 far out
    bool sign_change = false;
    for (const auto& root : polynomial_roots(d, -dr, dr)) sign_change = sign_change || root.sign_change;
    out.increasing = !sign_change && horner(d, dr + 1.0) > 0.0;
    bool mixed = false;
    for (const auto& root : polynomial_roots(dense, kRootTolerance, r))
      if (root.value > kRootTolerance && root.sign_change) mixed = true;
    if (mixed)
      out.sign_on_positives = SignOnPositives::Mixed;
    else
      out.sign_on_positives = horner(dense, r + 1.0) > 0.0 ? SignOnPositives::NonNegative
                                                             : SignOnPositives::NonPositive;
    return out;
  }

  const double period = *f.period();
  out.period = period;
  out.finite_fibers = false;

  // Certified minimum of f' over one period: grid minimum minus Lipschitz slack of f'.
  double lipschitz = 0.0, wmax = 0.0;
  const double scale = f.family() == CouplingFamily::SineSeries ? kPi / f.half_period() : 1.0;
  for (const auto& [k, a] : f.terms()) {
    const double w = k * scale;
    lipschitz += std::abs(a) * w * w;
    wmax = std::max(wmax, w);
  }
  const int cells = 256 * std::max(1, static_cast<int>(std::ceil(wmax * period / (2.0 * kPi))));
  const double h = period / cells;
  double min_fp = f.deriv(0.0);
  for (int i = 1; i < cells; ++i) min_fp = std::min(min_fp, f.deriv(i * h));
  out.increasing = (min_fp - 0.5 * lipschitz * h) >= 0.0;

  bool mixed = false;
  for (const auto& root : f.zeros_in(0.0, period).roots) {
    if (root.value > kRootTolerance && root.value < period - 1e-9 && root.sign_change) mixed = true;
  }
  if (mixed)
    out.sign_on_positives = SignOnPositives::Mixed;
  else
    out.sign_on_positives =
        f.eval(0.25 * period) >= 0.0 ? SignOnPositives::NonNegative : SignOnPositives::NonPositive;
  return out;
}

std::string Coupling::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (family_ == CouplingFamily::OddPolynomial) {
    bool first = true;
    for (std::size_t i = 0; i < odd_coeffs_.size(); ++i) {
      if (odd_coeffs_[i] == 0.0) continue;
      os << (first ? "" : " + ") << odd_coeffs_[i] << "*x^" << (2 * i + 1);
      first = false;
    }
    return os.str();
  }
  bool first = true;
  for (const auto& [k, a] : terms_) {
    os << (first ? "" : " + ") << a << "*sin(" << k;
    if (family_ == CouplingFamily::SineSeries) os << "*pi/" << half_period_;
    os << "*x)";
    first = false;
  }
  return os.str();
}

}  // namespace gdyn
