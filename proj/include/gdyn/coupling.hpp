#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gdyn {

enum class CouplingFamily { OddPolynomial, SineSum, SineSeries };
enum class SignOnPositives { NonNegative, NonPositive, Mixed };

std::string to_string(CouplingFamily family);
std::string to_string(SignOnPositives sign);

struct Root {
  double value;
  bool sign_change;
};

/// Sorted roots of f inside a bounded interval.
struct ZeroSet {
  std::vector<Root> roots;
};

/// Property flags the qualitative theorems condition on.
struct CouplingFlags {
  std::optional<double> period;
  bool finite_fibers = false;
  bool increasing = false;
  SignOnPositives sign_on_positives = SignOnPositives::Mixed;
};

/// Root isolation tolerance and per-bracket bisection cap.
inline constexpr double kRootTolerance = 1e-12;
inline constexpr int kMaxBisections = 60;

/// Odd analytic coupling function from one of three closed families. Oddness holds by
/// construction: only odd monomials or sine terms are representable.
class Coupling {
 public:
  /// f(x) = sum_k c_k x^(2k+1). Throws AllZero.
  static Coupling odd_polynomial(std::vector<double> odd_coefficients);
  /// f(x) = sum_k b_k sin(k x) over integer k; negative k folds into -b_k sin(|k| x).
  static Coupling sine_sum(const std::map<int, double>& amplitudes);
  /// f(x) = sum_{m odd} a_m sin(m pi x / P), so f(P + x) = -f(x). Even m is rejected.
  static Coupling sine_series(double half_period, const std::map<int, double>& odd_amplitudes);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }
  double deriv(double x) const;
  double second_deriv(double x) const;
  /// Primitive normalised so that primitive(0) = 0.
  double primitive(double x) const;

  CouplingFamily family() const noexcept { return family_; }
  const CouplingFlags& flags() const noexcept { return flags_; }
  std::optional<double> period() const noexcept { return flags_.period; }
  /// P with f(P + x) = -f(x), when the family guarantees one.
  std::optional<double> antiperiod() const noexcept { return antiperiod_; }
  bool finite_fibers() const noexcept { return flags_.finite_fibers; }
  bool increasing() const noexcept { return flags_.increasing; }
  SignOnPositives sign_on_positives() const noexcept { return flags_.sign_on_positives; }

  ZeroSet zeros_in(double lo, double hi) const;
  /// Zeros in (0, R] for polynomials (R a root bound) or (0, T) for period T.
  std::vector<Root> positive_zeros() const;

  /// Odd-power coefficients (polynomial family).
  const std::vector<double>& odd_coefficients() const noexcept { return odd_coeffs_; }
  /// Integer multipliers and amplitudes as given (trig families).
  const std::map<int, double>& terms() const noexcept { return terms_; }
  /// P of the sine_series family.
  double half_period() const noexcept { return half_period_; }

  std::string describe() const;

 private:
  Coupling() = default;
  void finish();
  std::vector<double> critical_points(double lo, double hi) const;
  double max_frequency() const;

  CouplingFamily family_ = CouplingFamily::OddPolynomial;
  std::vector<double> odd_coeffs_;
  std::map<int, double> terms_;
  double half_period_ = 0.0;
  double scale_ = 1.0;  // argument scale of the trig families
  std::optional<double> antiperiod_;
  CouplingFlags flags_;
};

CouplingFlags classify(const Coupling& f);

/// Real roots of the dense polynomial sum_i a_i x^i inside [lo, hi].
std::vector<Root> polynomial_roots(const std::vector<double>& ascending, double lo, double hi);

}  // namespace gdyn
