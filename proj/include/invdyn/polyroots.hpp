#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "invdyn/sphere.hpp"

namespace invdyn {

/// Leading coefficients at or below this fraction of the largest coefficient
/// modulus are trimmed.
inline constexpr double kTrimTolerance = 1e-14;

inline constexpr double kDefaultRootTolerance = 1e-10;

/// Complex polynomial, coefficients in ascending powers. Always trimmed; the
/// zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int k, Complex c = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^k, zero when k is out of range.
  Complex coeff(int k) const noexcept {
    return (k >= 0 && k <= degree()) ? coeffs_[static_cast<std::size_t>(k)] : Complex(0.0);
  }
  Complex leading() const noexcept { return is_zero() ? Complex(0.0) : coeffs_.back(); }
  double max_abs_coeff() const noexcept;

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept;

  /// Value and first derivative in one Horner pass.
  void eval_with_derivative(Complex z, Complex& value, Complex& deriv) const noexcept;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();

  std::vector<Complex> coeffs_;
};

Complex evaluate_poly(const Polynomial& p, Complex z);

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Distinct roots with multiplicities; multiplicities sum to the degree.
using RootSet = std::vector<Root>;

struct RootOptions {
  double tol = kDefaultRootTolerance;
  int max_sweeps = 200;
  /// Extra angular offset of the initial guesses, in radians.
  double phase = 0.0;
};

/// Aberth-Ehrlich simultaneous iteration with Newton polishing. Roots closer
/// than sqrt(tol) (relative to max(1, |root|)), or whose inclusion discs
/// overlap, are merged into one entry with summed multiplicity.
///
/// Throws ZeroPolynomial for the zero polynomial, UsageError for constants,
/// and NoConvergence when a root fails the residual bound
/// |p(r)| <= tol * (1 + |r|)^deg * max|coeff| after max_sweeps.
RootSet find_roots(const Polynomial& p, const RootOptions& options);
RootSet find_roots(const Polynomial& p, double tol = kDefaultRootTolerance);

}  // namespace invdyn
