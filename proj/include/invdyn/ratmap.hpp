#pragma once

#include <vector>

#include "invdyn/polyroots.hpp"
#include "invdyn/sphere.hpp"

namespace invdyn {

/// A point of the sphere with a positive multiplicity.
struct WeightedPoint {
  SpherePoint point;
  int multiplicity = 1;
};

/// Rational map num/den on the Riemann sphere. Degree is max(deg num, deg den).
///
/// Maps built through create() are validated to be in lowest terms: no root
/// of den lies within chordal distance 1e-7 of a root of num.
class RationalMap {
 public:
  static RationalMap create(Polynomial num, Polynomial den);
  static RationalMap polynomial(Polynomial p) { return create(std::move(p), Polynomial::constant(1.0)); }
  static RationalMap identity() { return create(Polynomial({0.0, 1.0}), Polynomial::constant(1.0)); }

  /// Bypasses the lowest-terms check. Used for derived maps such as
  /// derivatives, which may legitimately share factors.
  static RationalMap unchecked(Polynomial num, Polynomial den);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  int degree() const noexcept { return degree_; }

  /// Rescales both polynomials so the largest coefficient modulus is 1.
  RationalMap normalized() const;

  SpherePoint operator()(const SpherePoint& p) const;

 private:
  RationalMap(Polynomial num, Polynomial den);

  Polynomial num_;
  Polynomial den_;
  int degree_ = 0;
};

/// True when num and den share no root, per the numerical check above.
bool in_lowest_terms(const Polynomial& num, const Polynomial& den);

/// Evaluates f on the sphere. Throws Indeterminate when num and den both
/// vanish numerically at p.
SpherePoint eval(const RationalMap& f, const SpherePoint& p);

/// f after g, normalized. Throws DegenerateMap when the result is not in
/// lowest terms or its degree differs from deg f * deg g.
RationalMap compose(const RationalMap& f, const RationalMap& g);

/// (num' den - num den') / den^2. Not reduced; may have degree 0.
RationalMap derivative(const RationalMap& f);

/// r o f o r^-1, normalized. Throws DegenerateMap on coefficient cancellation.
RationalMap conjugate_map(const RationalMap& f, const SphereRotation& r);

/// Critical points with multiplicity (valency - 1); sum is 2 deg - 2.
std::vector<WeightedPoint> critical_points(const RationalMap& f);

/// Local degree of f at p.
int valency(const RationalMap& f, const SpherePoint& p);

/// Sum of (valency - 1) over the sphere. Throws InconsistentValency unless
/// it equals 2 (deg - 1).
int rh_deficiency(const RationalMap& f);

/// Solutions of f(w) = q with multiplicity; multiplicities sum to deg f.
std::vector<WeightedPoint> preimages(const RationalMap& f, const SpherePoint& q);

/// |f'| measured in the chordal metric, by a finite difference in whichever
/// chart keeps the arithmetic bounded.
double chordal_derivative(const RationalMap& f, const SpherePoint& p);

}  // namespace invdyn
