#pragma once

#include <complex>
#include <iosfwd>

namespace invdyn {

using Complex = std::complex<double>;

/// Finite values whose modulus exceeds this are treated as the point at
/// infinity. Their chordal distance to infinity is below 2e-15.
inline constexpr double kInfinitySnap = 1e15;

/// A point of the Riemann sphere: a finite complex number or infinity.
class SpherePoint {
 public:
  /// The origin.
  constexpr SpherePoint() = default;

  /// Non-finite input and values with modulus above kInfinitySnap become
  /// infinity. NaN components are rejected with std::invalid_argument.
  SpherePoint(Complex z);  // NOLINT(google-explicit-constructor)

  static constexpr SpherePoint infinity() { return SpherePoint(Tag{}); }
  static SpherePoint finite(double re, double im) { return SpherePoint(Complex(re, im)); }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Only meaningful for finite points; returns 0 for infinity.
  Complex value() const noexcept { return z_; }

  /// Image under z -> 1/z, exact for 0 and infinity.
  SpherePoint reciprocal() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    return a.infinite_ == b.infinite_ && a.z_ == b.z_;
  }

 private:
  struct Tag {};
  explicit constexpr SpherePoint(Tag) : infinite_(true) {}

  Complex z_{};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const SpherePoint& p);

/// Chordal distance 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)), in [0, 2].
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

/// Rotation of the sphere z -> (alpha z + beta) / (-conj(beta) z + conj(alpha))
/// with |alpha|^2 + |beta|^2 = 1.
class SphereRotation {
 public:
  /// Identity rotation.
  SphereRotation() = default;

  /// Normalizes (alpha, beta) to unit length. Throws std::invalid_argument
  /// when both are zero.
  SphereRotation(Complex alpha, Complex beta);

  static SphereRotation identity() { return {}; }

  /// The rotation z -> -1/z, which swaps 0 and infinity.
  static SphereRotation antipodal_swap() { return {Complex(0.0), Complex(1.0)}; }

  /// A rotation taking p to 0.
  static SphereRotation to_origin(const SpherePoint& p);

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }

  SphereRotation inverse() const;

  /// (*this) after `inner`, renormalized.
  SphereRotation after(const SphereRotation& inner) const;

  SpherePoint operator()(const SpherePoint& p) const;

 private:
  Complex alpha_{1.0, 0.0};
  Complex beta_{0.0, 0.0};
};

SpherePoint apply_rotation(const SphereRotation& r, const SpherePoint& p);

}  // namespace invdyn
