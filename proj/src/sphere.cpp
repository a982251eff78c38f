#include "invdyn/sphere.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace invdyn {

SpherePoint::SpherePoint(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw std::invalid_argument("SpherePoint: NaN coordinate");
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kInfinitySnap) {
    infinite_ = true;
    return;
  }
  z_ = z;
}

SpherePoint SpherePoint::reciprocal() const {
  if (infinite_) return SpherePoint();
  if (z_ == Complex(0.0)) return infinity();
  return SpherePoint(1.0 / z_);
}

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinite()) return os << "inf";
  return os << '(' << p.value().real() << ',' << p.value().imag() << ')';
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(q.value()));
  if (q.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(p.value()));
  const Complex a = p.value();
  const Complex b = q.value();
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

SphereRotation::SphereRotation(Complex alpha, Complex beta) {
  const double len = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("SphereRotation: alpha and beta cannot both vanish");
  }
  alpha_ = alpha / len;
  beta_ = beta / len;
}

SphereRotation SphereRotation::to_origin(const SpherePoint& p) {
  if (p.is_infinite()) return antipodal_swap();
  // z -> (z - p) / (conj(p) z + 1), normalized.
  const Complex a = p.value();
  return {Complex(1.0), -a};
}

SphereRotation SphereRotation::inverse() const { return {std::conj(alpha_), -beta_}; }

SphereRotation SphereRotation::after(const SphereRotation& inner) const {
  // Matrix product of [[a, b], [-conj(b), conj(a)]] forms.
  const Complex a = alpha_ * inner.alpha_ - beta_ * std::conj(inner.beta_);
  const Complex b = alpha_ * inner.beta_ + beta_ * std::conj(inner.alpha_);
  return {a, b};
}

SpherePoint SphereRotation::operator()(const SpherePoint& p) const {
  const Complex c = -std::conj(beta_);
  const Complex d = std::conj(alpha_);
  if (p.is_infinite()) {
    if (c == Complex(0.0)) return SpherePoint::infinity();
    return SpherePoint(alpha_ / c);
  }
  const Complex z = p.value();
  const Complex den = c * z + d;
  if (den == Complex(0.0)) return SpherePoint::infinity();
  return SpherePoint((alpha_ * z + beta_) / den);
}

SpherePoint apply_rotation(const SphereRotation& r, const SpherePoint& p) { return r(p); }

}  // namespace invdyn
