#include "invdyn/ratmap.hpp"

#include <algorithm>
#include <cmath>

#include "invdyn/errors.hpp"

namespace invdyn {

namespace {

// Numerator and denominator roots closer than this count as a common factor.
constexpr double kSharedRootTol = 1e-7;
constexpr double kEvalCutoff = 1e-12;

// sum_k c_k u^(d-k): the polynomial read in the chart u = 1/z, scaled by z^-d.
Complex eval_reversed(const Polynomial& p, int d, Complex u) {
  Complex acc(0.0);
  for (int k = 0; k <= d; ++k) acc = acc * u + p.coeff(k);
  return acc;
}

// Horner rounding scale sum_k |c_k| r^(d-k) in the reversed chart, or
// sum_k |c_k| r^k when `reversed` is false.
double magnitude(const Polynomial& p, int d, double r, bool reversed) {
  double acc = 0.0;
  if (reversed) {
    for (int k = 0; k <= d; ++k) acc = acc * r + std::abs(p.coeff(k));
  } else {
    for (int k = p.degree(); k >= 0; --k) acc = acc * r + std::abs(p.coeff(k));
  }
  return acc;
}

std::vector<Polynomial> powers(const Polynomial& p, int count) {
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  out.push_back(Polynomial::constant(1.0));
  for (int k = 1; k <= count; ++k) out.push_back(out.back() * p);
  return out;
}

Polynomial wronskian(const Polynomial& num, const Polynomial& den) {
  return num.derivative() * den - num * den.derivative();
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)), degree_(std::max(num_.degree(), den_.degree())) {}

RationalMap RationalMap::unchecked(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw InvalidMap("rational map with zero denominator");
  return RationalMap(std::move(num), std::move(den));
}

RationalMap RationalMap::create(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw InvalidMap("rational map with zero denominator");
  if (num.is_zero()) throw InvalidMap("rational map with zero numerator is constant");
  RationalMap f(std::move(num), std::move(den));
  if (f.degree() < 1) throw InvalidMap("rational map must have degree at least 1");
  if (!in_lowest_terms(f.num_, f.den_)) {
    throw InvalidMap("numerator and denominator share a root; give the map in lowest terms");
  }
  return f;
}

RationalMap RationalMap::normalized() const {
  const double scale = std::max(num_.max_abs_coeff(), den_.max_abs_coeff());
  return RationalMap(num_ * Complex(1.0 / scale), den_ * Complex(1.0 / scale));
}

SpherePoint RationalMap::operator()(const SpherePoint& p) const { return eval(*this, p); }

bool in_lowest_terms(const Polynomial& num, const Polynomial& den) {
  if (num.is_zero() || den.is_zero()) return false;
  if (den.degree() < 1 || num.degree() < 1) return true;
  const auto zeros = find_roots(num);
  for (const auto& r : find_roots(den)) {
    for (const auto& z : zeros) {
      if (chordal_distance(r.value, z.value) <= kSharedRootTol) return false;
    }
  }
  return true;
}

SpherePoint eval(const RationalMap& f, const SpherePoint& p) {
  const int d = f.degree();
  const bool reversed = p.is_infinite() || std::abs(p.value()) > 1.0;
  Complex n, m, z;
  if (reversed) {
    z = p.is_infinite() ? Complex(0.0) : 1.0 / p.value();
    n = eval_reversed(f.num(), d, z);
    m = eval_reversed(f.den(), d, z);
  } else {
    z = p.value();
    n = f.num()(z);
    m = f.den()(z);
  }
  const double r = std::abs(z);
  const double cutoff =
      kEvalCutoff * std::max(magnitude(f.num(), d, r, reversed), magnitude(f.den(), d, r, reversed));
  const bool n_small = std::abs(n) < cutoff;
  const bool m_small = std::abs(m) < cutoff;
  if (n_small && m_small) throw Indeterminate("numerator and denominator vanish together");
  if (m_small) return SpherePoint::infinity();
  return SpherePoint(n / m);
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  const int d = f.degree();
  const auto sp = powers(g.num(), d);
  const auto tp = powers(g.den(), d);
  Polynomial num, den;
  for (int k = 0; k <= d; ++k) {
    const Polynomial basis = sp[static_cast<std::size_t>(k)] * tp[static_cast<std::size_t>(d - k)];
    num += basis * f.num().coeff(k);
    den += basis * f.den().coeff(k);
  }
  if (num.is_zero() || den.is_zero()) throw DegenerateMap("composition collapsed to a constant");
  const RationalMap out = RationalMap::unchecked(std::move(num), std::move(den)).normalized();
  if (out.degree() != f.degree() * g.degree()) {
    throw DegenerateMap("composition degree " + std::to_string(out.degree()) + " != " +
                        std::to_string(f.degree() * g.degree()));
  }
  if (!in_lowest_terms(out.num(), out.den())) {
    throw DegenerateMap("composition is not in lowest terms after cancellation");
  }
  return out;
}

RationalMap derivative(const RationalMap& f) {
  return RationalMap::unchecked(wronskian(f.num(), f.den()), f.den() * f.den());
}

RationalMap conjugate_map(const RationalMap& f, const SphereRotation& r) {
  const Complex a = r.alpha();
  const Complex b = r.beta();
  const auto rot = RationalMap::unchecked(Polynomial({b, a}), Polynomial({std::conj(a), -std::conj(b)}));
  const auto inv = RationalMap::unchecked(Polynomial({-b, std::conj(a)}), Polynomial({a, std::conj(b)}));
  return compose(rot, compose(f, inv));
}

std::vector<WeightedPoint> critical_points(const RationalMap& f) {
  std::vector<WeightedPoint> out;
  const Polynomial w = wronskian(f.num(), f.den());
  if (w.degree() >= 1) {
    for (const auto& r : find_roots(w)) out.push_back({SpherePoint(r.value), r.multiplicity});
  }

  // Criticality at infinity is criticality at 0 of the map seen through z -> -1/z.
  const RationalMap g = conjugate_map(f, SphereRotation::antipodal_swap());
  const Polynomial wg = wronskian(g.num(), g.den());
  const double scale = wg.max_abs_coeff();
  int order = 0;
  while (order <= wg.degree() && std::abs(wg.coeff(order)) <= 1e-12 * scale) ++order;
  if (order > 0) out.push_back({SpherePoint::infinity(), order});
  return out;
}

int valency(const RationalMap& f, const SpherePoint& p) {
  for (const auto& c : critical_points(f)) {
    if (chordal_distance(c.point, p) < 1e-6) return c.multiplicity + 1;
  }
  return 1;
}

int rh_deficiency(const RationalMap& f) {
  int total = 0;
  for (const auto& c : critical_points(f)) total += c.multiplicity;
  const int expected = 2 * (f.degree() - 1);
  if (total != expected) throw InconsistentValency(expected, total);
  return total;
}

std::vector<WeightedPoint> preimages(const RationalMap& f, const SpherePoint& q) {
  const int d = f.degree();
  Polynomial p;
  if (q.is_infinite()) {
    p = f.den();
  } else if (std::abs(q.value()) <= 1.0) {
    p = f.num() - f.den() * q.value();
  } else {
    p = f.num() * (1.0 / q.value()) - f.den();
  }
  std::vector<WeightedPoint> out;
  if (p.degree() >= 1) {
    for (const auto& r : find_roots(p)) out.push_back({SpherePoint(r.value), r.multiplicity});
  }
  const int at_infinity = d - std::max(p.degree(), 0);
  if (at_infinity > 0) out.push_back({SpherePoint::infinity(), at_infinity});
  return out;
}

double chordal_derivative(const RationalMap& f, const SpherePoint& p) {
  constexpr double kStep = 1e-7;
  SpherePoint nearby;
  if (p.is_finite() && std::abs(p.value()) <= 1.0) {
    nearby = SpherePoint(p.value() + kStep);
  } else {
    const Complex u = p.is_infinite() ? Complex(0.0) : 1.0 / p.value();
    nearby = SpherePoint(u + kStep).reciprocal();
  }
  return chordal_distance(eval(f, p), eval(f, nearby)) / chordal_distance(p, nearby);
}

}  // namespace invdyn
