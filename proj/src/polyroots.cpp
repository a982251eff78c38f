#include "invdyn/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "invdyn/errors.hpp"

namespace invdyn {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1, Complex(0.0));
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  const double scale = max_abs_coeff();
  if (scale == 0.0) {
    coeffs_.clear();
    return;
  }
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimTolerance * scale) {
    coeffs_.pop_back();
  }
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void Polynomial::eval_with_derivative(Complex z, Complex& value, Complex& deriv) const noexcept {
  value = Complex(0.0);
  deriv = Complex(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Complex(0.0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Complex(0.0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Complex evaluate_poly(const Polynomial& p, Complex z) { return p(z); }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Coefficients with a nonzero constant term, ascending. Roots are nonzero.
struct Reduced {
  std::vector<Complex> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

// Horner on the reversed polynomial q(u) = sum c_k u^(n-k).
void eval_reversed(const std::vector<Complex>& c, Complex u, Complex& value, Complex& deriv) {
  value = Complex(0.0);
  deriv = Complex(0.0);
  for (const auto& ck : c) {
    deriv = deriv * u + value;
    value = value * u + ck;
  }
}

void eval_direct(const std::vector<Complex>& c, Complex z, Complex& value, Complex& deriv) {
  value = Complex(0.0);
  deriv = Complex(0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
}

// Newton ratio p/p' evaluated without overflow for large |z|. Returns false
// when z is (numerically) a root.
bool newton_ratio(const std::vector<Complex>& c, Complex z, Complex& ratio) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex v, d;
  if (std::abs(z) <= 1.0) {
    eval_direct(c, z, v, d);
    if (v == Complex(0.0)) return false;
    ratio = (d == Complex(0.0)) ? Complex(std::numeric_limits<double>::infinity()) : v / d;
    return true;
  }
  const Complex u = 1.0 / z;
  eval_reversed(c, u, v, d);
  if (v == Complex(0.0)) return false;
  // p'/p = u (n - u q'(u)/q(u))
  const Complex logd = u * (static_cast<double>(n) - u * d / v);
  ratio = (logd == Complex(0.0)) ? Complex(std::numeric_limits<double>::infinity()) : 1.0 / logd;
  return true;
}

// log|p(z)| without overflow.
double log_abs_value(const std::vector<Complex>& c, Complex z) {
  const int n = static_cast<int>(c.size()) - 1;
  Complex v, d;
  if (std::abs(z) <= 1.0) {
    eval_direct(c, z, v, d);
    return std::log(std::abs(v));
  }
  eval_reversed(c, 1.0 / z, v, d);
  return std::log(std::abs(v)) + n * std::log(std::abs(z));
}

// Residual bound |p(r)| <= tol (1 + |r|)^n max|c|, evaluated in log space.
bool residual_ok(const std::vector<Complex>& c, Complex r, double tol) {
  const int n = static_cast<int>(c.size()) - 1;
  double scale = 0.0;
  for (const auto& ck : c) scale = std::max(scale, std::abs(ck));
  const double lhs = log_abs_value(c, r);
  const double rhs = std::log(tol) + n * std::log1p(std::abs(r)) + std::log(scale);
  return lhs <= rhs;
}

std::vector<Complex> aberth(const std::vector<Complex>& c, const RootOptions& opt) {
  const int n = static_cast<int>(c.size()) - 1;
  const Complex lead = c.back();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<std::size_t>(k)] / lead));
  const double radius = 1.0 + bound;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  constexpr double kTwoPi = 6.283185307179586;
  // Fixed irrational offset keeps the start off symmetry axes.
  const double offset = 0.4 + opt.phase;
  for (int i = 0; i < n; ++i) {
    z[static_cast<std::size_t>(i)] = std::polar(radius, kTwoPi * i / n + offset);
  }

  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      Complex ratio;
      if (!newton_ratio(c, z[i], ratio)) {
        done[i] = 1;
        continue;
      }
      Complex s(0.0);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      Complex w;
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) {
        // Stationary point of p: fall back to the repulsion term alone.
        w = (s == Complex(0.0)) ? Complex(1e-3 * std::max(1.0, std::abs(z[i]))) : -1.0 / s;
      } else {
        const Complex den = 1.0 - ratio * s;
        w = (den == Complex(0.0)) ? ratio : ratio / den;
      }
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      moved = true;
      if (std::abs(w) <= 4.0 * kEps * std::max(1.0, std::abs(z[i]))) done[i] = 1;
    }
    if (!moved) break;
  }
  return z;
}

// Inclusion radius n |p(z_i)| / |a_n prod (z_i - z_j)|, capped.
std::vector<double> inclusion_radii(const std::vector<Complex>& c, const std::vector<Complex>& z) {
  const int n = static_cast<int>(c.size()) - 1;
  const double log_lead = std::log(std::abs(c.back()));
  std::vector<double> r(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    double lg = log_abs_value(c, z[i]) - log_lead;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      const double d = std::abs(z[i] - z[j]);
      lg -= (d > 0.0) ? std::log(d) : -700.0;
    }
    const double cap = 1e-3 * std::max(1.0, std::abs(z[i]));
    r[i] = std::min(cap, n * std::exp(lg));
    if (!std::isfinite(r[i])) r[i] = cap;
  }
  return r;
}

Complex polish_simple(const std::vector<Complex>& c, Complex z) {
  Complex best = z;
  double best_res = log_abs_value(c, z);
  for (int step = 0; step < 3; ++step) {
    Complex ratio;
    if (!newton_ratio(c, best, ratio)) break;
    if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) break;
    const Complex next = best - ratio;
    const double res = log_abs_value(c, next);
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

// A root of multiplicity m is a simple root of the (m-1)-th derivative.
Complex polish_cluster(const Polynomial& p, Complex centre, int m, double radius) {
  Polynomial d = p;
  for (int k = 1; k < m; ++k) d = d.derivative();
  if (d.degree() < 1) return centre;
  Complex z = centre;
  for (int step = 0; step < 8; ++step) {
    Complex v, dv;
    d.eval_with_derivative(z, v, dv);
    if (v == Complex(0.0) || dv == Complex(0.0)) break;
    const Complex next = z - v / dv;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
    if (std::abs(next - z) <= 4.0 * kEps * std::max(1.0, std::abs(z))) {
      z = next;
      break;
    }
    z = next;
  }
  return (std::abs(z - centre) <= 2.0 * radius) ? z : centre;
}

std::size_t find_root_index(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

RootSet find_roots(const Polynomial& p, double tol) {
  RootOptions opt;
  opt.tol = tol;
  return find_roots(p, opt);
}

RootSet find_roots(const Polynomial& p, const RootOptions& opt) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() < 1) throw UsageError("find_roots: polynomial of degree 0 has no roots");

  const auto& all = p.coeffs();
  std::size_t zeros = 0;
  while (all[zeros] == Complex(0.0)) ++zeros;
  const std::vector<Complex> c(all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end());
  const int n = static_cast<int>(c.size()) - 1;
  const Polynomial reduced(c);

  std::vector<Complex> approx;
  if (n == 1) {
    approx.push_back(-c[0] / c[1]);
  } else if (n >= 2) {
    approx = aberth(c, opt);
  }

  RootSet out;
  if (n >= 1) {
    const double merge = std::sqrt(opt.tol);
    const auto radii = inclusion_radii(c, approx);
    std::vector<std::size_t> parent(approx.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < approx.size(); ++i) {
      for (std::size_t j = i + 1; j < approx.size(); ++j) {
        const double scale = std::max(1.0, std::min(std::abs(approx[i]), std::abs(approx[j])));
        const double d = std::abs(approx[i] - approx[j]);
        if (d < merge * scale || d <= radii[i] + radii[j]) {
          parent[find_root_index(parent, i)] = find_root_index(parent, j);
        }
      }
    }
    std::vector<std::vector<std::size_t>> groups(approx.size());
    for (std::size_t i = 0; i < approx.size(); ++i) groups[find_root_index(parent, i)].push_back(i);
    for (const auto& g : groups) {
      if (g.empty()) continue;
      const int m = static_cast<int>(g.size());
      if (m == 1) {
        out.push_back({polish_simple(c, approx[g[0]]), 1});
        continue;
      }
      Complex centre(0.0);
      for (auto i : g) centre += approx[i];
      centre /= static_cast<double>(m);
      double radius = 0.0;
      for (auto i : g) radius = std::max(radius, std::abs(approx[i] - centre) + radii[i]);
      out.push_back({polish_cluster(reduced, centre, m, radius), m});
    }
  }

  if (zeros > 0) {
    const double merge = std::sqrt(opt.tol);
    auto near_zero = std::find_if(out.begin(), out.end(),
                                  [&](const Root& r) { return std::abs(r.value) < merge; });
    if (near_zero != out.end()) {
      near_zero->value = Complex(0.0);
      near_zero->multiplicity += static_cast<int>(zeros);
    } else {
      out.push_back({Complex(0.0), static_cast<int>(zeros)});
    }
  }

  for (const auto& r : out) {
    if (!residual_ok(all, r.value, opt.tol)) throw NoConvergence(opt.max_sweeps);
  }

  // Deterministic order: by real part, then imaginary part.
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace invdyn
