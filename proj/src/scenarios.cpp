#include "invdyn/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "invdyn/errors.hpp"

namespace invdyn {

namespace {

RationalMap make(std::vector<Complex> num, std::vector<Complex> den) {
  return RationalMap::create(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

// Real x at angle theta along the great circle through 0, 1, infinity.
SpherePoint real_at(double theta) {
  const double half = theta / 2.0;
  if (std::abs(std::cos(half)) < 1e-300) return SpherePoint::infinity();
  return SpherePoint::finite(std::tan(half), 0.0);
}

}  // namespace

RationalMap example1_f() { return make({-1.0, 0.0, 2.0}, {0.0, 1.0}); }
RationalMap example1_g() { return make({-1.0, 0.0, 1.0}, {0.0, 2.0}); }
RationalMap example2_g() { return make({0.0, -3.0, 2.0}, {-1.0, 1.0}); }

std::vector<Scenario> corpus() {
  const auto square = make({0.0, 0.0, 1.0}, {1.0});
  const auto chebyshev = make({-2.0, 0.0, 1.0}, {1.0});
  return {
      {"example1", {example1_f(), example1_g()}},
      {"example2", {example1_f(), example2_g()}},
      {"single-quadratic", {square}},
      {"chebyshev", {chebyshev}},
      {"mixed", {square, chebyshev}},
      {"basilica", {make({-1.0, 0.0, 1.0}, {1.0})}},
  };
}

Scenario corpus_scenario(const std::string& name) {
  for (auto& s : corpus()) {
    if (s.name == name) return s;
  }
  throw UsageError("unknown scenario '" + name + "'");
}

std::vector<RationalMap> random_maps(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_disc_point = [&] {
    while (true) {
      const Complex z(2.0 * unit(rng), 2.0 * unit(rng));
      if (std::abs(z) < 2.0) return z;
    }
  };
  std::vector<RationalMap> out;
  while (out.size() < count) {
    const int d = 2 + static_cast<int>(rng() % 2);
    // Denominator degree d or d - 1 keeps infinity generic or a simple pole.
    const int e = d - static_cast<int>(rng() % 2);
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < d + e) {
      const Complex z = random_disc_point();
      bool apart = true;
      for (const auto& r : roots) apart = apart && std::abs(r - z) >= 0.3;
      if (apart) roots.push_back(z);
    }
    Polynomial num = Polynomial::constant(Complex(1.0 + std::abs(unit(rng)), unit(rng)));
    Polynomial den = Polynomial::constant(1.0);
    for (int k = 0; k < d; ++k) num = num * Polynomial({-roots[static_cast<std::size_t>(k)], 1.0});
    for (int k = d; k < d + e; ++k) den = den * Polynomial({-roots[static_cast<std::size_t>(k)], 1.0});
    out.push_back(RationalMap::create(std::move(num), std::move(den)));
  }
  return out;
}

std::vector<SpherePoint> extended_real_samples(std::size_t n) {
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(real_at(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

std::vector<SpherePoint> segment_samples(double a, double b, std::size_t n) {
  const double t0 = 2.0 * std::atan(a), t1 = 2.0 * std::atan(b);
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
    out.push_back(real_at(t0 + s * (t1 - t0)));
  }
  return out;
}

std::vector<SpherePoint> circle_samples(double r, std::size_t n) {
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.emplace_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

double coverage(const SphereMask& mask, std::span<const SpherePoint> points, int pixels) {
  if (points.empty()) return 1.0;
  const SphereMask near = dilate(mask, pixels);
  std::size_t hit = 0;
  for (const auto& p : points) {
    if (near.contains_point(p)) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(points.size());
}

double tightness(const SphereMask& mask, std::span<const SpherePoint> reference, int pixels) {
  const auto& g = mask.grid();
  const SphereMask near = dilate(rasterize(g, reference), pixels);
  std::size_t set = 0, inside = 0;
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    if (!g.active(i) || !mask.test(i)) continue;
    ++set;
    if (near.test(i)) ++inside;
  }
  return set == 0 ? 1.0 : static_cast<double>(inside) / static_cast<double>(set);
}

std::size_t dense_count(const TwoChartGrid& grid) {
  return static_cast<std::size_t>(16.0 * 2.0 * std::numbers::pi / grid.pixel_size()) + 1;
}

}  // namespace invdyn
