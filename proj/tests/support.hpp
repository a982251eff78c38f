#pragma once

#include <complex>
#include <random>
#include <vector>

#include "invdyn/ratmap.hpp"

namespace testing {

using invdyn::Complex;
using invdyn::SpherePoint;

inline invdyn::RationalMap map(std::vector<Complex> num, std::vector<Complex> den) {
  return invdyn::RationalMap::create(invdyn::Polynomial(std::move(num)), invdyn::Polynomial(std::move(den)));
}

// Points spread over the whole sphere: uniform on the unit sphere, then
// stereographic projection, so both hemispheres are sampled evenly.
inline std::vector<SpherePoint> random_sphere_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SpherePoint> out;
  while (out.size() < n) {
    const double x = normal(rng), y = normal(rng), z = normal(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r < 1e-9 || 1.0 - z / r < 1e-9) continue;
    out.emplace_back(Complex(x / r, y / r) / (1.0 - z / r));
  }
  return out;
}

inline double dist(const SpherePoint& a, const SpherePoint& b) { return invdyn::chordal_distance(a, b); }

}  // namespace testing
