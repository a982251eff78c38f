#pragma once

#include <span>
#include <string>
#include <vector>

#include "invdyn/fractal.hpp"

namespace invdyn {

/// A named semigroup from the built-in corpus.
struct Scenario {
  std::string name;
  std::vector<RationalMap> generators;

  RationalSemigroup semigroup() const { return RationalSemigroup::create(generators); }
};

/// f(z) = 2z - 1/z.
RationalMap example1_f();
/// g(z) = (z^2 - 1) / (2z).
RationalMap example1_g();
/// f(z - 1) + 1 = (2z^2 - 3z) / (z - 1).
RationalMap example2_g();

/// Corpus used for classification: example1, example2, single-quadratic
/// (z^2), chebyshev (z^2 - 2), mixed (z^2 and z^2 - 2), basilica (z^2 - 1).
std::vector<Scenario> corpus();

/// Corpus entry by name. Throws UsageError for unknown names.
Scenario corpus_scenario(const std::string& name);

/// `count` maps of degree 2 or 3 built from random roots in |z| < 2 that are
/// pairwise at least 0.3 apart (numerator and denominator roots together), so
/// every map is comfortably in lowest terms. Deterministic in `seed`.
std::vector<RationalMap> random_maps(std::size_t count, std::uint64_t seed);

/// n points of the extended real line, equally spaced in the chordal metric
/// (the great circle through 0, 1, infinity), starting at 0.
std::vector<SpherePoint> extended_real_samples(std::size_t n);

/// n points of the real segment [a, b], equally spaced along its great-circle
/// arc, endpoints included.
std::vector<SpherePoint> segment_samples(double a, double b, std::size_t n);

/// n equally spaced points of the circle |z| = r.
std::vector<SpherePoint> circle_samples(double r, std::size_t n);

/// Fraction of `points` lying within `pixels` pixels (Chebyshev, same chart)
/// of a set pixel of `mask`.
double coverage(const SphereMask& mask, std::span<const SpherePoint> points, int pixels = 2);

/// Fraction of set pixels of `mask` lying within `pixels` pixels of the
/// rasterized reference set given by `reference` (which must be sampled
/// densely compared with the pixel size).
double tightness(const SphereMask& mask, std::span<const SpherePoint> reference, int pixels = 2);

/// Reference sample density used with tightness(): 16 points per pixel of
/// great-circle length.
std::size_t dense_count(const TwoChartGrid& grid);

}  // namespace invdyn
