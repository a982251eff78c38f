#include <doctest.h>

#include <cmath>
#include <limits>

#include "invdyn/ratmap.hpp"
#include "support.hpp"

using namespace invdyn;
using testing::dist;

TEST_SUITE("sphere") {

TEST_CASE("chordal distance examples") {
  CHECK(chordal_distance(SpherePoint(0.0), SpherePoint::infinity()) == doctest::Approx(2.0));
  const SpherePoint z = SpherePoint::finite(0.3, -1.7);
  CHECK(chordal_distance(z, z) == 0.0);
  CHECK(chordal_distance(SpherePoint(0.0), SpherePoint(1.0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
  // Limit formula: 2 / sqrt(1 + |p|^2).
  CHECK(chordal_distance(SpherePoint(Complex(3.0, 4.0)), SpherePoint::infinity()) ==
        doctest::Approx(2.0 / std::sqrt(26.0)));
}

TEST_CASE("chordal distance is a metric") {
  const auto pts = testing::random_sphere_points(3000, 11);
  for (std::size_t k = 0; k + 2 < pts.size(); k += 3) {
    const auto &a = pts[k], &b = pts[k + 1], &c = pts[k + 2];
    const double ab = dist(a, b), bc = dist(b, c), ac = dist(a, c);
    CHECK(ab >= 0.0);
    CHECK(ab <= 2.0 + 1e-12);
    CHECK(ab == doctest::Approx(dist(b, a)).epsilon(1e-12));
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("sphere points") {
  CHECK(SpherePoint(Complex(2e15, 0.0)).is_infinite());
  CHECK(SpherePoint(Complex(std::numeric_limits<double>::infinity(), 0.0)).is_infinite());
  CHECK(SpherePoint(Complex(1e14, 0.0)).is_finite());
  CHECK_THROWS_AS(SpherePoint(Complex(std::nan(""), 0.0)), std::invalid_argument);
  CHECK(SpherePoint(0.0).reciprocal().is_infinite());
  CHECK(SpherePoint::infinity().reciprocal() == SpherePoint(0.0));
}

TEST_CASE("rotation examples") {
  const SpherePoint p = SpherePoint::finite(0.4, 0.9);
  CHECK(apply_rotation(SphereRotation::identity(), p) == p);
  CHECK(apply_rotation(SphereRotation::identity(), SpherePoint::infinity()).is_infinite());
  const SphereRotation r(0.0, 1.0);
  CHECK(dist(apply_rotation(r, SpherePoint(1.0)), SpherePoint(-1.0)) < 1e-15);
  CHECK(apply_rotation(r, SpherePoint(0.0)).is_infinite());
  CHECK(dist(apply_rotation(r, SpherePoint::infinity()), SpherePoint(0.0)) < 1e-15);
}

TEST_CASE("rotations are normalized isometries") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  const auto pts = testing::random_sphere_points(200, 12);
  for (int t = 0; t < 20; ++t) {
    const SphereRotation r(Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng)));
    CHECK(std::norm(r.alpha()) + std::norm(r.beta()) == doctest::Approx(1.0).epsilon(1e-12));
    const auto inv = r.inverse();
    for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
      CHECK(std::abs(dist(r(pts[k]), r(pts[k + 1])) - dist(pts[k], pts[k + 1])) <= 1e-10);
    }
    for (std::size_t k = 0; k < 100; ++k) {
      CHECK(dist(inv(r(pts[k])), pts[k]) <= 1e-12);
      CHECK(dist(r.after(inv)(pts[k]), pts[k]) <= 1e-12);
    }
  }
}

TEST_CASE("to_origin sends the point to 0") {
  for (const auto& p : testing::random_sphere_points(50, 3)) {
    CHECK(dist(SphereRotation::to_origin(p)(p), SpherePoint(0.0)) < 1e-12);
  }
  CHECK(dist(SphereRotation::to_origin(SpherePoint::infinity())(SpherePoint::infinity()), SpherePoint(0.0)) < 1e-12);
}

TEST_CASE("conjugate_map examples") {
  const auto sq = testing::map({0.0, 0.0, 1.0}, {1.0});
  const auto c = conjugate_map(sq, SphereRotation::identity());
  CHECK(c.degree() == 2);
  for (const auto& z : testing::random_sphere_points(50, 4)) CHECK(dist(eval(c, z), eval(sq, z)) < 1e-12);
  // Normalized coefficients of z^2 are already (0, 0, 1) over (1).
  CHECK(std::abs(c.num().coeff(2) - Complex(1.0)) < 1e-12);
  CHECK(c.num().degree() == 2);
  CHECK(c.den().degree() == 0);

  // -1 / f(-1/w) for f = 2z - 1/z is -w / (w^2 - 2).
  const auto f = testing::map({-1.0, 0.0, 2.0}, {0.0, 1.0});
  const auto h = conjugate_map(f, SphereRotation::antipodal_swap());
  CHECK(h.degree() == 2);
  for (const auto& w : testing::random_sphere_points(50, 6)) {
    if (w.is_infinite()) continue;
    const Complex v = w.value();
    CHECK(dist(eval(h, w), SpherePoint(-v / (v * v - 2.0))) < 1e-9);
  }
}

TEST_CASE("conjugation covariance and round trip") {
  const auto f = testing::map({Complex(0.3, -0.2), 1.0, Complex(0.5, 0.5)}, {Complex(1.0, 0.4), 0.0, 1.0});
  const SphereRotation r(Complex(0.6, 0.2), Complex(-0.3, 0.7));
  const auto h = conjugate_map(f, r);
  CHECK(h.degree() == 2);
  const auto back = conjugate_map(h, r.inverse());
  for (const auto& z : testing::random_sphere_points(50, 8)) {
    CHECK(dist(eval(h, r(z)), r(eval(f, z))) <= 1e-9);
    CHECK(dist(eval(back, z), eval(f, z)) <= 1e-8);
  }
}

}  // TEST_SUITE
