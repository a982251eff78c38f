#include <doctest.h>

#include <algorithm>

#include "invdyn/errors.hpp"
#include "invdyn/ratmap.hpp"
#include "invdyn/scenarios.hpp"
#include "support.hpp"

using namespace invdyn;
using testing::dist;

namespace {

// Direct formulas, independent of the polynomial machinery.
Complex f_direct(Complex z) { return 2.0 * z - 1.0 / z; }
Complex g_direct(Complex z) { return (z * z - 1.0) / (2.0 * z); }

bool contains(const std::vector<WeightedPoint>& pts, const SpherePoint& p, int mult, double tol = 1e-7) {
  return std::any_of(pts.begin(), pts.end(),
                     [&](const WeightedPoint& w) { return dist(w.point, p) < tol && w.multiplicity == mult; });
}

int total(const std::vector<WeightedPoint>& pts) {
  int m = 0;
  for (const auto& w : pts) m += w.multiplicity;
  return m;
}

std::vector<RationalMap> test_maps() {
  auto maps = random_maps(12, 99);
  maps.push_back(example1_f());
  maps.push_back(example1_g());
  maps.push_back(example2_g());
  maps.push_back(testing::map({0.0, 0.0, 1.0}, {1.0}));
  maps.push_back(testing::map({-1.0, 0.0, 1.0}, {1.0}));
  maps.push_back(testing::map({0.0, 0.0, 1.0}, {-1.0, 0.0, 2.0}));
  return maps;
}

}  // namespace

TEST_SUITE("ratmap") {

TEST_CASE("construction validates lowest terms and degree") {
  CHECK_THROWS_AS(testing::map({-1.0, 1.0}, {-1.0, 1.0}), InvalidMap);
  CHECK_THROWS_AS(testing::map({-1.0, 0.0, 1.0}, {1.0, 1.0}), InvalidMap);
  CHECK_THROWS_AS(testing::map({1.0}, {0.0}), InvalidMap);
  CHECK_THROWS_AS(testing::map({0.0}, {1.0}), InvalidMap);
  CHECK_THROWS_AS(testing::map({3.0}, {2.0}), InvalidMap);
  CHECK(testing::map({-1.0, 0.0, 2.0}, {0.0, 1.0}).degree() == 2);
  CHECK(testing::map({1.0}, {0.0, 0.0, 1.0}).degree() == 2);
}

TEST_CASE("eval examples") {
  const auto f = example1_f(), g = example1_g();
  CHECK(dist(eval(f, SpherePoint(1.0)), SpherePoint(1.0)) < 1e-15);
  CHECK(eval(f, SpherePoint(0.0)).is_infinite());
  CHECK(dist(eval(g, SpherePoint(Complex(0.0, 1.0))), SpherePoint(Complex(0.0, 1.0))) < 1e-15);
  CHECK(eval(f, SpherePoint::infinity()).is_infinite());
  // Equal degrees: ratio of leading coefficients; lower numerator degree: 0.
  CHECK(dist(eval(testing::map({0.0, 0.0, 3.0}, {1.0, 0.0, 2.0}), SpherePoint::infinity()), SpherePoint(1.5)) < 1e-15);
  CHECK(dist(eval(testing::map({1.0}, {0.0, 0.0, 1.0}), SpherePoint::infinity()), SpherePoint(0.0)) < 1e-15);
  // Far out on the plane the reversed chart keeps values accurate.
  CHECK(dist(eval(f, SpherePoint(1e9)), SpherePoint(f_direct(1e9))) < 1e-15);
}

TEST_CASE("eval of a map with a shared factor is indeterminate") {
  const auto bad = RationalMap::unchecked(Polynomial({-1.0, 0.0, 1.0}), Polynomial({-1.0, 1.0}));
  CHECK_THROWS_AS(eval(bad, SpherePoint(1.0)), Indeterminate);
}

TEST_CASE("compose") {
  const auto f = example1_f(), g = example1_g();
  const auto fg = compose(f, g), gf = compose(g, f);
  CHECK(fg.degree() == 4);
  CHECK(gf.degree() == 4);
  for (const auto& z : testing::random_sphere_points(100, 31)) {
    if (z.is_infinite() || std::abs(z.value()) < 1e-3) continue;
    const Complex w = z.value();
    CHECK(dist(eval(fg, z), SpherePoint(f_direct(g_direct(w)))) <= 1e-9);
    CHECK(dist(eval(gf, z), SpherePoint(g_direct(f_direct(w)))) <= 1e-9);
  }
  const auto id = compose(f, RationalMap::identity());
  for (const auto& z : testing::random_sphere_points(20, 32)) CHECK(dist(eval(id, z), eval(f, z)) < 1e-12);
  const auto sq = testing::map({0.0, 0.0, 1.0}, {1.0});
  const auto z4 = compose(sq, sq);
  CHECK(z4.degree() == 4);
  CHECK(z4.num().degree() == 4);
  CHECK(z4.den().degree() == 0);
  CHECK(std::abs(z4.num().coeff(4) / z4.den().coeff(0) - 1.0) < 1e-14);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(z4.num().coeff(k)) < 1e-14);
}

TEST_CASE("compose agrees pointwise on random maps") {
  const auto maps = random_maps(10, 5);
  for (std::size_t k = 0; k + 1 < maps.size(); k += 2) {
    const auto h = compose(maps[k], maps[k + 1]);
    CHECK(h.degree() == maps[k].degree() * maps[k + 1].degree());
    for (const auto& z : testing::random_sphere_points(100, 40 + k)) {
      CHECK(dist(eval(h, z), eval(maps[k], eval(maps[k + 1], z))) <= 1e-9);
    }
    CHECK(rh_deficiency(h) == 2 * (h.degree() - 1));
  }
}

TEST_CASE("derivative") {
  const auto d1 = derivative(testing::map({0.0, 0.0, 1.0}, {1.0}));
  for (double x : {-1.5, 0.3, 2.0}) CHECK(dist(eval(d1, SpherePoint(x)), SpherePoint(2.0 * x)) < 1e-14);
  const auto d2 = derivative(example1_g());
  const auto d3 = derivative(testing::map({1.0}, {0.0, 1.0}));
  for (const auto& z : testing::random_sphere_points(50, 51)) {
    if (z.is_infinite() || std::abs(z.value()) < 1e-3) continue;
    const Complex w = z.value();
    CHECK(dist(eval(d2, z), SpherePoint((w * w + 1.0) / (2.0 * w * w))) < 1e-10);
    CHECK(dist(eval(d3, z), SpherePoint(-1.0 / (w * w))) < 1e-10);
  }
  // Central differences on random maps.
  for (const auto& m : random_maps(6, 52)) {
    const auto d = derivative(m);
    for (const auto& z : testing::random_sphere_points(20, 53)) {
      if (z.is_infinite() || std::abs(z.value()) > 3.0) continue;
      const Complex w = z.value();
      const double h = 1e-5;
      const auto plus = eval(m, SpherePoint(w + h)), minus = eval(m, SpherePoint(w - h));
      if (plus.is_infinite() || minus.is_infinite() || std::abs(plus.value()) > 1e3) continue;
      const Complex fd = (plus.value() - minus.value()) / (2.0 * h);
      const auto exact = eval(d, z);
      REQUIRE(exact.is_finite());
      CHECK(std::abs(exact.value() - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("critical points examples") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto cf = critical_points(example1_f());
  CHECK(total(cf) == 2);
  CHECK(contains(cf, SpherePoint::finite(0.0, s), 1));
  CHECK(contains(cf, SpherePoint::finite(0.0, -s), 1));
  const auto cg = critical_points(example1_g());
  CHECK(total(cg) == 2);
  CHECK(contains(cg, SpherePoint::finite(0.0, 1.0), 1));
  CHECK(contains(cg, SpherePoint::finite(0.0, -1.0), 1));
  const auto cs = critical_points(testing::map({0.0, 0.0, 1.0}, {1.0}));
  CHECK(total(cs) == 2);
  CHECK(contains(cs, SpherePoint(0.0), 1));
  CHECK(contains(cs, SpherePoint::infinity(), 1));
  // z^3 has double critical points at 0 and infinity.
  const auto cube = critical_points(testing::map({0.0, 0.0, 0.0, 1.0}, {1.0}));
  CHECK(contains(cube, SpherePoint(0.0), 2, 1e-5));
  CHECK(contains(cube, SpherePoint::infinity(), 2, 1e-5));
}

TEST_CASE("valency and Riemann-Hurwitz") {
  CHECK(rh_deficiency(example1_f()) == 2);
  CHECK(rh_deficiency(compose(example1_f(), example1_g())) == 6);
  CHECK(rh_deficiency(testing::map({0.0, 0.0, 1.0}, {1.0})) == 2);
  const auto sq = testing::map({0.0, 0.0, 1.0}, {1.0});
  CHECK(valency(sq, SpherePoint(0.0)) == 2);
  CHECK(valency(sq, SpherePoint::infinity()) == 2);
  CHECK(valency(sq, SpherePoint(1.0)) == 1);
  for (const auto& m : test_maps()) CHECK(rh_deficiency(m) == 2 * (m.degree() - 1));
}

TEST_CASE("preimages examples") {
  const auto f = example1_f();
  const auto a = preimages(f, SpherePoint(1.0));
  CHECK(total(a) == 2);
  CHECK(contains(a, SpherePoint(1.0), 1));
  CHECK(contains(a, SpherePoint(-0.5), 1));
  const auto b = preimages(f, SpherePoint::infinity());
  CHECK(total(b) == 2);
  CHECK(contains(b, SpherePoint(0.0), 1));
  CHECK(contains(b, SpherePoint::infinity(), 1));
  const auto c = preimages(testing::map({0.0, 0.0, 1.0}, {1.0}), SpherePoint(0.0));
  REQUIRE(c.size() == 1);
  CHECK(contains(c, SpherePoint(0.0), 2));
  // Degree drop: g(z) = (z^2 - 1) / (2 z^2 + 1) takes the value 1/2 at infinity.
  const auto d = preimages(testing::map({-1.0, 0.0, 1.0}, {1.0, 0.0, 2.0}), SpherePoint(0.5));
  CHECK(total(d) == 2);
  CHECK(contains(d, SpherePoint::infinity(), 2));
}

TEST_CASE("preimage count, round trip and conjugation covariance") {
  const SphereRotation r(Complex(0.8, 0.1), Complex(0.2, -0.5));
  for (const auto& m : test_maps()) {
    const auto h = conjugate_map(m, r);
    for (const auto& q : testing::random_sphere_points(15, 61)) {
      const auto pre = preimages(m, q);
      CHECK(total(pre) == m.degree());
      for (const auto& w : pre) CHECK(dist(eval(m, w.point), q) <= 1e-7);
      const auto moved = preimages(h, r(q));
      CHECK(total(moved) == m.degree());
      for (const auto& w : pre) {
        const auto target = r(w.point);
        CHECK(std::any_of(moved.begin(), moved.end(), [&](const WeightedPoint& v) {
          return dist(v.point, target) <= 1e-7 && v.multiplicity == w.multiplicity;
        }));
      }
    }
  }
}

TEST_CASE("chordal derivative") {
  // |(z^2)'| in the chordal metric on the unit circle is 2.
  const auto sq = testing::map({0.0, 0.0, 1.0}, {1.0});
  CHECK(chordal_derivative(sq, SpherePoint(Complex(0.6, 0.8))) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(chordal_derivative(sq, SpherePoint(0.0)) == doctest::Approx(0.0).epsilon(1e-5));
}

}  // TEST_SUITE
