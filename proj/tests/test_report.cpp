#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "invdyn/errors.hpp"
#include "invdyn/report.hpp"
#include "invdyn/scenarios.hpp"
#include "support.hpp"

using namespace invdyn;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

json minimal_config() {
  return json::parse(R"({"generators": [{"num": [[0, 0], [0, 0], [1, 0]], "den": [[1, 0]]}]})");
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("invdyn_report_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("minimal config keeps defaults") {
  const auto c = parse_job_config(minimal_config());
  CHECK(c.scenario == "custom");
  REQUIRE(c.generators.size() == 1);
  CHECK(c.generators[0].degree() == 2);
  CHECK(c.grid_n == 256);
  CHECK(c.overlap == doctest::Approx(0.05));
  CHECK(c.resolutions == std::vector<int>{256, 512});
  CHECK(c.estimator.samples == EstimatorParams{}.samples);
  CHECK(c.estimator.seed == 1);
  CHECK(c.output_dir == fs::path("."));
}

TEST_CASE("config round-trips through JSON") {
  JobConfig c;
  c.scenario = "example2";
  c.generators = corpus_scenario("example2").generators;
  c.grid_n = 96;
  c.overlap = 0.1;
  c.estimator.seed = 99;
  c.estimator.samples = 1234;
  c.resolutions = {64, 96, 128};
  c.output_dir = "some/where";
  const auto back = parse_job_config(to_json(c));
  CHECK(back.scenario == c.scenario);
  CHECK(back.grid_n == 96);
  CHECK(back.overlap == doctest::Approx(0.1));
  CHECK(back.estimator.seed == 99);
  CHECK(back.estimator.samples == 1234);
  CHECK(back.resolutions == c.resolutions);
  CHECK(back.output_dir == c.output_dir);
  REQUIRE(back.generators.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    for (const auto& p : testing::random_sphere_points(20, k)) {
      CHECK(testing::dist(eval(back.generators[k], p), eval(c.generators[k], p)) < 1e-14);
    }
  }
}

TEST_CASE("bundled configs load") {
  for (const char* name : {"example1", "example2", "single-quadratic", "chebyshev", "mixed", "basilica"}) {
    CAPTURE(name);
    const auto c = load_job_config(fs::path(INVDYN_CONFIG_DIR) / (std::string(name) + ".json"));
    CHECK(c.scenario == name);
    CHECK(c.generators.size() == corpus_scenario(name).generators.size());
  }
}

TEST_CASE("config errors are usage errors") {
  auto with = [](const char* key, json value) {
    auto j = minimal_config();
    j[key] = std::move(value);
    return j;
  };
  CHECK_THROWS_AS(parse_job_config(json::parse(R"({"generators": []})")), UsageError);
  CHECK_THROWS_AS(parse_job_config(json::object()), UsageError);
  CHECK_THROWS_AS(parse_job_config(json::array()), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("colour", "red")), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("grid_n", "big")), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("grid_n", 8)), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("overlap", 0.0)), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("resolutions", json::array({256}))), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("resolutions", json::array({512, 256}))), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("estimator", json{{"samples", 0}})), UsageError);
  CHECK_THROWS_AS(parse_job_config(with("estimator", json{{"speed", 3}})), UsageError);
  // Degree 1 generator, a real-only coefficient, a common factor.
  CHECK_THROWS_AS(parse_job_config(with("generators", json::parse(R"([{"num": [[0,0],[1,0]], "den": [[1,0]]}])"))),
                  UsageError);
  CHECK_THROWS_AS(parse_job_config(with("generators", json::parse(R"([{"num": [1, 2, 3], "den": [[1,0]]}])"))),
                  UsageError);
  CHECK_THROWS_AS(
      parse_job_config(with("generators", json::parse(R"([{"num": [[-1,0],[0,0],[1,0]], "den": [[1,0],[1,0]]}])"))),
      UsageError);
  CHECK_THROWS_AS(load_job_config("/nonexistent/config.json"), UsageError);
}

TEST_CASE("report round-trips") {
  RunReport r;
  r.scenario = "example1";
  r.seed = 42;
  r.resolutions = {256, 512};
  r.counts = {2, 2};
  r.cls = ComponentClass::Two;
  r.components = {{1000, 0, true}, {990, 1, false}};
  r.permutations = {{0, {1, 2}}, {1, {2, 1}}};
  r.rh = {{2, 2}, {3, 4}};
  r.iterations = {5, 6};
  r.runtime_seconds = 1.5;
  CHECK(report_from_json(to_json(r)) == r);
  CHECK(report_from_json(json::parse(to_json(r).dump())) == r);

  RunReport bare;
  bare.scenario = "custom";
  const auto j = to_json(bare);
  CHECK(j.at("class").is_null());
  CHECK(report_from_json(j) == bare);
  CHECK_THROWS_AS(report_from_json(json::object()), UsageError);
}

TEST_CASE("mask PGM layout") {
  const TwoChartGrid g(32);
  SphereMask m(g);
  m.set_point(SpherePoint(0.0));
  const auto img = mask_pgm(m);
  const std::string header = "P5\n32 64\n255\n";
  REQUIRE(img.size() == header.size() + g.pixel_count());
  CHECK(img.substr(0, header.size()) == header);
  std::size_t set = 0;
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    const auto v = static_cast<unsigned char>(img[header.size() + i]);
    CHECK((v == 0 || v == 255));
    if (v == 255) {
      ++set;
      CHECK(m.test(i));
      CHECK(g.active(i));
    }
  }
  CHECK(set == m.count());
  CHECK(set >= 1);
  // The origin lies in chart 0, the top half of the image.
  CHECK(static_cast<unsigned char>(img[header.size() + g.owned_pixel_of(SpherePoint(0.0))]) == 255);
}

TEST_CASE("label PGM spreads labels over the gray range") {
  const TwoChartGrid g(64);
  const auto circle = rasterize(g, circle_samples(0.5, dense_count(g)));
  const auto lab = label_components(complement(circle));
  REQUIRE(lab.component_count == 2);
  const auto img = label_pgm(lab);
  const std::size_t header = img.size() - g.pixel_count();
  CHECK(static_cast<unsigned char>(img[header + g.owned_pixel_of(SpherePoint(0.0))]) == 255);
  CHECK(static_cast<unsigned char>(img[header + g.owned_pixel_of(SpherePoint(3.0))]) == 127);
  CHECK(label_pgm(lab) == img);
}

TEST_CASE("atomic write") {
  const auto dir = fresh_dir("atomic");
  const auto path = dir / "out.bin";
  write_file_atomic(path, "first");
  CHECK(read_all(path) == "first");
  write_file_atomic(path, std::string("sec\0nd", 6));
  CHECK(read_all(path) == std::string("sec\0nd", 6));
  CHECK_FALSE(fs::exists(dir / "out.bin.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.bin", "data"), UsageError);
  fs::remove_all(dir);
}

}  // TEST_SUITE
