#include "invdyn/report.hpp"

#include <fstream>
#include <set>

#include "invdyn/errors.hpp"

namespace invdyn {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw UsageError("complex numbers must be [re, im] pairs, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polynomial parse_polynomial(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw UsageError(std::string(what) + " must be a nonempty coefficient list");
  std::vector<Complex> coeffs;
  for (const auto& c : j) coeffs.push_back(parse_complex(c));
  return Polynomial(std::move(coeffs));
}

json complex_list(const Polynomial& p) {
  json out = json::array();
  for (int k = 0; k <= p.degree(); ++k) out.push_back({p.coeff(k).real(), p.coeff(k).imag()});
  return out;
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("bad value for '") + key + "': " + j.at(key).dump());
  }
}

EstimatorParams parse_estimator(const json& j) {
  if (!j.is_object()) throw UsageError("estimator must be an object");
  reject_unknown(j, {"samples", "burn_in", "seed", "max_word_len", "max_closure_iters", "workers"}, "estimator");
  EstimatorParams p;
  read_field(j, "samples", p.samples);
  read_field(j, "burn_in", p.burn_in);
  read_field(j, "seed", p.seed);
  read_field(j, "max_word_len", p.max_word_len);
  read_field(j, "max_closure_iters", p.max_closure_iters);
  read_field(j, "workers", p.workers);
  return p;
}

}  // namespace

void JobConfig::validate() const {
  RationalSemigroup::create(generators);
  if (grid_n < 32) throw UsageError("grid_n must be at least 32");
  if (!(overlap > 0.0) || overlap > 0.5) throw UsageError("overlap must lie in (0, 0.5]");
  estimator.validate();
  if (resolutions.size() < 2) throw UsageError("resolutions needs at least two entries");
  for (std::size_t k = 0; k < resolutions.size(); ++k) {
    if (resolutions[k] < 32) throw UsageError("resolutions must be at least 32");
    if (k > 0 && resolutions[k] <= resolutions[k - 1]) {
      throw UsageError("resolutions must be strictly increasing");
    }
  }
}

JobConfig parse_job_config(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  reject_unknown(j, {"scenario", "generators", "grid_n", "overlap", "estimator", "resolutions", "output_dir"},
                 "config");
  JobConfig c;
  read_field(j, "scenario", c.scenario);
  if (j.contains("generators")) {
    const auto& gens = j.at("generators");
    if (!gens.is_array()) throw UsageError("generators must be an array");
    for (const auto& g : gens) {
      if (!g.is_object() || !g.contains("num") || !g.contains("den")) {
        throw UsageError("each generator needs 'num' and 'den' coefficient lists");
      }
      reject_unknown(g, {"num", "den"}, "generator");
      c.generators.push_back(RationalMap::create(parse_polynomial(g.at("num"), "num"),
                                                 parse_polynomial(g.at("den"), "den")));
    }
  }
  read_field(j, "grid_n", c.grid_n);
  read_field(j, "overlap", c.overlap);
  if (j.contains("estimator")) c.estimator = parse_estimator(j.at("estimator"));
  read_field(j, "resolutions", c.resolutions);
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  c.validate();
  return c;
}

JobConfig load_job_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_job_config(j);
}

json to_json(const JobConfig& c) {
  json gens = json::array();
  for (const auto& g : c.generators) gens.push_back({{"num", complex_list(g.num())}, {"den", complex_list(g.den())}});
  const auto& e = c.estimator;
  return {{"scenario", c.scenario},
          {"generators", gens},
          {"grid_n", c.grid_n},
          {"overlap", c.overlap},
          {"estimator",
           {{"samples", e.samples},
            {"burn_in", e.burn_in},
            {"seed", e.seed},
            {"max_word_len", e.max_word_len},
            {"max_closure_iters", e.max_closure_iters},
            {"workers", e.workers}}},
          {"resolutions", c.resolutions},
          {"output_dir", c.output_dir.string()}};
}

json to_json(const RunReport& r) {
  json components = json::array();
  for (const auto& c : r.components) {
    components.push_back({{"size", c.size}, {"holes", c.hole_count}, {"simply_connected", c.simply_connected}});
  }
  json perms = json::object();
  for (const auto& [g, image] : r.permutations) perms[std::to_string(g)] = image;
  json rh = json::array();
  for (const auto& c : r.rh) rh.push_back({{"degree", c.degree}, {"deficiency", c.deficiency}});
  return {{"scenario", r.scenario},
          {"seed", r.seed},
          {"resolutions", r.resolutions},
          {"counts", r.counts},
          {"class", r.cls ? json(to_string(*r.cls)) : json(nullptr)},
          {"components", components},
          {"permutations", perms},
          {"rh", rh},
          {"iterations", r.iterations},
          {"min_component_pixels", r.min_component_pixels},
          {"runtime_seconds", r.runtime_seconds}};
}

RunReport report_from_json(const json& j) {
  try {
    RunReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.resolutions = j.at("resolutions").get<std::vector<int>>();
    r.counts = j.at("counts").get<std::vector<int>>();
    if (!j.at("class").is_null()) r.cls = component_class_from_string(j.at("class").get<std::string>());
    for (const auto& c : j.at("components")) {
      r.components.push_back({c.at("size").get<std::size_t>(), c.at("holes").get<int>(),
                              c.at("simply_connected").get<bool>()});
    }
    for (const auto& [key, image] : j.at("permutations").items()) {
      r.permutations[std::stoul(key)] = image.get<std::vector<int>>();
    }
    for (const auto& c : j.at("rh")) r.rh.push_back({c.at("degree").get<int>(), c.at("deficiency").get<int>()});
    if (j.contains("iterations")) r.iterations = j.at("iterations").get<std::vector<int>>();
    if (j.contains("min_component_pixels")) r.min_component_pixels = j.at("min_component_pixels").get<std::size_t>();
    r.runtime_seconds = j.at("runtime_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  }
}

namespace {

template <typename Gray>
std::string pgm(const TwoChartGrid& g, Gray&& gray) {
  const int n = g.n();
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(2 * n) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + g.pixel_count());
  // Pixel index order is chart, row, col: exactly the stacked image layout.
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    out[header + i] = static_cast<char>(g.active(i) ? gray(i) : 0);
  }
  return out;
}

}  // namespace

std::string mask_pgm(const SphereMask& mask) {
  return pgm(mask.grid(), [&](std::size_t i) { return mask.test(i) ? 255 : 0; });
}

std::string label_pgm(const ComponentLabeling& lab) {
  return pgm(lab.grid, [&](std::size_t i) {
    const int k = lab.labels[i];
    return k <= 0 ? 0 : static_cast<int>(255LL * k / lab.component_count);
  });
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out.flush()) throw UsageError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw UsageError("cannot move output into place at " + path.string());
  }
}

}  // namespace invdyn
