#include "invdyn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "invdyn/errors.hpp"
#include "invdyn/scenarios.hpp"

namespace invdyn {

namespace fs = std::filesystem;

ResolutionRun run_resolution(const RationalSemigroup& G, int n, double overlap, const EstimatorParams& params) {
  const TwoChartGrid grid(n, overlap);
  auto closure = invariant_julia(G, grid, params);
  auto labeling = label_components(complement(closure.mask));
  return {n, std::move(closure), std::move(labeling)};
}

InvariantAnalysis analyze_invariant(const JobConfig& config) {
  config.validate();
  const auto G = RationalSemigroup::create(config.generators);

  std::set<int> sizes(config.resolutions.begin(), config.resolutions.end());
  sizes.insert(config.grid_n);
  std::vector<ResolutionRun> runs;
  for (int n : sizes) runs.push_back(run_resolution(G, n, config.overlap, config.estimator));
  auto run_at = [&](int n) -> const ResolutionRun& {
    return *std::find_if(runs.begin(), runs.end(), [&](const auto& r) { return r.n == n; });
  };

  InvariantAnalysis a{{}, run_at(config.grid_n), true, {}};
  RunReport& r = a.report;
  r.scenario = config.scenario;
  r.seed = config.estimator.seed;
  r.resolutions = config.resolutions;
  std::vector<TracePoint> trace;
  for (int n : config.resolutions) {
    const auto& run = run_at(n);
    r.counts.push_back(run.labeling.significant_count());
    r.iterations.push_back(run.closure.iterations);
    trace.push_back({n, run.labeling.significant_count()});
  }
  for (const auto& run : runs) a.converged = a.converged && run.closure.converged;
  r.cls = classify_count(trace);
  r.components = summarize_components(a.main.labeling);
  if (*r.cls == ComponentClass::One || *r.cls == ComponentClass::Two) {
    try {
      for (auto& p : check_permutation(G, a.main.labeling)) r.permutations[p.generator] = std::move(p.image);
    } catch (const NotAPermutation& e) {
      a.permutation_error = e.what();
    }
  }
  r.rh = rh_checks(config.generators);
  return a;
}

std::vector<RhCheck> rh_checks(const std::vector<RationalMap>& generators) {
  std::vector<RhCheck> out;
  for (const auto& g : generators) out.push_back({g.degree(), rh_deficiency(g)});
  return out;
}

namespace {

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

Check at_least(std::string name, double value, double bound) {
  return {std::move(name), value >= bound, fixed(value) + " (need >= " + fixed(bound, 2) + ")"};
}

void add_extended_real_checks(std::vector<Check>& out, const SphereMask& e) {
  out.push_back(at_least("E covers the extended real line", coverage(e, extended_real_samples(720)), 0.99));
  out.push_back(at_least("E lies within 2 pixels of the extended real line",
                         tightness(e, extended_real_samples(dense_count(e.grid()))), 1.0));
}

void add_class_checks(std::vector<Check>& out, const ResolutionRun& coarse, const ResolutionRun& fine,
                      ComponentClass expected, std::size_t simply_connected) {
  const std::vector<TracePoint> trace{{coarse.n, coarse.labeling.significant_count()},
                                      {fine.n, fine.labeling.significant_count()}};
  const auto cls = classify_count(trace);
  out.push_back({"W class " + to_string(expected), cls == expected,
                 "counts " + std::to_string(trace[0].count) + " -> " + std::to_string(trace[1].count) + ", class " +
                     to_string(cls)});
  if (simply_connected == 0) return;
  const auto summary = summarize_components(fine.labeling);
  const bool ok = summary.size() == simply_connected &&
                  std::all_of(summary.begin(), summary.end(), [](const auto& c) { return c.simply_connected; });
  std::string holes;
  for (const auto& c : summary) holes += (holes.empty() ? "" : ",") + std::to_string(c.hole_count);
  out.push_back({"components simply connected", ok, "hole counts [" + holes + "]"});
}

void add_converged(std::vector<Check>& out, const ResolutionRun& run) {
  out.push_back({"closure converged at n=" + std::to_string(run.n), run.closure.converged,
                 std::to_string(run.closure.iterations) + " iterations"});
}

std::vector<Check> verify_extended_real(const Scenario& s, const EstimatorParams& params, int n) {
  const auto G = s.semigroup();
  std::vector<Check> out;
  const auto coarse = run_resolution(G, n / 2, 0.05, params);
  const auto fine = run_resolution(G, n, 0.05, params);
  add_converged(out, coarse);
  add_converged(out, fine);
  add_extended_real_checks(out, fine.closure.mask);
  add_class_checks(out, coarse, fine, ComponentClass::Two, 2);
  try {
    const auto perms = check_permutation(G, fine.labeling);
    std::string detail;
    for (const auto& p : perms) {
      detail += "g" + std::to_string(p.generator) + ":";
      for (int l : p.image) detail += " " + std::to_string(l);
      detail += "; ";
    }
    out.push_back({"generators permute the W components", true, detail});
  } catch (const NotAPermutation& e) {
    out.push_back({"generators permute the W components", false, e.what()});
  }
  return out;
}

std::vector<Check> verify_rh() {
  std::vector<Check> out;
  const auto f = example1_f(), g = example1_g();
  const std::vector<std::pair<std::string, RationalMap>> named{
      {"f", f}, {"g", g}, {"f o g", compose(f, g)}, {"g o f", compose(g, f)}, {"example 2 g", example2_g()}};
  auto check = [&](const std::string& name, const RationalMap& m) {
    const int expected = 2 * (m.degree() - 1);
    try {
      const int got = rh_deficiency(m);
      out.push_back({"deficiency of " + name, got == expected,
                     std::to_string(got) + " (degree " + std::to_string(m.degree()) + ")"});
    } catch (const InconsistentValency& e) {
      out.push_back({"deficiency of " + name, false, e.what()});
    }
  };
  for (const auto& [name, m] : named) check(name, m);
  const auto maps = random_maps(20, 7);
  for (std::size_t k = 0; k < maps.size(); ++k) check("random map " + std::to_string(k), maps[k]);
  return out;
}

}  // namespace

std::vector<Check> verify_scenario(const std::string& name, const EstimatorParams& params, int n) {
  if (name == "example1") return verify_extended_real(corpus_scenario("example1"), params, n > 0 ? n : 512);
  if (name == "example2") {
    const int fine = n > 0 ? n : 512;
    const auto s = corpus_scenario("example2");
    const TwoChartGrid grid(fine);
    const auto j = julia_semigroup(s.semigroup(), grid, params);
    std::vector<Check> out;
    out.push_back(at_least("J covers [-1, 2]", coverage(j, segment_samples(-1.0, 2.0, 720)), 0.99));
    out.push_back(at_least("J lies within 2 pixels of [-1, 2]",
                           tightness(j, segment_samples(-1.0, 2.0, dense_count(grid))), 1.0));
    auto rest = verify_extended_real(s, params, fine);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  if (name == "single-quadratic") {
    const int fine = n > 0 ? n : 256;
    const auto G = corpus_scenario("single-quadratic").semigroup();
    const auto coarse_run = run_resolution(G, fine / 2, 0.05, params);
    const auto run = run_resolution(G, fine, 0.05, params);
    std::vector<Check> out;
    add_converged(out, run);
    const auto& e = run.closure.mask;
    out.push_back(at_least("E covers the unit circle", coverage(e, circle_samples(1.0, 720)), 0.99));
    out.push_back(at_least("E lies within 2 pixels of the unit circle",
                           tightness(e, circle_samples(1.0, dense_count(e.grid()))), 1.0));
    add_class_checks(out, coarse_run, run, ComponentClass::Two, 2);
    return out;
  }
  if (name == "rh-identities") return verify_rh();
  throw UsageError("unknown verify scenario '" + name + "' (expected example1, example2, single-quadratic or "
                   "rh-identities)");
}

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Overrides& o, bool config_required) {
  auto* c = cmd->add_option("--config", o.config, "Job configuration (JSON)");
  if (config_required) c->required();
  cmd->add_option("--out", o.out, "Output directory (overrides output_dir)");
  cmd->add_option("--seed", o.seed, "Random seed (overrides estimator.seed)");
  cmd->add_option("--grid", o.grid, "Pixels per chart side (overrides grid_n)");
  cmd->add_option("--workers", o.workers, "Worker threads (results do not depend on it)");
}

JobConfig load_with_overrides(const Overrides& o) {
  JobConfig c = load_job_config(o.config);
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.seed) c.estimator.seed = *o.seed;
  if (o.grid) c.grid_n = *o.grid;
  if (o.workers) c.estimator.workers = *o.workers;
  c.validate();
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_report(const fs::path& dir, const RunReport& r) {
  write_file_atomic(dir / "report.json", to_json(r).dump(2) + "\n");
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory " + dir.string());
}

int cmd_estimate_julia(const Overrides& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const JobConfig c = load_with_overrides(o);
  const auto G = RationalSemigroup::create(c.generators);
  const TwoChartGrid grid(c.grid_n, c.overlap);
  const auto mask = julia_semigroup(G, grid, c.estimator);
  const auto lab = label_components(complement(mask));

  RunReport r;
  r.scenario = c.scenario;
  r.seed = c.estimator.seed;
  r.resolutions = {c.grid_n};
  r.counts = {lab.significant_count()};
  r.components = summarize_components(lab);
  r.rh = rh_checks(c.generators);
  r.runtime_seconds = seconds_since(t0);

  prepare_dir(c.output_dir);
  write_file_atomic(c.output_dir / "julia.pgm", mask_pgm(mask));
  write_report(c.output_dir, r);
  out << "julia mask: " << mask.count() << " pixels at n=" << c.grid_n << "; complement has "
      << lab.significant_count() << " components\n";
  return 0;
}

int cmd_estimate_invariant(const Overrides& o, std::ostream& out, std::ostream& err, bool images) {
  const auto t0 = std::chrono::steady_clock::now();
  const JobConfig c = load_with_overrides(o);
  auto a = analyze_invariant(c);
  a.report.runtime_seconds = seconds_since(t0);

  prepare_dir(c.output_dir);
  if (images) write_file_atomic(c.output_dir / "e_set.pgm", mask_pgm(a.main.closure.mask));
  write_file_atomic(c.output_dir / "w_components.pgm", label_pgm(a.main.labeling));
  write_report(c.output_dir, a.report);

  const auto& r = a.report;
  out << "class " << to_string(*r.cls) << "; counts";
  for (std::size_t k = 0; k < r.counts.size(); ++k) out << " n=" << r.resolutions[k] << ":" << r.counts[k];
  out << "\n";
  for (std::size_t k = 0; k < r.components.size(); ++k) {
    const auto& comp = r.components[k];
    out << "  component " << k + 1 << ": " << comp.size << " pixels, " << comp.hole_count << " holes\n";
  }
  if (!a.converged) {
    err << "error: " << NoFixedPoint(c.estimator.max_closure_iters).what() << "\n";
    return 3;
  }
  if (!a.permutation_error.empty()) {
    err << "error: " << a.permutation_error << "\n";
    return 3;
  }
  return 0;
}

int cmd_rh_check(const Overrides& o, std::ostream& out) {
  const JobConfig c = load_with_overrides(o);
  bool ok = true;
  RunReport r;
  r.scenario = c.scenario;
  r.seed = c.estimator.seed;
  for (std::size_t k = 0; k < c.generators.size(); ++k) {
    const auto& g = c.generators[k];
    const int expected = 2 * (g.degree() - 1);
    int got = -1;
    try {
      got = rh_deficiency(g);
    } catch (const InconsistentValency&) {
      ok = false;
    }
    r.rh.push_back({g.degree(), got});
    out << (got == expected ? "PASS" : "FAIL") << "  generator " << k << ": degree " << g.degree()
        << ", deficiency " << got << " (expected " << expected << ")\n";
  }
  prepare_dir(c.output_dir);
  write_report(c.output_dir, r);
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& scenario, const Overrides& o, std::ostream& out) {
  EstimatorParams params;
  int n = 0;
  if (!o.config.empty()) {
    const auto c = load_with_overrides(o);
    params = c.estimator;
    n = c.grid_n;
  }
  if (o.seed) params.seed = *o.seed;
  if (o.workers) params.workers = *o.workers;
  if (o.grid) n = *o.grid;
  const auto checks = verify_scenario(scenario, params, n);
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  " << c.detail << "\n";
    ok = ok && c.pass;
  }
  out << scenario << ": " << (ok ? "all checks passed" : "verification failed") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Julia sets, completely invariant sets and Fatou components of rational semigroups", "invdyn"};
  app.require_subcommand(1);
  Overrides o;
  std::string scenario;
  auto* julia = app.add_subcommand("estimate-julia", "Rasterize J(G); writes julia.pgm and report.json");
  auto* invariant =
      app.add_subcommand("estimate-invariant", "Closure E(G) and W components; writes e_set.pgm, "
                                               "w_components.pgm and report.json");
  auto* components = app.add_subcommand("components", "Classify the W components; writes w_components.pgm "
                                                      "and report.json");
  auto* verify = app.add_subcommand("verify", "Run a built-in scenario and its checks");
  auto* rh = app.add_subcommand("rh-check", "Riemann-Hurwitz check for each generator");
  add_common(julia, o, true);
  add_common(invariant, o, true);
  add_common(components, o, true);
  add_common(rh, o, true);
  add_common(verify, o, false);
  verify->add_option("scenario", scenario, "example1, example2, single-quadratic or rh-identities")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*julia) return cmd_estimate_julia(o, out);
    if (*invariant) return cmd_estimate_invariant(o, out, err, true);
    if (*components) return cmd_estimate_invariant(o, out, err, false);
    if (*rh) return cmd_rh_check(o, out);
    return cmd_verify(scenario, o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace invdyn
