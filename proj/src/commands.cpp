#include "h2sw/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "h2sw/compare.hpp"
#include "h2sw/error.hpp"
#include "h2sw/exact_ot.hpp"
#include "h2sw/flow.hpp"
#include "h2sw/io.hpp"
#include "h2sw/selftest.hpp"
#include "h2sw/synthetic.hpp"

namespace h2sw::cli {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

void record_slicing(RunReport& report, const SlicingOptions& opts, const std::vector<std::string>& families,
                    const std::vector<SpaceSpec>& specs) {
  report.set("families", join(families));
  report.set("L", std::to_string(opts.L));
  report.set("p", io::format_number(opts.p));
  report.set("threads", std::to_string(opts.threads));
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const bool given = k < opts.marginal_g.size() && !opts.marginal_g[k].empty();
    report.set("g" + std::to_string(k + 1),
               given ? to_string(parse_defining_function(opts.marginal_g[k])) : to_string(default_function(specs[k])));
    report.set("spec_" + std::to_string(k + 1), to_string(specs[k]));
  }
  report.set("g", to_string(parse_defining_function(opts.joint_g)));
  if (opts.psi) {
    std::vector<std::string> parts;
    for (double v : *opts.psi) parts.push_back(io::format_number(v));
    report.set("psi", join(parts));
  }
}

bool is_exact(const std::string& family) { return family == "exact"; }

void check_family_name(const std::string& family) {
  if (!is_exact(family)) parse_family(family);
}

std::size_t nearest_neighbour(const Matrix& m, std::size_t row) {
  std::size_t best = row == 0 ? 1 : 0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (j != row && m(row, j) < m(row, best)) best = j;
  }
  return best;
}

}  // namespace

DefiningFunction default_function(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceKind::Euclidean:
      return Linear{};
    case SpaceKind::Sphere:
      return Circular{1.0};
    case SpaceKind::Lorentz:
      return BusemannLorentz{};
  }
  return Linear{};
}

EstimatorConfig make_estimator(const std::string& family, const SlicingOptions& opts,
                               const std::vector<SpaceSpec>& specs) {
  if (!opts.seed) throw ConfigError("--seed is required for Monte Carlo distances");
  EstimatorConfig cfg;
  cfg.family = parse_family(family);
  cfg.L = opts.L;
  cfg.p = opts.p;
  cfg.seed = *opts.seed;
  cfg.threads = opts.threads;
  switch (cfg.family) {
    case Family::SW:
      break;
    case Family::GSW:
      cfg.gs = {parse_defining_function(opts.joint_g)};
      break;
    case Family::H2SW:
    case Family::CHSW:
      if (opts.marginal_g.size() > specs.size()) {
        throw ConfigError("defining function given for marginal " + std::to_string(opts.marginal_g.size()) +
                          " but the clouds have " + std::to_string(specs.size()));
      }
      for (std::size_t k = 0; k < specs.size(); ++k) {
        const bool given = k < opts.marginal_g.size() && !opts.marginal_g[k].empty();
        cfg.gs.push_back(given ? parse_defining_function(opts.marginal_g[k]) : default_function(specs[k]));
      }
      break;
  }
  if (cfg.family == Family::CHSW) {
    if (opts.psi) {
      if (opts.psi->size() != specs.size()) throw ConfigError("--psi needs one weight per marginal");
      const double len = norm2(*opts.psi);
      if (!(len > 0.0)) throw ConfigError("--psi must be nonzero");
      std::vector<double> psi = *opts.psi;
      for (auto& v : psi) v /= len;
      cfg.fixed_psi = psi;
    } else {
      cfg.fixed_psi = equal_psi(specs.size());
    }
  }
  validate(cfg, specs);
  return cfg;
}

RunReport cmd_distance(const DistanceOptions& opts) {
  RunReport report;
  report.command = "distance " + opts.first.string() + " " + opts.second.string();
  const auto mu = io::read_cloud(opts.first);
  const auto nu = io::read_cloud(opts.second);
  if (mu.specs() != nu.specs()) throw ConfigError("the two clouds live on different product spaces");
  const auto families = opts.slicing.families.empty() ? std::vector<std::string>{"h2sw"} : opts.slicing.families;
  for (const auto& f : families) check_family_name(f);
  record_slicing(report, opts.slicing, families, mu.specs());
  report.seed = opts.slicing.seed.value_or(0);

  for (const auto& family : families) {
    const auto start = Clock::now();
    if (is_exact(family)) {
      const double cost = joint_wasserstein(mu, nu, opts.slicing.p, {opts.slicing.max_cells}).cost;
      report.add("exact", std::pow(cost, 1.0 / opts.slicing.p));
      report.add("exact.pow", cost);
    } else {
      const auto cfg = make_estimator(family, opts.slicing, mu.specs());
      const auto est = estimate_with_error(mu, nu, cfg);
      report.add(family, std::pow(est.value, 1.0 / cfg.p));
      report.add(family + ".pow", est.value);
      report.add(family + ".stderr", est.std_error);
    }
    report.time(family, ms_since(start));
  }
  return report;
}

RunReport cmd_deform(const DeformOptions& opts) {
  RunReport report;
  report.command = "deform " + opts.source.string() + " " + opts.target.string();
  if (opts.steps == 0) throw ConfigError("--steps must be >= 1");
  const auto source = io::read_cloud(opts.source);
  const auto target = io::read_cloud(opts.target);
  if (source.specs() != target.specs()) throw ConfigError("source and target live on different product spaces");
  const auto families = opts.slicing.families.empty() ? std::vector<std::string>{"h2sw"} : opts.slicing.families;
  if (families.size() != 1 || is_exact(families.front())) {
    throw ConfigError("deform takes exactly one sliced family (sw, gsw, h2sw or chsw)");
  }
  FlowConfig cfg;
  cfg.estimator = make_estimator(families.front(), opts.slicing, source.specs());
  cfg.estimator.singular_policy = SingularPolicy::Lenient;
  cfg.steps = opts.steps;
  cfg.step_size = opts.step_size;
  cfg.checkpoint_every = std::min(opts.checkpoint_every, opts.steps);
  cfg.reseed_per_step = !opts.fixed_directions;
  cfg.exact.max_cells = opts.slicing.max_cells;
  validate(cfg);

  record_slicing(report, opts.slicing, families, source.specs());
  report.seed = cfg.estimator.seed;
  report.set("steps", std::to_string(cfg.steps));
  report.set("step_size", io::format_number(cfg.step_size));
  report.set("checkpoint_every", std::to_string(cfg.checkpoint_every));
  report.set("reseed_per_step", cfg.reseed_per_step ? "true" : "false");

  const auto start = Clock::now();
  const auto trace = deform(source, target, cfg);
  report.time("deform", ms_since(start));

  const auto& first = trace.checkpoints.front();
  const auto& last = trace.checkpoints.back();
  report.add("initial_w", first.joint_w);
  report.add("final_w", last.joint_w);
  report.add("final_loss", last.loss);
  report.add("ratio", first.joint_w > 0.0 ? last.joint_w / first.joint_w : 0.0);
  std::size_t fallback = 0;
  for (const auto& cp : trace.checkpoints) fallback += cp.exact ? 0 : 1;
  if (fallback > 0) {
    report.notes.push_back(std::to_string(fallback) +
                           " checkpoints exceeded the exact-solver guard and report a high-L H2SW estimate");
  }
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    io::write_trace_csv(*opts.out_dir / "trace.csv", trace);
    io::write_cloud(*opts.out_dir / "final.cloud", trace.final_cloud);
  }
  return report;
}

RunReport cmd_compare(const CompareOptions& opts) {
  RunReport report;
  report.command = "compare " + opts.manifest.string();
  if (opts.repeats < 1) throw ConfigError("--repeats must be >= 1");
  DatasetCollection collection;
  for (const auto& [name, path] : io::read_manifest(opts.manifest)) {
    collection.names.push_back(name);
    collection.clouds.push_back(io::read_cloud(path));
  }
  collection.validate();
  const auto families =
      opts.slicing.families.empty() ? std::vector<std::string>{"sw", "chsw", "h2sw"} : opts.slicing.families;
  for (const auto& f : families) check_family_name(f);
  const auto& specs = collection.clouds.front().specs();
  record_slicing(report, opts.slicing, families, specs);
  report.set("repeats", std::to_string(opts.repeats));
  report.seed = opts.slicing.seed.value_or(0);
  if (opts.out_dir) std::filesystem::create_directories(*opts.out_dir);

  auto start = Clock::now();
  const Matrix exact = cost_matrix(collection, ExactDistance{opts.slicing.p, {opts.slicing.max_cells}});
  report.time("exact", ms_since(start));
  if (opts.out_dir) io::write_matrix_csv(*opts.out_dir / "exact.csv", collection.names, exact);
  const auto self = relative_error(exact, exact);
  report.add("exact.relerr_sum", self.sum);
  report.add("exact.relerr_mean", self.mean);

  for (const auto& family : families) {
    if (is_exact(family)) continue;
    start = Clock::now();
    double sum = 0.0, mean = 0.0, agree = 0.0;
    for (std::size_t r = 0; r < opts.repeats; ++r) {
      SlicingOptions run = opts.slicing;
      if (opts.slicing.seed) run.seed = *opts.slicing.seed + r;
      const auto cfg = make_estimator(family, run, specs);
      const Matrix C = cost_matrix(collection, cfg);
      if (r == 0 && opts.out_dir) io::write_matrix_csv(*opts.out_dir / (family + ".csv"), collection.names, C);
      const auto err = relative_error(C, exact);
      sum += err.sum;
      mean += err.mean;
      for (std::size_t i = 0; i < C.rows; ++i) agree += nearest_neighbour(C, i) == nearest_neighbour(exact, i) ? 1 : 0;
    }
    const double R = static_cast<double>(opts.repeats);
    report.add(family + ".relerr_sum", sum / R);
    report.add(family + ".relerr_mean", mean / R);
    report.add(family + ".nn_agreement", agree / R / static_cast<double>(exact.rows));
    report.time(family, ms_since(start));
  }
  return report;
}

RunReport cmd_selftest(const SelftestOptions& opts, bool& passed) {
  RunReport report;
  report.command = "selftest";
  report.seed = opts.seed;
  const auto suites = opts.suites.empty() ? selftest::suite_names() : opts.suites;
  report.set("suites", join(suites));
  if (opts.n) report.set("n", std::to_string(opts.n));
  if (opts.trials) report.set("trials", std::to_string(opts.trials));
  passed = true;
  for (const auto& name : suites) {
    const auto r = selftest::run_suite(name, opts.n, opts.trials, opts.seed);
    report.add(name + ".passed", r.passed ? 1.0 : 0.0);
    report.add(name + ".checks", static_cast<double>(r.checks));
    report.add(name + ".failures", static_cast<double>(r.failures));
    report.time(name, r.seconds * 1000.0);
    report.notes.push_back(name + (r.passed ? ": PASS " : ": FAIL ") + r.detail);
    passed = passed && r.passed;
  }
  return report;
}

RunReport cmd_bench(const BenchOptions& opts) {
  RunReport report;
  report.command = "bench";
  if (!opts.seed) throw ConfigError("--seed is required for bench");
  report.seed = *opts.seed;
  const auto suites = opts.suites.empty() ? std::vector<std::string>{"sample-complexity", "timing"} : opts.suites;
  report.set("suites", join(suites));
  report.set("L", std::to_string(opts.L));
  report.set("resamples", std::to_string(opts.resamples));
  for (const auto& suite : suites) {
    if (suite == "sample-complexity") {
      const auto start = Clock::now();
      const auto sc = selftest::sample_complexity({125, 250, 500, 1000, 2000}, 10000, opts.resamples, opts.L, *opts.seed);
      report.time("sample_complexity", ms_since(start));
      report.add("sample_complexity.reference", sc.reference);
      for (std::size_t s = 0; s < sc.sizes.size(); ++s) {
        report.add("sample_complexity.gap_n" + std::to_string(sc.sizes[s]), sc.mean_gap[s]);
      }
      report.add("sample_complexity.decreasing_steps", static_cast<double>(sc.decreasing_steps));
      if (sc.decreasing_steps < 3) {
        report.notes.push_back("warning: sample-complexity gap decreased in only " +
                               std::to_string(sc.decreasing_steps) + " of 4 doublings");
      }
    } else if (suite == "timing") {
      const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};
      for (std::size_t n : {100, 1000}) {
        const auto mu = synthetic::random_cloud(specs, n, derive_seed(*opts.seed, n));
        const auto nu = synthetic::random_cloud(specs, n, derive_seed(*opts.seed, n + 1));
        SlicingOptions slicing;
        slicing.L = opts.L;
        slicing.seed = *opts.seed;
        for (const std::string family : {"sw", "gsw", "h2sw", "chsw"}) {
          const auto cfg = make_estimator(family, slicing, specs);
          const auto start = Clock::now();
          report.add("timing." + family + "_n" + std::to_string(n), sliced_estimate(mu, nu, cfg));
          report.time("timing." + family + "_n" + std::to_string(n), ms_since(start));
        }
        const auto start = Clock::now();
        report.add("timing.exact_n" + std::to_string(n), joint_wasserstein(mu, nu, 2.0).cost);
        report.time("timing.exact_n" + std::to_string(n), ms_since(start));
      }
    } else {
      throw ConfigError("unknown bench suite '" + suite + "' (expected sample-complexity or timing)");
    }
  }
  return report;
}

}  // namespace h2sw::cli
