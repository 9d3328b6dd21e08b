// h2sw: sliced and exact joint Wasserstein distances, flows and dataset comparison.

#include <fstream>
#include <iostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "h2sw/commands.hpp"
#include "h2sw/error.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitResource = 2;
constexpr int kExitSelftest = 3;

constexpr int kMaxMarginalFlags = 8;

struct Output {
  std::string json_path;
  std::string out_dir;
};

void add_slicing(CLI::App& cmd, h2sw::cli::SlicingOptions& s, std::vector<std::string>& gs,
                 std::vector<double>& psi) {
  cmd.add_option("--family", s.families, "sw | gsw | h2sw | chsw | exact (repeatable)")
      ->check(CLI::IsMember({"sw", "gsw", "h2sw", "chsw", "exact"}))
      ->take_all()
      ->allow_extra_args(false);
  gs.assign(kMaxMarginalFlags, "");
  for (int k = 0; k < kMaxMarginalFlags; ++k) {
    cmd.add_option("--g" + std::to_string(k + 1), gs[k],
                   "defining function of marginal " + std::to_string(k + 1) +
                       " (linear | circular:<r> | poly:<m> | busemann)");
  }
  cmd.add_option("--g", s.joint_g, "GSW defining function on the joint coordinates")->capture_default_str();
  cmd.add_option("--L", s.L, "number of projections")->capture_default_str()->check(CLI::PositiveNumber);
  cmd.add_option("--p", s.p, "Wasserstein order")->capture_default_str()->check(CLI::Range(1.0, 1e6));
  cmd.add_option_function<std::uint64_t>("--seed", [&s](const std::uint64_t& v) { s.seed = v; }, "RNG seed");
  cmd.add_option("--psi", psi, "CHSW mixing weights, comma separated")->delimiter(',');
  cmd.add_option("--max-cells", s.max_cells, "size guard for the exact distance")->capture_default_str();
  cmd.add_option("--threads", s.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

void finish_slicing(h2sw::cli::SlicingOptions& s, const std::vector<std::string>& gs, const std::vector<double>& psi) {
  std::size_t last = 0;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (!gs[k].empty()) last = k + 1;
  }
  s.marginal_g.assign(gs.begin(), gs.begin() + static_cast<std::ptrdiff_t>(last));
  if (!psi.empty()) s.psi = psi;
}

void emit(const h2sw::RunReport& report, const Output& out) {
  report.write_text(std::cout);
  if (!out.out_dir.empty()) {
    std::filesystem::create_directories(out.out_dir);
    std::ofstream f(std::filesystem::path(out.out_dir) / "report.txt");
    report.write_text(f);
  }
  if (!out.json_path.empty()) {
    std::ofstream f(out.json_path);
    if (!f) throw h2sw::ValidationError("cannot write JSON report to '" + out.json_path + "'");
    f << report.to_json().dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical hybrid sliced Wasserstein toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--json", out.json_path, "also write the report as JSON to this file");
  app.add_option("--out", out.out_dir, "directory for the report and artifacts");

  h2sw::cli::DistanceOptions dist;
  std::vector<std::string> dist_g;
  std::vector<double> dist_psi;
  auto* distance = app.add_subcommand("distance", "distances between two cloud files");
  distance->add_option("first", dist.first, "first cloud file")->required()->check(CLI::ExistingFile);
  distance->add_option("second", dist.second, "second cloud file")->required()->check(CLI::ExistingFile);
  add_slicing(*distance, dist.slicing, dist_g, dist_psi);

  h2sw::cli::DeformOptions def;
  std::vector<std::string> def_g;
  std::vector<double> def_psi;
  auto* deform = app.add_subcommand("deform", "gradient flow from a source cloud to a target cloud");
  deform->add_option("source", def.source, "source cloud file")->required()->check(CLI::ExistingFile);
  deform->add_option("target", def.target, "target cloud file")->required()->check(CLI::ExistingFile);
  add_slicing(*deform, def.slicing, def_g, def_psi);
  deform->add_option("--steps", def.steps, "Euler steps")->capture_default_str();
  deform->add_option("--step-size", def.step_size, "Euler step size")->capture_default_str();
  deform->add_option("--checkpoint-every", def.checkpoint_every, "steps between exact evaluations")
      ->capture_default_str();
  deform->add_flag("--fixed-directions", def.fixed_directions, "reuse one direction set for every step");

  h2sw::cli::CompareOptions cmp;
  std::vector<std::string> cmp_g;
  std::vector<double> cmp_psi;
  auto* compare = app.add_subcommand("compare", "pairwise dataset cost matrices against the exact reference");
  compare->add_option("manifest", cmp.manifest, "manifest of '<name> <cloud path>' lines")
      ->required()
      ->check(CLI::ExistingFile);
  add_slicing(*compare, cmp.slicing, cmp_g, cmp_psi);
  compare->add_option("--repeats", cmp.repeats, "seeds averaged per family")->capture_default_str();

  h2sw::cli::SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "randomised oracle-equivalence and metric-axiom suites");
  selftest->add_option("--suite", st.suites, "suite name (repeatable)")
      ->check(CLI::IsMember({"ot1d-bruteforce", "exact-bruteforce", "metric", "gradient", "mc-rate"}));
  selftest->add_option("--n", st.n, "size parameter (0 = suite default)");
  selftest->add_option("--trials", st.trials, "trial count (0 = suite default)");
  selftest->add_option("--seed", st.seed, "RNG seed")->capture_default_str();

  h2sw::cli::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "sample-complexity and timing benchmarks");
  bench_cmd->add_option("--suite", bench.suites, "sample-complexity | timing (repeatable)");
  bench_cmd->add_option_function<std::uint64_t>("--seed", [&bench](const std::uint64_t& v) { bench.seed = v; },
                                                "RNG seed");
  bench_cmd->add_option("--resamples", bench.resamples, "resamples per size")->capture_default_str();
  bench_cmd->add_option("--L", bench.L, "number of projections")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (distance->parsed()) {
      finish_slicing(dist.slicing, dist_g, dist_psi);
      emit(h2sw::cli::cmd_distance(dist), out);
    } else if (deform->parsed()) {
      finish_slicing(def.slicing, def_g, def_psi);
      if (!out.out_dir.empty()) def.out_dir = out.out_dir;
      emit(h2sw::cli::cmd_deform(def), out);
    } else if (compare->parsed()) {
      finish_slicing(cmp.slicing, cmp_g, cmp_psi);
      if (!out.out_dir.empty()) cmp.out_dir = out.out_dir;
      emit(h2sw::cli::cmd_compare(cmp), out);
    } else if (selftest->parsed()) {
      bool passed = false;
      emit(h2sw::cli::cmd_selftest(st, passed), out);
      if (!passed) return kExitSelftest;
    } else if (bench_cmd->parsed()) {
      emit(h2sw::cli::cmd_bench(bench), out);
    }
  } catch (const h2sw::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const h2sw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
