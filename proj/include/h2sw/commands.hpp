#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "h2sw/report.hpp"
#include "h2sw/sliced.hpp"

namespace h2sw::cli {

/// Flags shared by every command that slices.
struct SlicingOptions {
  std::vector<std::string> families;
  /// Per-marginal defining functions by 0-based marginal index; empty entries
  /// take the default for the space (linear / circular:1 / busemann).
  std::vector<std::string> marginal_g;
  /// Defining function for GSW on the joint coordinates.
  std::string joint_g = "circular:1";
  std::size_t L = 100;
  double p = 2.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<double>> psi;
  unsigned threads = 1;
  /// Size guard (n * m cells) for the exact joint Wasserstein.
  std::size_t max_cells = 1'000'000;
};

/// Default defining function for a marginal space.
DefiningFunction default_function(const SpaceSpec& spec);

/// Resolves a family name into a full estimator configuration for `specs`.
EstimatorConfig make_estimator(const std::string& family, const SlicingOptions& opts,
                               const std::vector<SpaceSpec>& specs);

struct DistanceOptions {
  std::filesystem::path first;
  std::filesystem::path second;
  SlicingOptions slicing;
};

/// Every requested family (sw, gsw, h2sw, chsw, exact) on one pair with a shared seed.
RunReport cmd_distance(const DistanceOptions& opts);

struct DeformOptions {
  std::filesystem::path source;
  std::filesystem::path target;
  SlicingOptions slicing;
  std::size_t steps = 1000;
  double step_size = 0.01;
  std::size_t checkpoint_every = 100;
  bool fixed_directions = false;
  std::optional<std::filesystem::path> out_dir;
};

/// Runs the flow; writes trace.csv and final.cloud into out_dir when given.
RunReport cmd_deform(const DeformOptions& opts);

struct CompareOptions {
  std::filesystem::path manifest;
  SlicingOptions slicing;
  std::size_t repeats = 1;
  std::optional<std::filesystem::path> out_dir;
};

/// Cost matrices per family plus relative errors against the exact matrix.
RunReport cmd_compare(const CompareOptions& opts);

struct SelftestOptions {
  std::vector<std::string> suites;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 20240601;
};

/// Sets `passed` to false if any suite fails.
RunReport cmd_selftest(const SelftestOptions& opts, bool& passed);

struct BenchOptions {
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::size_t resamples = 20;
  std::size_t L = 200;
};

RunReport cmd_bench(const BenchOptions& opts);

}  // namespace h2sw::cli
