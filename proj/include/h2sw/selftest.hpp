#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace h2sw::selftest {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;
  double seconds = 0.0;
};

/// Closed-form 1D W_p^p vs permutation enumeration on uniform inputs with
/// n <= max_n, p alternating over {1, 2}; tolerance 1e-10.
SuiteResult ot1d_bruteforce(std::size_t max_n, std::size_t trials, std::uint64_t seed);

/// joint_wasserstein on R^2 x S^1 clouds vs permutation enumeration (1e-9),
/// network simplex vs assignment (1e-8) and plan feasibility.
SuiteResult exact_bruteforce(std::size_t n, std::size_t trials, std::uint64_t seed);

/// Identity, symmetry and triangle inequality (1e-9) of H2SW on R^3 x S^2
/// triples of size <= max_n with one shared direction stream.
SuiteResult metric_axioms(std::size_t max_n, std::size_t trials, std::uint64_t seed);

/// Analytic h2sw_gradient vs central differences along manifold-respecting
/// perturbations, cycling through all defining-function families; rel. err. 1e-4.
SuiteResult gradient_check(std::size_t trials, std::uint64_t seed);

/// std(L) / std(4L) over `repeats` seeds must lie in [1.5, 2.5].
SuiteResult mc_rate(std::size_t L, std::size_t repeats, std::uint64_t seed);

/// Convergence of the empirical H2SW_2 between two Gaussians pushed to R^3 x S^2.
struct SampleComplexity {
  std::vector<std::size_t> sizes;
  std::vector<double> mean_gap;  ///< mean |H2SW(mu_n, nu_n) - H2SW(mu_N, nu_N)| per size
  double reference = 0.0;        ///< H2SW(mu_N, nu_N)
  std::size_t decreasing_steps = 0;
};

/// All evaluations share one direction stream, so the gaps measure sampling
/// error rather than Monte Carlo noise.
SampleComplexity sample_complexity(const std::vector<std::size_t>& sizes, std::size_t reference_n,
                                   std::size_t resamples, std::size_t L, std::uint64_t seed);

std::vector<std::string> suite_names();

/// Runs a named suite with its default parameters; `n`/`trials` of 0 keep the defaults.
SuiteResult run_suite(const std::string& name, std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace h2sw::selftest
