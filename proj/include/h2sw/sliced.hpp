#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "h2sw/geometry.hpp"
#include "h2sw/projections.hpp"

namespace h2sw {

enum class Family { SW, GSW, H2SW, CHSW };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct EstimatorConfig {
  Family family = Family::H2SW;
  /// One function per marginal for H2SW/CHSW; a single function for GSW; ignored by SW.
  std::vector<DefiningFunction> gs;
  std::size_t L = 100;
  double p = 2.0;
  std::uint64_t seed = 0;
  /// Mixing weights used by CHSW on every slice.
  std::optional<std::vector<double>> fixed_psi;
  unsigned threads = 1;
  SingularPolicy singular_policy = SingularPolicy::Throw;
};

/// Checks cfg against itself and against the marginal specs it will be applied to.
void validate(const EstimatorConfig& cfg, const std::vector<SpaceSpec>& specs);

/// (1/sqrt(K), ..., 1/sqrt(K)).
std::vector<double> equal_psi(std::size_t K);

/// The direction used by slice `index` for cfg on these specs. H2SW/CHSW fill
/// all K thetas and psi; SW/GSW return a single theta on the joint coordinates
/// with psi = (1).
DirectionSample slice_direction(const EstimatorConfig& cfg, const std::vector<SpaceSpec>& specs,
                                std::uint64_t index);

/// Projects a cloud along one slice according to the family.
Projected1D slice_project(const EstimatorConfig& cfg, const JointCloud& cloud, const DirectionSample& dir);

/// W_p^p of each of the L slices, in slice order.
std::vector<double> per_direction_costs(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

struct Estimate {
  double value = 0.0;      ///< mean of per-slice W_p^p
  double std_error = 0.0;  ///< sample std of per-slice W_p^p over sqrt(L); 0 when L = 1
};

Estimate estimate_with_error(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

/// Monte Carlo estimate of the p-th power for cfg.family.
double sliced_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

/// p-th root of sliced_estimate.
double sliced_distance(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

double h2sw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);
double sw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);
double gsw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);
double chsw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

/// Per-block gradient arrays (n x ambient_k) of sliced_estimate with respect
/// to mu's coordinates. Requires equal-size uniform clouds.
std::vector<Matrix> sliced_gradient(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

/// sliced_gradient with the family forced to H2SW.
std::vector<Matrix> h2sw_gradient(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg);

/// Sample standard deviation of sliced_estimate over seeds seed, seed+1, ..., seed+repeats-1.
double mc_std(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg, std::size_t repeats);

}  // namespace h2sw
