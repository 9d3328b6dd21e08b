#pragma once

#include <cstddef>
#include <vector>

#include "h2sw/exact_ot.hpp"
#include "h2sw/geometry.hpp"
#include "h2sw/sliced.hpp"

namespace h2sw {

struct FlowConfig {
  EstimatorConfig estimator;
  double step_size = 0.01;
  std::size_t steps = 1000;
  std::size_t checkpoint_every = 100;
  bool reseed_per_step = true;
  /// Size guard for the exact checkpoint metric.
  ExactOptions exact;
  /// Projection count of the H2SW estimate used when the exact metric is over the guard.
  std::size_t fallback_L = 2000;
};

void validate(const FlowConfig& cfg);

struct Checkpoint {
  std::size_t step = 0;
  double joint_w = 0.0;  ///< exact joint W_p^p, or the fallback estimate when !exact
  double loss = 0.0;     ///< estimator value (p-th power) at this state
  bool exact = true;
};

struct FlowTrace {
  std::vector<Checkpoint> checkpoints;
  JointCloud final_cloud;
};

/// Seed used for the directions of step `step_index`.
std::uint64_t step_seed(const FlowConfig& cfg, std::size_t step_index);

/// One explicit Euler step X <- X - step_size * n * grad, followed by
/// re-projection of sphere and Lorentz blocks onto their manifolds.
JointCloud euler_step(const JointCloud& state, const JointCloud& target, const FlowConfig& cfg,
                      std::size_t step_index);

/// Integrates `cfg.steps` Euler steps. Checkpoints are taken at step 0, at
/// every multiple of checkpoint_every, and at the final step.
FlowTrace deform(const JointCloud& source, const JointCloud& target, const FlowConfig& cfg);

}  // namespace h2sw
