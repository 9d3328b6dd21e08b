#include "h2sw/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "h2sw/error.hpp"

namespace h2sw {
namespace {

void reproject(const SpaceSpec& spec, std::span<double> x, std::size_t row) {
  switch (spec.kind) {
    case SpaceKind::Euclidean:
      return;
    case SpaceKind::Sphere: {
      const double len = norm2(x);
      if (!(len > 1e-12) || !std::isfinite(len)) {
        throw DegenerateStepError("sphere row " + std::to_string(row) +
                                  " collapsed to zero norm; the step size is too large");
      }
      for (auto& v : x) v /= len;
      return;
    }
    case SpaceKind::Lorentz: {
      const double q = lorentz_inner(x, x);
      if (q < 0.0 && x[0] > 0.0) {
        const double s = 1.0 / std::sqrt(-q);
        for (auto& v : x) v *= s;
      } else {
        // Not in the future cone: lift the spatial part back onto the sheet.
        double spatial = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) spatial += x[i] * x[i];
        x[0] = std::sqrt(1.0 + spatial);
      }
      if (!std::isfinite(x[0])) throw DegenerateStepError("Lorentz row " + std::to_string(row) + " diverged");
      return;
    }
  }
}

Checkpoint evaluate(const JointCloud& state, const JointCloud& target, const FlowConfig& cfg, std::size_t step) {
  Checkpoint cp;
  cp.step = step;
  EstimatorConfig est = cfg.estimator;
  est.seed = step_seed(cfg, step);
  cp.loss = sliced_estimate(state, target, est);
  try {
    cp.joint_w = joint_wasserstein(state, target, cfg.estimator.p, cfg.exact).cost;
  } catch (const ResourceError&) {
    EstimatorConfig fallback = cfg.estimator;
    fallback.family = Family::H2SW;
    fallback.fixed_psi.reset();
    fallback.L = cfg.fallback_L;
    if (cfg.estimator.family == Family::SW || cfg.estimator.family == Family::GSW) {
      fallback.gs.assign(state.num_blocks(), Linear{});
    }
    cp.joint_w = sliced_estimate(state, target, fallback);
    cp.exact = false;
  }
  return cp;
}

}  // namespace

void validate(const FlowConfig& cfg) {
  if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) throw ConfigError("step size must be positive");
  if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
  if (cfg.checkpoint_every < 1 || cfg.checkpoint_every > cfg.steps) {
    throw ConfigError("checkpoint interval must lie in [1, steps]");
  }
  if (cfg.fallback_L < 1) throw ConfigError("fallback projection count must be >= 1");
}

std::uint64_t step_seed(const FlowConfig& cfg, std::size_t step_index) {
  return cfg.reseed_per_step ? derive_seed(cfg.estimator.seed, step_index) : cfg.estimator.seed;
}

JointCloud euler_step(const JointCloud& state, const JointCloud& target, const FlowConfig& cfg,
                      std::size_t step_index) {
  EstimatorConfig est = cfg.estimator;
  est.seed = step_seed(cfg, step_index);
  const auto grad = sliced_gradient(state, target, est);
  const double scale = cfg.step_size * static_cast<double>(state.size());
  std::vector<Matrix> blocks = state.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (std::size_t i = 0; i < blocks[k].rows; ++i) {
      const auto g = grad[k].row(i);
      // Rows with a zero gradient stay bit-identical instead of being renormalised.
      if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; })) continue;
      auto row = blocks[k].row(i);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] -= scale * g[c];
      reproject(state.specs()[k], row, i);
    }
  }
  return JointCloud(std::move(blocks), state.specs(), state.weights());
}

FlowTrace deform(const JointCloud& source, const JointCloud& target, const FlowConfig& cfg) {
  validate(cfg);
  validate(cfg.estimator, source.specs());
  if (source.specs() != target.specs()) throw ConfigError("source and target live on different product spaces");
  FlowTrace trace{{}, source};
  trace.checkpoints.push_back(evaluate(source, target, cfg, 0));
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    trace.final_cloud = euler_step(trace.final_cloud, target, cfg, step - 1);
    if (step % cfg.checkpoint_every == 0 || step == cfg.steps) {
      trace.checkpoints.push_back(evaluate(trace.final_cloud, target, cfg, step));
    }
  }
  return trace;
}

}  // namespace h2sw
