#include "h2sw/sliced.hpp"

#include <cmath>

#include "h2sw/error.hpp"
#include "h2sw/parallel.hpp"

namespace h2sw {
namespace {

// Gradient slices are reduced in fixed-size chunks so the summation order
// never depends on the worker count.
constexpr std::size_t kGradientChunk = 32;

std::size_t joint_ambient(const std::vector<SpaceSpec>& specs) {
  std::size_t d = 0;
  for (const auto& s : specs) d += s.ambient();
  return d;
}

const DefiningFunction& joint_function(const EstimatorConfig& cfg) {
  static const DefiningFunction linear = Linear{};
  return cfg.family == Family::SW ? linear : cfg.gs.front();
}

void check_pair(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  if (mu.specs() != nu.specs()) throw ConfigError("clouds live on different product spaces");
  validate(cfg, mu.specs());
}

EstimatorConfig with_family(EstimatorConfig cfg, Family family) {
  cfg.family = family;
  return cfg;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::SW:
      return "sw";
    case Family::GSW:
      return "gsw";
    case Family::H2SW:
      return "h2sw";
    case Family::CHSW:
      return "chsw";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "sw") return Family::SW;
  if (name == "gsw") return Family::GSW;
  if (name == "h2sw") return Family::H2SW;
  if (name == "chsw") return Family::CHSW;
  throw ConfigError("unknown estimator family '" + name + "'");
}

std::vector<double> equal_psi(std::size_t K) { return std::vector<double>(K, 1.0 / std::sqrt(static_cast<double>(K))); }

void validate(const EstimatorConfig& cfg, const std::vector<SpaceSpec>& specs) {
  if (cfg.L < 1) throw ConfigError("projection count L must be >= 1");
  if (!(cfg.p >= 1.0) || !std::isfinite(cfg.p)) throw ConfigError("order p must be >= 1");
  if (specs.empty()) throw ConfigError("no marginals");
  switch (cfg.family) {
    case Family::H2SW:
    case Family::CHSW:
      if (cfg.gs.size() != specs.size()) {
        throw ConfigError(to_string(cfg.family) + " needs one defining function per marginal (" +
                          std::to_string(specs.size()) + "), got " + std::to_string(cfg.gs.size()));
      }
      for (std::size_t k = 0; k < specs.size(); ++k) {
        validate_defining_function(cfg.gs[k]);
        parameter_dim(cfg.gs[k], specs[k]);
      }
      if (cfg.family == Family::CHSW) {
        if (!cfg.fixed_psi) throw ConfigError("chsw requires fixed mixing weights");
        if (cfg.fixed_psi->size() != specs.size()) throw ConfigError("chsw mixing weights have the wrong length");
        if (std::abs(norm2(*cfg.fixed_psi) - 1.0) > 1e-12) throw ConfigError("chsw mixing weights must have norm 1");
      }
      break;
    case Family::GSW:
      if (cfg.gs.size() != 1) throw ConfigError("gsw takes exactly one defining function");
      validate_defining_function(cfg.gs.front());
      parameter_dim(cfg.gs.front(), joint_ambient(specs));
      break;
    case Family::SW:
      break;
  }
}

DirectionSample slice_direction(const EstimatorConfig& cfg, const std::vector<SpaceSpec>& specs,
                                std::uint64_t index) {
  StreamRng rng(cfg.seed, index);
  if (cfg.family == Family::SW || cfg.family == Family::GSW) {
    const auto& g = joint_function(cfg);
    return DirectionSample{{sample_unit_sphere(parameter_dim(g, joint_ambient(specs)), rng)}, {1.0}};
  }
  DirectionSample dir = sample_direction(specs, cfg.gs, rng);
  if (cfg.family == Family::CHSW) dir.psi = *cfg.fixed_psi;
  return dir;
}

Projected1D slice_project(const EstimatorConfig& cfg, const JointCloud& cloud, const DirectionSample& dir) {
  if (cfg.family == Family::SW || cfg.family == Family::GSW) {
    return grt_project(cloud, dir.thetas.front(), joint_function(cfg));
  }
  return hhrt_project(cloud, dir, cfg.gs);
}

std::vector<double> per_direction_costs(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  check_pair(mu, nu, cfg);
  std::vector<double> costs(cfg.L, 0.0);
  parallel_for(cfg.L, cfg.threads, [&](std::size_t l) {
    const auto dir = slice_direction(cfg, mu.specs(), l);
    costs[l] = wasserstein_1d(slice_project(cfg, mu, dir), slice_project(cfg, nu, dir), cfg.p);
  });
  return costs;
}

Estimate estimate_with_error(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  const auto costs = per_direction_costs(mu, nu, cfg);
  const double L = static_cast<double>(costs.size());
  double sum = 0.0;
  for (double c : costs) sum += c;
  Estimate est;
  est.value = sum / L;
  if (costs.size() > 1) {
    double ss = 0.0;
    for (double c : costs) ss += (c - est.value) * (c - est.value);
    est.std_error = std::sqrt(ss / (L - 1.0) / L);
  }
  return est;
}

double sliced_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return estimate_with_error(mu, nu, cfg).value;
}

double sliced_distance(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return std::pow(sliced_estimate(mu, nu, cfg), 1.0 / cfg.p);
}

double h2sw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return sliced_estimate(mu, nu, with_family(cfg, Family::H2SW));
}

double sw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return sliced_estimate(mu, nu, with_family(cfg, Family::SW));
}

double gsw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return sliced_estimate(mu, nu, with_family(cfg, Family::GSW));
}

double chsw_estimate(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return sliced_estimate(mu, nu, with_family(cfg, Family::CHSW));
}

std::vector<Matrix> sliced_gradient(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  check_pair(mu, nu, cfg);
  if (mu.size() != nu.size() || !mu.has_uniform_weights() || !nu.has_uniform_weights()) {
    throw UnsupportedError("sliced gradient requires equal-size clouds with uniform weights");
  }
  const std::size_t n = mu.size();
  const std::size_t K = mu.num_blocks();
  const bool joint = cfg.family == Family::SW || cfg.family == Family::GSW;

  auto zero_like = [&] {
    std::vector<Matrix> g;
    g.reserve(K);
    for (const auto& b : mu.blocks()) g.emplace_back(b.rows, b.cols, 0.0);
    return g;
  };

  const std::size_t chunks = (cfg.L + kGradientChunk - 1) / kGradientChunk;
  std::vector<std::vector<Matrix>> partial(chunks);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    auto acc = zero_like();
    std::vector<double> joint_x(mu.joint_dim());
    std::vector<double> joint_g(mu.joint_dim());
    const std::size_t end = std::min(cfg.L, (c + 1) * kGradientChunk);
    for (std::size_t l = c * kGradientChunk; l < end; ++l) {
      const auto dir = slice_direction(cfg, mu.specs(), l);
      const auto g1d = wasserstein_1d_grad(slice_project(cfg, mu, dir), slice_project(cfg, nu, dir), cfg.p);
      for (std::size_t i = 0; i < n; ++i) {
        if (g1d[i] == 0.0) continue;
        if (joint) {
          std::size_t off = 0;
          for (const auto& b : mu.blocks()) {
            const auto r = b.row(i);
            std::copy(r.begin(), r.end(), joint_x.begin() + static_cast<std::ptrdiff_t>(off));
            off += r.size();
          }
          std::fill(joint_g.begin(), joint_g.end(), 0.0);
          accumulate_defining_gradient(joint_function(cfg), joint_x, dir.thetas.front(), g1d[i], joint_g,
                                       cfg.singular_policy);
          off = 0;
          for (std::size_t k = 0; k < K; ++k) {
            auto out = acc[k].row(i);
            for (std::size_t q = 0; q < out.size(); ++q) out[q] += joint_g[off + q];
            off += out.size();
          }
        } else {
          for (std::size_t k = 0; k < K; ++k) {
            if (dir.psi[k] == 0.0) continue;
            accumulate_defining_gradient(cfg.gs[k], mu.block(k).row(i), dir.thetas[k], g1d[i] * dir.psi[k],
                                         acc[k].row(i), cfg.singular_policy);
          }
        }
      }
    }
    partial[c] = std::move(acc);
  });

  auto total = zero_like();
  const double inv_L = 1.0 / static_cast<double>(cfg.L);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t q = 0; q < total[k].data.size(); ++q) total[k].data[q] += part[k].data[q];
    }
  }
  for (auto& m : total) {
    for (auto& v : m.data) v *= inv_L;
  }
  return total;
}

std::vector<Matrix> h2sw_gradient(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg) {
  return sliced_gradient(mu, nu, with_family(cfg, Family::H2SW));
}

double mc_std(const JointCloud& mu, const JointCloud& nu, const EstimatorConfig& cfg, std::size_t repeats) {
  if (repeats < 2) throw ConfigError("mc_std needs at least two repeats");
  std::vector<double> values(repeats);
  EstimatorConfig run = cfg;
  for (std::size_t r = 0; r < repeats; ++r) {
    run.seed = cfg.seed + r;
    values[r] = sliced_estimate(mu, nu, run);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(repeats);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(repeats - 1));
}

}  // namespace h2sw
