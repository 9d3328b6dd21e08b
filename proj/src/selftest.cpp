#include "h2sw/selftest.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <iomanip>
#include <sstream>

#include "h2sw/error.hpp"
#include "h2sw/exact_ot.hpp"
#include "h2sw/oracle.hpp"
#include "h2sw/sliced.hpp"
#include "h2sw/synthetic.hpp"

namespace h2sw::selftest {
namespace {

using Clock = std::chrono::steady_clock;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_ = Clock::now();
};

std::string short_number(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

SuiteResult finish(SuiteResult r, const Timer& timer, const std::string& extra = {}) {
  r.passed = r.failures == 0 && r.checks > 0;
  r.seconds = timer.seconds();
  std::ostringstream os;
  os << (r.checks - r.failures) << "/" << r.checks << " checks passed";
  if (!extra.empty()) os << "; " << extra;
  r.detail = os.str();
  return r;
}

std::size_t draw_size(StreamRng& rng, std::size_t max_n) {
  return 1 + static_cast<std::size_t>(rng() % max_n);
}

}  // namespace

SuiteResult ot1d_bruteforce(std::size_t max_n, std::size_t trials, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "ot1d-bruteforce";
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    StreamRng rng(seed, t);
    std::normal_distribution<double> gauss(0.0, 2.0);
    const std::size_t n = draw_size(rng, max_n);
    const double p = t % 2 == 0 ? 1.0 : 2.0;
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = gauss(rng);
    for (auto& x : b) x = gauss(rng) + 0.5;
    const auto pa = Projected1D::uniform(a);
    const auto pb = Projected1D::uniform(b);
    const double closed = wasserstein_1d(pa, pb, p);
    const double brute = oracle::permutation_w1d(a, b, p);
    const double err = std::abs(closed - brute);
    worst = std::max(worst, err);
    ++r.checks;
    if (!(err <= 1e-10)) ++r.failures;
    ++r.checks;
    if (!(std::abs(wasserstein_1d_quantile(pa, pb, p) - closed) <= 1e-12)) ++r.failures;
  }
  return finish(r, timer, "max |closed - brute| = " + short_number(worst));
}

SuiteResult exact_bruteforce(std::size_t n, std::size_t trials, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "exact-bruteforce";
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(2), SpaceSpec::sphere(2)};
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto mu = synthetic::random_cloud(specs, n, derive_seed(seed, 2 * t));
    const auto nu = synthetic::random_cloud(specs, n, derive_seed(seed, 2 * t + 1));
    const double p = t % 2 == 0 ? 2.0 : 1.0;
    Matrix reference(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) reference(i, j) = oracle::mixed_cost(mu, i, nu, j, p);
    }
    const auto result = joint_wasserstein(mu, nu, p);
    const double brute = oracle::permutation_assignment(reference);
    worst = std::max(worst, std::abs(result.cost - brute));
    ++r.checks;
    if (!(std::abs(result.cost - brute) <= 1e-9)) ++r.failures;

    const Matrix cost = mixed_cost_matrix(mu, nu, p);
    const auto lp = solve_transport_simplex(cost, mu.weights(), nu.weights());
    ++r.checks;
    if (!(std::abs(lp.cost - result.cost) <= 1e-8)) ++r.failures;
    for (const auto* plan : {&result.plan, &lp}) {
      ++r.checks;
      try {
        check_plan(*plan, cost, mu.weights(), nu.weights());
      } catch (const ValidationError&) {
        ++r.failures;
      }
    }
  }
  return finish(r, timer, "max |exact - brute| = " + short_number(worst));
}

SuiteResult metric_axioms(std::size_t max_n, std::size_t trials, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "metric";
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    StreamRng rng(seed, t);
    const bool weighted = t % 3 == 2;
    const auto mu = synthetic::random_cloud(specs, draw_size(rng, max_n), rng(), weighted);
    const auto nu = synthetic::random_cloud(specs, draw_size(rng, max_n), rng(), weighted);
    const auto rho = synthetic::random_cloud(specs, draw_size(rng, max_n), rng(), weighted);
    EstimatorConfig cfg;
    cfg.family = Family::H2SW;
    cfg.gs = {Linear{}, Circular{1.0}};
    cfg.L = 50;
    cfg.p = t % 2 == 0 ? 2.0 : 1.0;
    cfg.seed = rng();
    auto dist = [&](const JointCloud& a, const JointCloud& b) {
      const auto costs = per_direction_costs(a, b, cfg);
      double s = 0.0;
      for (double c : costs) s += c;
      return std::pow(s / static_cast<double>(costs.size()), 1.0 / cfg.p);
    };
    r.checks += 3;
    if (dist(mu, mu) != 0.0) ++r.failures;
    if (dist(mu, nu) != dist(nu, mu)) ++r.failures;
    const double slack = dist(mu, nu) - dist(mu, rho) - dist(rho, nu);
    worst_slack = std::max(worst_slack, slack);
    if (!(slack <= 1e-9)) ++r.failures;
  }
  return finish(r, timer, "max triangle slack = " + short_number(worst_slack));
}

SuiteResult gradient_check(std::size_t trials, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "gradient";
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    StreamRng rng(seed, t);
    std::uniform_real_distribution<double> unif(0.5, 2.0);
    std::vector<SpaceSpec> specs;
    EstimatorConfig cfg;
    cfg.family = Family::H2SW;
    switch (t % 4) {
      case 0:
        specs = {SpaceSpec::euclidean(3), SpaceSpec::euclidean(2)};
        cfg.gs = {Linear{}, Linear{}};
        break;
      case 1:
        specs = {SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};
        cfg.gs = {Circular{unif(rng)}, Circular{unif(rng)}};
        break;
      case 2:
        specs = {SpaceSpec::euclidean(2), SpaceSpec::euclidean(3)};
        cfg.gs = {OddPolynomial{3}, OddPolynomial{1}};
        break;
      default:
        specs = {SpaceSpec::euclidean(3), SpaceSpec::lorentz(2)};
        cfg.gs = {Linear{}, BusemannLorentz{}};
        break;
    }
    cfg.L = 16;
    cfg.p = t % 3 == 2 ? 3.0 : 2.0;
    cfg.seed = rng();
    const std::size_t n = 4 + static_cast<std::size_t>(rng() % 13);
    const auto mu = synthetic::random_cloud(specs, n, rng());
    const auto nu = synthetic::random_cloud(specs, n, rng());
    const auto grad = h2sw_gradient(mu, nu, cfg);
    const auto f = [&](const JointCloud& c) { return h2sw_estimate(c, nu, cfg); };
    double diff = 0.0, ref = 0.0;
    for (std::uint64_t field_seed = 0; field_seed < 6; ++field_seed) {
      const auto field = oracle::tangent_field(mu, rng());
      const double analytic = oracle::field_inner(grad, field);
      const double numeric = oracle::directional_fd(f, mu, field, 1e-5);
      diff += (analytic - numeric) * (analytic - numeric);
      ref += numeric * numeric;
    }
    const double rel = std::sqrt(diff) / std::max(std::sqrt(ref), 1e-300);
    worst = std::max(worst, rel);
    ++r.checks;
    if (!(rel <= 1e-4)) ++r.failures;
  }
  return finish(r, timer, "max relative error = " + short_number(worst));
}

SuiteResult mc_rate(std::size_t L, std::size_t repeats, std::uint64_t seed) {
  Timer timer;
  SuiteResult r;
  r.name = "mc-rate";
  const std::vector<SpaceSpec> specs{SpaceSpec::euclidean(3), SpaceSpec::sphere(3)};
  const auto mu = synthetic::random_cloud(specs, 32, derive_seed(seed, 1));
  const auto nu = synthetic::random_cloud(specs, 32, derive_seed(seed, 2), false, 1.5);
  EstimatorConfig cfg;
  cfg.family = Family::H2SW;
  cfg.gs = {Linear{}, Circular{1.0}};
  cfg.p = 2.0;
  cfg.L = L;
  cfg.seed = derive_seed(seed, 3);
  const double s1 = mc_std(mu, nu, cfg, repeats);
  cfg.L = 4 * L;
  cfg.seed = derive_seed(seed, 4);
  const double s4 = mc_std(mu, nu, cfg, repeats);
  const double ratio = s1 / s4;
  r.checks = 1;
  r.failures = ratio >= 1.5 && ratio <= 2.5 ? 0 : 1;
  return finish(r, timer, "std ratio = " + short_number(ratio));
}

SampleComplexity sample_complexity(const std::vector<std::size_t>& sizes, std::size_t reference_n,
                                   std::size_t resamples, std::size_t L, std::uint64_t seed) {
  const std::vector<double> mean_mu{0.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  const std::vector<double> mean_nu{1.0, 0.5, 0.0, 0.0, 1.0, 0.5};
  EstimatorConfig cfg;
  cfg.family = Family::H2SW;
  cfg.gs = {Linear{}, Circular{1.0}};
  cfg.L = L;
  cfg.p = 2.0;
  cfg.seed = derive_seed(seed, 0);
  SampleComplexity out;
  out.sizes = sizes;
  out.reference = sliced_distance(synthetic::gaussian_on_r3_s2(reference_n, mean_mu, derive_seed(seed, 1)),
                                  synthetic::gaussian_on_r3_s2(reference_n, mean_nu, derive_seed(seed, 2)), cfg);
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    double total = 0.0;
    for (std::size_t r = 0; r < resamples; ++r) {
      const std::uint64_t base = derive_seed(seed, 1000 + s * resamples + r);
      const auto mu = synthetic::gaussian_on_r3_s2(sizes[s], mean_mu, derive_seed(base, 1));
      const auto nu = synthetic::gaussian_on_r3_s2(sizes[s], mean_nu, derive_seed(base, 2));
      total += std::abs(sliced_distance(mu, nu, cfg) - out.reference);
    }
    out.mean_gap.push_back(total / static_cast<double>(resamples));
  }
  for (std::size_t s = 1; s < out.mean_gap.size(); ++s) {
    if (out.mean_gap[s] < out.mean_gap[s - 1]) ++out.decreasing_steps;
  }
  return out;
}

std::vector<std::string> suite_names() { return {"ot1d-bruteforce", "exact-bruteforce", "metric", "gradient", "mc-rate"}; }

SuiteResult run_suite(const std::string& name, std::size_t n, std::size_t trials, std::uint64_t seed) {
  auto pick = [](std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; };
  if (name == "ot1d-bruteforce") return ot1d_bruteforce(pick(n, 7), pick(trials, 200), seed);
  if (name == "exact-bruteforce") return exact_bruteforce(pick(n, 6), pick(trials, 30), seed);
  if (name == "metric") return metric_axioms(pick(n, 20), pick(trials, 50), seed);
  if (name == "gradient") return gradient_check(pick(trials, 20), seed);
  if (name == "mc-rate") return mc_rate(pick(n, 100), pick(trials, 100), seed);
  throw ConfigError("unknown selftest suite '" + name + "'");
}

}  // namespace h2sw::selftest
