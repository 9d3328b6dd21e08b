#include "h2sw/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "h2sw/error.hpp"

namespace h2sw {
namespace {

bool is_uniform(const Projected1D& d) {
  const double u = 1.0 / static_cast<double>(d.size());
  return std::all_of(d.weights.begin(), d.weights.end(), [u](double w) { return std::abs(w - u) <= 1e-12 * u; });
}

double cost_power(double diff, double p) {
  const double a = std::abs(diff);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("wasserstein order p must be >= 1");
}

}  // namespace

Projected1D Projected1D::uniform(std::vector<double> values) {
  Projected1D d;
  const double w = values.empty() ? 0.0 : 1.0 / static_cast<double>(values.size());
  d.weights.assign(values.size(), w);
  d.values = std::move(values);
  return d;
}

void validate(const Projected1D& dist) {
  if (dist.values.empty()) throw ValidationError("1D distribution needs at least one atom");
  if (dist.values.size() != dist.weights.size()) throw ValidationError("1D distribution values/weights mismatch");
  double total = 0.0;
  for (double w : dist.weights) {
    if (!(w >= 0.0)) throw ValidationError("1D distribution has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("1D distribution weights sum to " + std::to_string(total));
}

std::vector<std::size_t> stable_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

double quantile(const Projected1D& dist, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  validate(dist);
  const auto order = stable_order(dist.values);
  double cum = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const double v = dist.values[order[r]];
    cum += dist.weights[order[r]];
    // merge tied values before testing the level
    while (r + 1 < order.size() && dist.values[order[r + 1]] == v) cum += dist.weights[order[++r]];
    if (cum >= z - 1e-12) return v;
  }
  return dist.values[order.back()];
}

double wasserstein_1d_quantile(const Projected1D& a, const Projected1D& b, double p) {
  check_p(p);
  validate(a);
  validate(b);
  const auto oa = stable_order(a.values);
  const auto ob = stable_order(b.values);
  std::vector<double> ca(a.size()), cb(b.size());
  double s = 0.0;
  for (std::size_t r = 0; r < oa.size(); ++r) ca[r] = (s += a.weights[oa[r]]);
  s = 0.0;
  for (std::size_t r = 0; r < ob.size(); ++r) cb[r] = (s += b.weights[ob[r]]);
  ca.back() = 1.0;
  cb.back() = 1.0;

  double total = 0.0;
  double prev = 0.0;
  std::size_t i = 0, j = 0;
  while (i < oa.size() && j < ob.size()) {
    const double next = std::min(ca[i], cb[j]);
    if (next > prev) total += (next - prev) * cost_power(a.values[oa[i]] - b.values[ob[j]], p);
    prev = std::max(prev, next);
    if (ca[i] <= next) ++i;
    if (cb[j] <= next) ++j;
  }
  return total;
}

double wasserstein_1d(const Projected1D& a, const Projected1D& b, double p) {
  check_p(p);
  if (a.size() != b.size() || a.size() == 0 || !is_uniform(a) || !is_uniform(b)) {
    return wasserstein_1d_quantile(a, b, p);
  }
  validate(a);
  validate(b);
  std::vector<double> sa = a.values, sb = b.values;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) total += cost_power(sa[i] - sb[i], p);
  return total / static_cast<double>(sa.size());
}

std::vector<double> wasserstein_1d_grad(const Projected1D& a, const Projected1D& b, double p) {
  check_p(p);
  if (a.size() != b.size() || a.size() == 0) {
    throw UnsupportedError("wasserstein_1d_grad requires equal-size inputs");
  }
  if (!is_uniform(a) || !is_uniform(b)) throw UnsupportedError("wasserstein_1d_grad requires uniform weights");
  const auto oa = stable_order(a.values);
  const auto ob = stable_order(b.values);
  const double n = static_cast<double>(a.size());
  std::vector<double> grad(a.size(), 0.0);
  for (std::size_t r = 0; r < oa.size(); ++r) {
    const double d = a.values[oa[r]] - b.values[ob[r]];
    if (d == 0.0) continue;
    const double mag = p == 1.0 ? 1.0 : (p == 2.0 ? std::abs(d) : std::pow(std::abs(d), p - 1.0));
    grad[oa[r]] = (p / n) * mag * (d > 0.0 ? 1.0 : -1.0);
  }
  return grad;
}

}  // namespace h2sw
