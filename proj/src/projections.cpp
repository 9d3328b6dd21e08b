#include "h2sw/projections.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "h2sw/error.hpp"

namespace h2sw {
namespace {

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(want) + " entries, got " +
                          std::to_string(got));
  }
}

double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Walks the multi-indices |alpha| = m in ascending lexicographic order,
// calling visit(alpha, index) for each.
template <class Visit>
void for_each_monomial(std::size_t vars, int m, Visit&& visit) {
  std::vector<int> alpha(vars, 0);
  std::size_t index = 0;
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == vars) {
      alpha[var] = remaining;
      visit(alpha, index++);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      alpha[var] = a;
      self(self, var + 1, remaining - a);
    }
  };
  rec(rec, 0, m);
}

double busemann_argument(std::span<const double> x, std::span<const double> theta) {
  // -<x, x0 + theta>_L with x0 = (1, 0, ..., 0)
  double arg = x[0] * (1.0 + theta[0]);
  for (std::size_t i = 1; i < x.size(); ++i) arg -= x[i] * theta[i];
  if (!(arg > 0.0)) throw DomainError("busemann argument is not positive; input is not on the Lorentz model");
  return arg;
}

}  // namespace

double defining_value(const DefiningFunction& g, std::span<const double> x, std::span<const double> theta) {
  if (std::holds_alternative<Linear>(g)) {
    require_size(theta.size(), x.size(), "linear theta");
    return dot(x, theta);
  }
  if (const auto* c = std::get_if<Circular>(&g)) {
    require_size(theta.size(), x.size(), "circular theta");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c->r * theta[i];
      s += d * d;
    }
    const double value = std::sqrt(s);
    assert(value <= norm2(x) + c->r * norm2(theta) + 1e-9 * (1.0 + norm2(x) + c->r));
    return value;
  }
  if (const auto* poly = std::get_if<OddPolynomial>(&g)) {
    require_size(theta.size(), monomial_count(x.size(), poly->m), "polynomial theta");
    double s = 0.0;
    for_each_monomial(x.size(), poly->m, [&](const std::vector<int>& alpha, std::size_t idx) {
      double term = theta[idx];
      for (std::size_t j = 0; j < alpha.size(); ++j) term *= int_pow(x[j], alpha[j]);
      s += term;
    });
    return s;
  }
  require_size(theta.size(), x.size(), "busemann theta");
  if (x.size() < 2) throw ValidationError("busemann needs a Lorentz point with at least 2 coordinates");
  return std::log(busemann_argument(x, theta));
}

void accumulate_defining_gradient(const DefiningFunction& g, std::span<const double> x,
                                  std::span<const double> theta, double scale, std::span<double> out,
                                  SingularPolicy policy) {
  require_size(out.size(), x.size(), "gradient output");
  if (std::holds_alternative<Linear>(g)) {
    require_size(theta.size(), x.size(), "linear theta");
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += scale * theta[i];
    return;
  }
  if (const auto* c = std::get_if<Circular>(&g)) {
    require_size(theta.size(), x.size(), "circular theta");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - c->r * theta[i];
      s += d * d;
    }
    const double len = std::sqrt(s);
    if (len == 0.0) {
      if (policy == SingularPolicy::Lenient) return;
      throw SingularityError("circular defining function is not differentiable at x = r*theta");
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += scale * (x[i] - c->r * theta[i]) / len;
    return;
  }
  if (const auto* poly = std::get_if<OddPolynomial>(&g)) {
    require_size(theta.size(), monomial_count(x.size(), poly->m), "polynomial theta");
    for_each_monomial(x.size(), poly->m, [&](const std::vector<int>& alpha, std::size_t idx) {
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] == 0) continue;
        double term = scale * theta[idx] * alpha[j];
        for (std::size_t q = 0; q < alpha.size(); ++q) term *= int_pow(x[q], q == j ? alpha[q] - 1 : alpha[q]);
        out[j] += term;
      }
    });
    return;
  }
  require_size(theta.size(), x.size(), "busemann theta");
  if (x.size() < 2) throw ValidationError("busemann needs a Lorentz point with at least 2 coordinates");
  const double inv = scale / busemann_argument(x, theta);
  out[0] += inv * (1.0 + theta[0]);
  for (std::size_t i = 1; i < x.size(); ++i) out[i] -= inv * theta[i];
}

std::vector<double> defining_gradient(const DefiningFunction& g, std::span<const double> x,
                                      std::span<const double> theta, SingularPolicy policy) {
  std::vector<double> out(x.size(), 0.0);
  accumulate_defining_gradient(g, x, theta, 1.0, out, policy);
  return out;
}

Projected1D hhrt_project(const JointCloud& cloud, const DirectionSample& dir, std::span<const DefiningFunction> gs) {
  const std::size_t K = cloud.num_blocks();
  if (gs.size() != K || dir.thetas.size() != K || dir.psi.size() != K) {
    throw ConfigError("hhrt_project: cloud, direction and defining functions disagree on the number of marginals");
  }
  Projected1D out;
  out.values.assign(cloud.size(), 0.0);
  out.weights = cloud.weights();
  for (std::size_t k = 0; k < K; ++k) {
    const Matrix& block = cloud.block(k);
    const double psi = dir.psi[k];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      out.values[i] += psi * defining_value(gs[k], block.row(i), dir.thetas[k]);
    }
  }
  return out;
}

Projected1D grt_project(const JointCloud& cloud, std::span<const double> theta, const DefiningFunction& g) {
  Projected1D out;
  out.values.resize(cloud.size());
  out.weights = cloud.weights();
  std::vector<double> joint(cloud.joint_dim());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::size_t off = 0;
    for (const auto& block : cloud.blocks()) {
      const auto r = block.row(i);
      std::copy(r.begin(), r.end(), joint.begin() + static_cast<std::ptrdiff_t>(off));
      off += r.size();
    }
    out.values[i] = defining_value(g, joint, theta);
  }
  return out;
}

}  // namespace h2sw
