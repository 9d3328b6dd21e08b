#include "h2sw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "h2sw/error.hpp"

namespace h2sw::oracle {

double permutation_w1d(std::span<const double> a, std::span<const double> b, double p) {
  if (a.size() != b.size() || a.empty()) throw ValidationError("permutation oracle needs equal non-empty inputs");
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[perm[i]]), p);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(a.size());
}

double permutation_assignment(const Matrix& cost) {
  if (cost.rows != cost.cols || cost.rows == 0) throw ValidationError("permutation oracle needs a square matrix");
  std::vector<std::size_t> perm(cost.rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < cost.rows; ++i) s += cost(i, perm[i]);
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(cost.rows);
}

double mixed_cost(const JointCloud& mu, std::size_t i, const JointCloud& nu, std::size_t j, double p) {
  double total = 0.0;
  for (std::size_t k = 0; k < mu.num_blocks(); ++k) {
    const auto x = mu.block(k).row(i);
    const auto y = nu.block(k).row(j);
    double d = 0.0;
    switch (mu.specs()[k].kind) {
      case SpaceKind::Euclidean: {
        double s = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) s += (x[q] - y[q]) * (x[q] - y[q]);
        d = std::sqrt(s);
        break;
      }
      case SpaceKind::Sphere: {
        double s = 0.0;
        for (std::size_t q = 0; q < x.size(); ++q) s += x[q] * y[q];
        d = std::acos(std::max(-1.0, std::min(1.0, s)));
        break;
      }
      case SpaceKind::Lorentz: {
        double s = x[0] * y[0];
        for (std::size_t q = 1; q < x.size(); ++q) s -= x[q] * y[q];
        d = std::acosh(std::max(1.0, s));
        break;
      }
    }
    total += std::pow(d, p);
  }
  return total;
}

std::vector<Matrix> tangent_field(const JointCloud& cloud, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> field;
  for (std::size_t k = 0; k < cloud.num_blocks(); ++k) {
    const auto& block = cloud.block(k);
    Matrix v(block.rows, block.cols);
    for (auto& x : v.data) x = gauss(rng);
    for (std::size_t i = 0; i < block.rows; ++i) {
      auto vi = v.row(i);
      const auto xi = block.row(i);
      if (cloud.specs()[k].kind == SpaceKind::Sphere) {
        double s = 0.0;
        for (std::size_t q = 0; q < xi.size(); ++q) s += vi[q] * xi[q];
        for (std::size_t q = 0; q < xi.size(); ++q) vi[q] -= s * xi[q];
      } else if (cloud.specs()[k].kind == SpaceKind::Lorentz) {
        // v + <x, v>_L x is Lorentz-orthogonal to x when <x, x>_L = -1.
        double s = -xi[0] * vi[0];
        for (std::size_t q = 1; q < xi.size(); ++q) s += xi[q] * vi[q];
        for (std::size_t q = 0; q < xi.size(); ++q) vi[q] += s * xi[q];
      }
    }
    field.push_back(std::move(v));
  }
  return field;
}

JointCloud retract(const JointCloud& cloud, const std::vector<Matrix>& field, double t) {
  std::vector<Matrix> blocks = cloud.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto kind = cloud.specs()[k].kind;
    for (std::size_t i = 0; i < blocks[k].rows; ++i) {
      auto x = blocks[k].row(i);
      const auto v = field[k].row(i);
      if (kind == SpaceKind::Lorentz) {
        double vv = -v[0] * v[0];
        for (std::size_t q = 1; q < v.size(); ++q) vv += v[q] * v[q];
        const double speed = std::sqrt(std::max(0.0, vv));
        const double a = std::cosh(t * speed);
        const double b = speed > 0.0 ? std::sinh(t * speed) / speed : t;
        for (std::size_t q = 0; q < x.size(); ++q) x[q] = a * x[q] + b * v[q];
        continue;
      }
      for (std::size_t q = 0; q < x.size(); ++q) x[q] += t * v[q];
      if (kind == SpaceKind::Sphere) {
        double s = 0.0;
        for (double c : x) s += c * c;
        s = std::sqrt(s);
        for (auto& c : x) c /= s;
      }
    }
  }
  return JointCloud(std::move(blocks), cloud.specs(), cloud.weights());
}

double directional_fd(const std::function<double(const JointCloud&)>& f, const JointCloud& cloud,
                      const std::vector<Matrix>& field, double h) {
  return (f(retract(cloud, field, h)) - f(retract(cloud, field, -h))) / (2.0 * h);
}

double field_inner(const std::vector<Matrix>& grad, const std::vector<Matrix>& field) {
  double s = 0.0;
  for (std::size_t k = 0; k < grad.size(); ++k) {
    for (std::size_t q = 0; q < grad[k].data.size(); ++q) s += grad[k].data[q] * field[k].data[q];
  }
  return s;
}

}  // namespace h2sw::oracle
