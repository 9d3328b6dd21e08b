#include "h2sw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "h2sw/error.hpp"

namespace h2sw {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Euclidean:
      return "euclidean";
    case SpaceKind::Sphere:
      return "sphere";
    case SpaceKind::Lorentz:
      return "lorentz";
  }
  return "unknown";
}

std::string to_string(const SpaceSpec& spec) { return to_string(spec.kind) + "," + std::to_string(spec.dim); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void validate_point(const SpaceSpec& spec, std::span<const double> x) {
  if (x.size() != spec.ambient()) {
    throw ValidationError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                          std::to_string(spec.ambient()) + " for " + to_string(spec));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("non-finite coordinate");
  }
  switch (spec.kind) {
    case SpaceKind::Euclidean:
      break;
    case SpaceKind::Sphere:
      if (std::abs(norm2(x) - 1.0) > kSphereTolerance) {
        throw ValidationError("sphere point has norm " + std::to_string(norm2(x)));
      }
      break;
    case SpaceKind::Lorentz:
      if (std::abs(lorentz_inner(x, x) + 1.0) > kLorentzTolerance || !(x[0] > 0.0)) {
        throw ValidationError("point is not on the Lorentz model (<x,x>_L = " +
                              std::to_string(lorentz_inner(x, x)) + ")");
      }
      break;
  }
}

JointCloud::JointCloud(std::vector<Matrix> blocks, std::vector<SpaceSpec> specs, std::vector<double> weights)
    : blocks_(std::move(blocks)), specs_(std::move(specs)), weights_(std::move(weights)) {
  if (specs_.empty()) throw ValidationError("cloud needs at least one block");
  if (blocks_.size() != specs_.size()) throw ValidationError("block/spec count mismatch");
  const std::size_t n = weights_.size();
  if (n == 0) throw ValidationError("cloud needs at least one support");
  for (std::size_t k = 0; k < specs_.size(); ++k) {
    if (specs_[k].dim == 0) throw ValidationError("space dimension must be >= 1");
    if (blocks_[k].rows != n) throw ValidationError("block " + std::to_string(k) + " has wrong row count");
    if (blocks_[k].cols != specs_[k].ambient()) {
      throw ValidationError("block " + std::to_string(k) + " has wrong column count");
    }
    for (std::size_t i = 0; i < n; ++i) validate_point(specs_[k], blocks_[k].row(i));
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ValidationError("weights sum to " + std::to_string(total) + ", expected 1");
  }
}

JointCloud JointCloud::uniform(std::vector<Matrix> blocks, std::vector<SpaceSpec> specs) {
  const std::size_t n = blocks.empty() ? 0 : blocks.front().rows;
  std::vector<double> w(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return JointCloud(std::move(blocks), std::move(specs), std::move(w));
}

bool JointCloud::has_uniform_weights() const {
  const double u = 1.0 / static_cast<double>(size());
  return std::all_of(weights_.begin(), weights_.end(), [u](double w) { return std::abs(w - u) <= 1e-12 * u; });
}

std::size_t JointCloud::joint_dim() const {
  std::size_t d = 0;
  for (const auto& s : specs_) d += s.ambient();
  return d;
}

std::vector<double> JointCloud::joint_point(std::size_t i) const {
  std::vector<double> out;
  out.reserve(joint_dim());
  for (const auto& b : blocks_) {
    const auto r = b.row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

JointCloud JointCloud::marginal(std::size_t k) const { return JointCloud({blocks_.at(k)}, {specs_.at(k)}, weights_); }

std::vector<double> sample_unit_sphere(std::size_t dim, StreamRng& rng) {
  if (dim == 0) throw DomainError("sample_unit_sphere: dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(dim);
  for (;;) {
    for (auto& x : v) x = gauss(rng);
    const double n = norm2(v);
    if (n > 1e-300) {
      for (auto& x : v) x /= n;
      return v;
    }
  }
}

std::vector<double> sample_parameter(const SpaceSpec& spec, const DefiningFunction& g, StreamRng& rng) {
  const std::size_t len = parameter_dim(g, spec);
  if (std::holds_alternative<BusemannLorentz>(g)) {
    // theta in T_{x0} L^d intersected with the unit sphere: (0, u), u on S^{d-1}.
    const auto u = sample_unit_sphere(spec.dim, rng);
    std::vector<double> theta(len, 0.0);
    std::copy(u.begin(), u.end(), theta.begin() + 1);
    return theta;
  }
  return sample_unit_sphere(len, rng);
}

DirectionSample sample_direction(std::span<const SpaceSpec> specs, std::span<const DefiningFunction> gs,
                                 StreamRng& rng) {
  if (specs.empty()) throw ConfigError("sample_direction: need at least one marginal");
  if (specs.size() != gs.size()) throw ConfigError("sample_direction: one defining function per marginal");
  DirectionSample dir;
  dir.thetas.reserve(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) dir.thetas.push_back(sample_parameter(specs[k], gs[k], rng));
  dir.psi = specs.size() == 1 ? std::vector<double>{1.0} : sample_unit_sphere(specs.size(), rng);
  return dir;
}

void validate_direction(const DirectionSample& dir, std::span<const SpaceSpec> specs,
                        std::span<const DefiningFunction> gs) {
  if (dir.thetas.size() != specs.size() || dir.psi.size() != specs.size() || gs.size() != specs.size()) {
    throw ValidationError("direction arity does not match the number of marginals");
  }
  if (std::abs(norm2(dir.psi) - 1.0) > 1e-12) throw ValidationError("psi is not a unit vector");
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto& theta = dir.thetas[k];
    if (theta.size() != parameter_dim(gs[k], specs[k])) throw ValidationError("theta has wrong length");
    if (std::abs(norm2(theta) - 1.0) > 1e-12) throw ValidationError("theta is not a unit vector");
    if (std::holds_alternative<BusemannLorentz>(gs[k]) && theta[0] != 0.0) {
      throw ValidationError("busemann direction must be tangent at the basepoint");
    }
  }
}

double great_circle_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ValidationError("great_circle_distance: dimension mismatch");
  if (std::abs(norm2(u) - 1.0) > 1e-6 || std::abs(norm2(v) - 1.0) > 1e-6) {
    throw ValidationError("great_circle_distance: inputs must be unit vectors");
  }
  // Chord form: accurate near 0 and pi, and exactly 0 for u = v.
  double diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    diff += (u[i] - v[i]) * (u[i] - v[i]);
    sum += (u[i] + v[i]) * (u[i] + v[i]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

double lorentz_inner(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw ValidationError("lorentz_inner: dimension mismatch");
  double s = -x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double lorentz_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("lorentz_distance: dimension mismatch");
  const SpaceSpec spec = SpaceSpec::lorentz(x.size() - 1);
  validate_point(spec, x);
  validate_point(spec, y);
  // cosh d = 1 + q / 2 with q the Minkowski square of x - y, so d = 2 asinh(sqrt(q) / 2).
  double q = -(x[0] - y[0]) * (x[0] - y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) q += (x[i] - y[i]) * (x[i] - y[i]);
  return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, q)));
}

std::vector<double> lorentz_basepoint(std::size_t d) {
  std::vector<double> x(d + 1, 0.0);
  x[0] = 1.0;
  return x;
}

std::vector<double> lorentz_exp_at_basepoint(std::span<const double> v) {
  const double r = norm2(v);
  std::vector<double> x(v.size() + 1, 0.0);
  x[0] = std::cosh(r);
  if (r > 0.0) {
    const double s = std::sinh(r) / r;
    for (std::size_t i = 0; i < v.size(); ++i) x[i + 1] = s * v[i];
  }
  return x;
}

double ground_distance(const SpaceSpec& spec, std::span<const double> x, std::span<const double> y) {
  switch (spec.kind) {
    case SpaceKind::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
      return std::sqrt(s);
    }
    case SpaceKind::Sphere:
      return great_circle_distance(x, y);
    case SpaceKind::Lorentz:
      return lorentz_distance(x, y);
  }
  return 0.0;
}

}  // namespace h2sw
