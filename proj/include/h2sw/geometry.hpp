#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "h2sw/defining_function.hpp"
#include "h2sw/random.hpp"

namespace h2sw {

enum class SpaceKind { Euclidean, Sphere, Lorentz };

/// Marginal space descriptor. For Sphere, `dim` is the ambient dimension
/// (S^{dim-1} in R^dim). For Lorentz, `dim` is the intrinsic dimension and
/// points live in R^{dim+1}.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Euclidean;
  std::size_t dim = 1;

  static SpaceSpec euclidean(std::size_t d) { return {SpaceKind::Euclidean, d}; }
  static SpaceSpec sphere(std::size_t d) { return {SpaceKind::Sphere, d}; }
  static SpaceSpec lorentz(std::size_t d) { return {SpaceKind::Lorentz, d}; }

  /// Number of stored coordinates per point.
  std::size_t ambient() const { return kind == SpaceKind::Lorentz ? dim + 1 : dim; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

std::string to_string(SpaceKind kind);
std::string to_string(const SpaceSpec& spec);

inline constexpr double kSphereTolerance = 1e-9;
inline constexpr double kLorentzTolerance = 1e-6;
inline constexpr double kWeightTolerance = 1e-9;

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Discrete joint distribution: n supports, each a tuple of K coordinate blocks.
/// Validated on construction and immutable afterwards.
class JointCloud {
 public:
  JointCloud(std::vector<Matrix> blocks, std::vector<SpaceSpec> specs, std::vector<double> weights);

  /// Uniform weights 1/n.
  static JointCloud uniform(std::vector<Matrix> blocks, std::vector<SpaceSpec> specs);

  std::size_t size() const { return weights_.size(); }
  std::size_t num_blocks() const { return specs_.size(); }

  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(std::size_t k) const { return blocks_[k]; }
  const std::vector<SpaceSpec>& specs() const { return specs_; }
  const std::vector<double>& weights() const { return weights_; }

  /// True when every weight equals 1/n to within 1e-12 relative.
  bool has_uniform_weights() const;

  /// Total stored coordinates per support (sum of block ambients).
  std::size_t joint_dim() const;

  /// Concatenation of support i's blocks.
  std::vector<double> joint_point(std::size_t i) const;

  /// A new cloud with block k alone.
  JointCloud marginal(std::size_t k) const;

 private:
  std::vector<Matrix> blocks_;
  std::vector<SpaceSpec> specs_;
  std::vector<double> weights_;
};

void validate_point(const SpaceSpec& spec, std::span<const double> x);

/// One slice of the hierarchical transform: a direction per marginal plus
/// mixing weights on the unit (K-1)-sphere.
struct DirectionSample {
  std::vector<std::vector<double>> thetas;
  std::vector<double> psi;
};

/// Checks ||psi|| = 1 and each theta against the parameter constraint of its function.
void validate_direction(const DirectionSample& dir, std::span<const SpaceSpec> specs,
                        std::span<const DefiningFunction> gs);

/// Uniform draw on S^{dim-1} via normalised Gaussians.
std::vector<double> sample_unit_sphere(std::size_t dim, StreamRng& rng);

/// Draws theta_1..theta_K (in marginal order) and then psi. K = 1 fixes psi = (1).
DirectionSample sample_direction(std::span<const SpaceSpec> specs, std::span<const DefiningFunction> gs,
                                 StreamRng& rng);

/// Draws the parameter of a single defining function on `spec`.
std::vector<double> sample_parameter(const SpaceSpec& spec, const DefiningFunction& g, StreamRng& rng);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

double great_circle_distance(std::span<const double> u, std::span<const double> v);

double lorentz_inner(std::span<const double> x, std::span<const double> y);
double lorentz_distance(std::span<const double> x, std::span<const double> y);

/// (1, 0, ..., 0) in R^{d+1}.
std::vector<double> lorentz_basepoint(std::size_t d);

/// Exponential map of the tangent vector (0, v) at the basepoint.
std::vector<double> lorentz_exp_at_basepoint(std::span<const double> v);

/// Ground metric of the space (Euclidean norm, great circle, Lorentz geodesic).
double ground_distance(const SpaceSpec& spec, std::span<const double> x, std::span<const double> y);

}  // namespace h2sw
