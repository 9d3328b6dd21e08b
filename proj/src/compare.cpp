#include "h2sw/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "h2sw/error.hpp"

namespace h2sw {

void DatasetCollection::validate() const {
  if (names.size() != clouds.size()) throw ValidationError("dataset names and clouds differ in count");
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    throw ValidationError("dataset names must be unique");
  }
  for (const auto& c : clouds) {
    if (c.specs() != clouds.front().specs()) throw ConfigError("datasets live on different product spaces");
  }
}

std::string describe(const DistanceSpec& distance) {
  if (const auto* exact = std::get_if<ExactDistance>(&distance)) {
    return "exact(p=" + std::to_string(exact->p) + ")";
  }
  const auto& cfg = std::get<EstimatorConfig>(distance);
  return to_string(cfg.family) + "(L=" + std::to_string(cfg.L) + ")";
}

Matrix cost_matrix(const DatasetCollection& collection, const DistanceSpec& distance) {
  collection.validate();
  const std::size_t N = collection.clouds.size();
  if (N < 2) throw ConfigError("cost_matrix needs at least two datasets");
  Matrix C(N, N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const auto& a = collection.clouds[i];
      const auto& b = collection.clouds[j];
      double d = 0.0;
      if (const auto* exact = std::get_if<ExactDistance>(&distance)) {
        d = std::pow(joint_wasserstein(a, b, exact->p, exact->options).cost, 1.0 / exact->p);
      } else {
        EstimatorConfig cfg = std::get<EstimatorConfig>(distance);
        cfg.seed = derive_seed(cfg.seed, i * N + j);
        d = sliced_distance(a, b, cfg);
      }
      C(i, j) = d;
      C(j, i) = d;
    }
  }
  return C;
}

RelativeError relative_error(const Matrix& C, const Matrix& C_ref) {
  if (C.rows != C.cols || C.rows != C_ref.rows || C.cols != C_ref.cols) {
    throw ValidationError("relative_error: matrices must be square and of equal shape");
  }
  const double max_c = *std::max_element(C.data.begin(), C.data.end());
  const double max_ref = *std::max_element(C_ref.data.begin(), C_ref.data.end());
  if (!(max_c > 0.0) || !(max_ref > 0.0)) throw DomainError("relative_error: matrix maximum must be positive");
  RelativeError err;
  for (std::size_t i = 0; i < C.rows; ++i) {
    for (std::size_t j = 0; j < C.cols; ++j) {
      if (i != j) err.sum += std::abs(C(i, j) / max_c - C_ref(i, j) / max_ref);
    }
  }
  const std::size_t off = C.rows * (C.rows - 1);
  err.mean = off == 0 ? 0.0 : err.sum / static_cast<double>(off);
  return err;
}

std::vector<double> embed_label(std::size_t label, std::size_t num_classes, std::size_t dim, double radius) {
  if (dim == 0 || num_classes == 0 || label >= num_classes) throw ConfigError("embed_label: invalid label or dimension");
  std::vector<double> tangent(dim, 0.0);
  if (num_classes <= dim) {
    tangent[label] = radius;
  } else {
    if (dim < 2) throw ConfigError("embed_label: more classes than tangent axes needs dim >= 2");
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(label) / static_cast<double>(num_classes);
    tangent[0] = radius * std::cos(angle);
    tangent[1] = radius * std::sin(angle);
  }
  return lorentz_exp_at_basepoint(tangent);
}

}  // namespace h2sw
