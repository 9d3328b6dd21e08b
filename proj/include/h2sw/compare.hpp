#pragma once

#include <string>
#include <variant>
#include <vector>

#include "h2sw/exact_ot.hpp"
#include "h2sw/sliced.hpp"

namespace h2sw {

/// Named clouds that all live on the same product space.
struct DatasetCollection {
  std::vector<std::string> names;
  std::vector<JointCloud> clouds;

  void validate() const;
};

/// Exact joint Wasserstein under the mixed per-marginal ground cost.
struct ExactDistance {
  double p = 2.0;
  ExactOptions options;
};

using DistanceSpec = std::variant<EstimatorConfig, ExactDistance>;

std::string describe(const DistanceSpec& distance);

/// Symmetric matrix of pairwise distances (p-th roots). Each unordered pair is
/// evaluated once, MC distances with a seed derived from (seed, i, j).
Matrix cost_matrix(const DatasetCollection& collection, const DistanceSpec& distance);

struct RelativeError {
  double sum = 0.0;   ///< sum over off-diagonal entries
  double mean = 0.0;  ///< sum / (N (N - 1))
};

/// Entrywise |C / max(C) - C_ref / max(C_ref)| aggregated over off-diagonal entries.
RelativeError relative_error(const Matrix& C, const Matrix& C_ref);

/// Lorentz embedding of a class label: exp map at the basepoint of radius * e,
/// where e is the one-hot tangent direction when num_classes <= dim, and the
/// label's point on an evenly spaced circle in the first two tangent axes otherwise.
std::vector<double> embed_label(std::size_t label, std::size_t num_classes, std::size_t dim, double radius = 1.0);

}  // namespace h2sw
