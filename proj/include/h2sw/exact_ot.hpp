#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "h2sw/geometry.hpp"

namespace h2sw {

struct TransportPlan {
  Matrix coupling;
  double cost = 0.0;
};

struct ExactOptions {
  /// Largest n*m the exact solvers will accept.
  std::size_t max_cells = 1'000'000;
};

/// Entry (i, j) = sum_k c_k(x_ik, y_jk)^p with c_k the ground metric of marginal k.
Matrix mixed_cost_matrix(const JointCloud& mu, const JointCloud& nu, double p);

/// Minimum-cost perfect matching on a square matrix; result[i] is the column of row i.
std::vector<std::size_t> solve_assignment(const Matrix& cost);

/// Exact transport LP by network simplex on the n x m transportation graph.
TransportPlan solve_transport_simplex(const Matrix& cost, std::span<const double> a, std::span<const double> b);

/// Optimal plan for the cost matrix: the assignment route for equal-size
/// uniform marginals, network simplex otherwise.
TransportPlan optimal_transport(const Matrix& cost, std::span<const double> a, std::span<const double> b,
                                const ExactOptions& options = {});

/// Throws ValidationError unless the plan's marginals and cost are consistent within `tol`.
void check_plan(const TransportPlan& plan, const Matrix& cost, std::span<const double> a,
                std::span<const double> b, double tol = 1e-7);

struct JointWasserstein {
  double cost = 0.0;  ///< W_p^p under the mixed cost
  TransportPlan plan;
};

JointWasserstein joint_wasserstein(const JointCloud& mu, const JointCloud& nu, double p,
                                   const ExactOptions& options = {});

}  // namespace h2sw
