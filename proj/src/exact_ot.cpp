#include "h2sw/exact_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "h2sw/error.hpp"

namespace h2sw {
namespace {

bool uniform_weights(std::span<const double> w) {
  const double u = 1.0 / static_cast<double>(w.size());
  return std::all_of(w.begin(), w.end(), [u](double x) { return std::abs(x - u) <= 1e-12 * u; });
}

void check_marginal(std::span<const double> w, const char* name) {
  if (w.empty()) throw ValidationError(std::string(name) + " marginal is empty");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ValidationError(std::string(name) + " marginal has a negative weight");
    total += x;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ValidationError(std::string(name) + " marginal sums to " + std::to_string(total) + ", expected 1");
  }
}

double plan_cost(const Matrix& coupling, const Matrix& cost) {
  double total = 0.0;
  for (std::size_t q = 0; q < cost.data.size(); ++q) total += coupling.data[q] * cost.data[q];
  return total;
}

// Spanning-tree basis of the transportation problem. Rows are nodes [0, n),
// columns are nodes [n, n + m).
class TransportSimplex {
 public:
  TransportSimplex(const Matrix& cost, std::span<const double> a, std::span<const double> b)
      : cost_(cost), n_(cost.rows), m_(cost.cols), flow_(cost.rows, cost.cols, 0.0),
        basic_(cost.rows * cost.cols, false), adj_(n_ + m_), u_(n_), v_(m_) {
    northwest_corner(a, b);
  }

  Matrix solve() {
    double scale = 0.0;
    for (double c : cost_.data) scale = std::max(scale, std::abs(c));
    const double eps = 1e-12 * (1.0 + scale);
    bool bland = false;
    for (;;) {
      compute_potentials();
      const std::size_t entering = bland ? first_negative(eps) : most_negative(eps);
      if (entering == kNone) break;
      const double theta = pivot(entering);
      // Degenerate pivots switch to Bland's rule until progress resumes.
      bland = theta <= 0.0;
    }
    return flow_;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void add_basic(std::size_t cell) {
    basic_[cell] = true;
    adj_[cell / m_].push_back(cell);
    adj_[n_ + cell % m_].push_back(cell);
  }

  void remove_basic(std::size_t cell) {
    basic_[cell] = false;
    for (std::size_t node : {cell / m_, n_ + cell % m_}) {
      auto& edges = adj_[node];
      edges.erase(std::find(edges.begin(), edges.end(), cell));
    }
  }

  std::size_t other_end(std::size_t cell, std::size_t node) const {
    return node < n_ ? n_ + cell % m_ : cell / m_;
  }

  void northwest_corner(std::span<const double> a, std::span<const double> b) {
    std::vector<double> supply(a.begin(), a.end());
    std::vector<double> demand(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    for (;;) {
      const double x = (i + 1 == n_ && j + 1 == m_) ? std::max(0.0, supply[i]) : std::min(supply[i], demand[j]);
      flow_(i, j) = std::max(0.0, x);
      add_basic(i * m_ + j);
      supply[i] -= x;
      demand[j] -= x;
      if (i + 1 == n_ && j + 1 == m_) break;
      if (i + 1 == n_) {
        ++j;
      } else if (j + 1 == m_) {
        ++i;
      } else if (supply[i] <= demand[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  void compute_potentials() {
    std::vector<bool> seen(n_ + m_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    u_[0] = 0.0;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t cell : adj_[node]) {
        const std::size_t next = other_end(cell, node);
        if (seen[next]) continue;
        seen[next] = true;
        const double c = cost_.data[cell];
        if (next < n_) {
          u_[next] = c - v_[cell % m_];
        } else {
          v_[next - n_] = c - u_[cell / m_];
        }
        stack.push_back(next);
      }
    }
  }

  double reduced(std::size_t cell) const { return cost_.data[cell] - u_[cell / m_] - v_[cell % m_]; }

  std::size_t first_negative(double eps) const {
    for (std::size_t cell = 0; cell < basic_.size(); ++cell) {
      if (!basic_[cell] && reduced(cell) < -eps) return cell;
    }
    return kNone;
  }

  std::size_t most_negative(double eps) const {
    std::size_t best = kNone;
    double best_value = -eps;
    for (std::size_t cell = 0; cell < basic_.size(); ++cell) {
      if (basic_[cell]) continue;
      const double r = reduced(cell);
      if (r < best_value) {
        best_value = r;
        best = cell;
      }
    }
    return best;
  }

  // Adds `entering` to the basis, pushes flow around the created cycle and
  // drops the blocking cell. Returns the step length.
  double pivot(std::size_t entering) {
    const std::size_t row = entering / m_;
    const std::size_t col_node = n_ + entering % m_;
    // Tree path from the column node back to the row node.
    std::vector<std::size_t> parent_edge(n_ + m_, kNone);
    std::vector<bool> seen(n_ + m_, false);
    std::vector<std::size_t> stack{col_node};
    seen[col_node] = true;
    while (!stack.empty() && !seen[row]) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t cell : adj_[node]) {
        const std::size_t next = other_end(cell, node);
        if (seen[next]) continue;
        seen[next] = true;
        parent_edge[next] = cell;
        stack.push_back(next);
      }
    }
    // Walking row -> ... -> col_node, the edges alternate -, +, -, ...
    std::vector<std::size_t> path;
    for (std::size_t node = row; node != col_node;) {
      const std::size_t cell = parent_edge[node];
      path.push_back(cell);
      node = other_end(cell, node);
    }
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = kNone;
    for (std::size_t q = 0; q < path.size(); q += 2) {
      const double f = flow_.data[path[q]];
      if (f < theta || (f == theta && path[q] < leaving)) {
        theta = f;
        leaving = path[q];
      }
    }
    for (std::size_t q = 0; q < path.size(); ++q) {
      double& f = flow_.data[path[q]];
      f = q % 2 == 0 ? std::max(0.0, f - theta) : f + theta;
    }
    flow_.data[entering] = theta;
    flow_.data[leaving] = 0.0;
    remove_basic(leaving);
    add_basic(entering);
    return theta;
  }

  const Matrix& cost_;
  std::size_t n_, m_;
  Matrix flow_;
  std::vector<bool> basic_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<double> u_, v_;
};

}  // namespace

Matrix mixed_cost_matrix(const JointCloud& mu, const JointCloud& nu, double p) {
  if (mu.specs() != nu.specs()) throw ConfigError("clouds live on different product spaces");
  if (!(p >= 1.0)) throw DomainError("order p must be >= 1");
  Matrix cost(mu.size(), nu.size(), 0.0);
  for (std::size_t k = 0; k < mu.num_blocks(); ++k) {
    const auto& spec = mu.specs()[k];
    for (std::size_t i = 0; i < mu.size(); ++i) {
      for (std::size_t j = 0; j < nu.size(); ++j) {
        const double d = ground_distance(spec, mu.block(k).row(i), nu.block(k).row(j));
        cost(i, j) += p == 1.0 ? d : (p == 2.0 ? d * d : std::pow(d, p));
      }
    }
  }
  return cost;
}

std::vector<std::size_t> solve_assignment(const Matrix& cost) {
  if (cost.rows != cost.cols) throw UnsupportedError("assignment needs a square cost matrix");
  const std::size_t n = cost.rows;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting paths with row/column potentials, 1-based with a
  // virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

TransportPlan solve_transport_simplex(const Matrix& cost, std::span<const double> a, std::span<const double> b) {
  if (a.size() != cost.rows || b.size() != cost.cols) throw ValidationError("marginals do not match the cost matrix");
  check_marginal(a, "source");
  check_marginal(b, "target");
  TransportSimplex simplex(cost, a, b);
  TransportPlan plan;
  plan.coupling = simplex.solve();
  plan.cost = plan_cost(plan.coupling, cost);
  return plan;
}

TransportPlan optimal_transport(const Matrix& cost, std::span<const double> a, std::span<const double> b,
                                const ExactOptions& options) {
  if (cost.rows * cost.cols > options.max_cells) {
    throw ResourceError("exact transport of size " + std::to_string(cost.rows) + "x" + std::to_string(cost.cols) +
                        " exceeds the guard of " + std::to_string(options.max_cells) + " cells");
  }
  if (a.size() != cost.rows || b.size() != cost.cols) throw ValidationError("marginals do not match the cost matrix");
  check_marginal(a, "source");
  check_marginal(b, "target");
  if (cost.rows == cost.cols && uniform_weights(a) && uniform_weights(b)) {
    const auto match = solve_assignment(cost);
    const double w = 1.0 / static_cast<double>(cost.rows);
    TransportPlan plan;
    plan.coupling = Matrix(cost.rows, cost.cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < cost.rows; ++i) {
      plan.coupling(i, match[i]) = w;
      total += cost(i, match[i]);
    }
    plan.cost = total * w;
    return plan;
  }
  return solve_transport_simplex(cost, a, b);
}

void check_plan(const TransportPlan& plan, const Matrix& cost, std::span<const double> a,
                std::span<const double> b, double tol) {
  const Matrix& pi = plan.coupling;
  if (pi.rows != a.size() || pi.cols != b.size()) throw ValidationError("plan has the wrong shape");
  for (double x : pi.data) {
    if (x < -tol) throw ValidationError("plan has a negative entry");
  }
  for (std::size_t i = 0; i < pi.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < pi.cols; ++j) s += pi(i, j);
    if (std::abs(s - a[i]) > tol) throw ValidationError("plan row " + std::to_string(i) + " violates the marginal");
  }
  for (std::size_t j = 0; j < pi.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < pi.rows; ++i) s += pi(i, j);
    if (std::abs(s - b[j]) > tol) throw ValidationError("plan column " + std::to_string(j) + " violates the marginal");
  }
  if (std::abs(plan_cost(pi, cost) - plan.cost) > tol) throw ValidationError("plan cost is inconsistent");
}

JointWasserstein joint_wasserstein(const JointCloud& mu, const JointCloud& nu, double p, const ExactOptions& options) {
  if (mu.size() * nu.size() > options.max_cells) {
    throw ResourceError("exact transport of size " + std::to_string(mu.size()) + "x" + std::to_string(nu.size()) +
                        " exceeds the guard of " + std::to_string(options.max_cells) + " cells");
  }
  const Matrix cost = mixed_cost_matrix(mu, nu, p);
  JointWasserstein result;
  result.plan = optimal_transport(cost, mu.weights(), nu.weights(), options);
  result.cost = result.plan.cost;
  return result;
}

}  // namespace h2sw
