#pragma once

#include <cstddef>
#include <vector>

namespace h2sw {

/// A one-dimensional discrete distribution: atoms and their weights.
struct Projected1D {
  std::vector<double> values;
  std::vector<double> weights;

  std::size_t size() const { return values.size(); }

  /// Equal-weight distribution over `values`.
  static Projected1D uniform(std::vector<double> values);
};

/// Throws ValidationError unless weights are nonnegative, sum to 1, and n >= 1.
void validate(const Projected1D& dist);

/// Left-continuous generalised inverse CDF: smallest v with F(v) >= z.
double quantile(const Projected1D& dist, double z);

/// W_p^p between two 1D distributions under c(x, y) = |x - y|.
/// Equal-size uniform inputs take the sorted-matching fast path; everything
/// else integrates the quantile functions over their merged breakpoints.
double wasserstein_1d(const Projected1D& a, const Projected1D& b, double p);

/// Quantile-integral path only. Exposed so both routes can be compared.
double wasserstein_1d_quantile(const Projected1D& a, const Projected1D& b, double p);

/// d W_p^p / d a.values for equal-size uniform inputs.
std::vector<double> wasserstein_1d_grad(const Projected1D& a, const Projected1D& b, double p);

/// Permutation sorting `values` ascending, ties broken by original index.
std::vector<std::size_t> stable_order(const std::vector<double>& values);

}  // namespace h2sw
