#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "h2sw/geometry.hpp"

// Independent reference computations. Nothing here calls the sorting,
// assignment or simplex code it is used to check.
namespace h2sw::oracle {

/// min over permutations s of (1/n) sum_i |a_i - b_s(i)|^p.
double permutation_w1d(std::span<const double> a, std::span<const double> b, double p);

/// min over permutations s of (1/n) sum_i cost(i, s(i)).
double permutation_assignment(const Matrix& cost);

/// Mixed cost sum_k d_k(x, y)^p computed from first principles
/// (Euclidean norm, arccos of the dot product, arccosh of -<x,y>_L).
double mixed_cost(const JointCloud& mu, std::size_t i, const JointCloud& nu, std::size_t j, double p);

/// Random perturbation field: Gaussian for Euclidean blocks, tangent to the
/// manifold for sphere and Lorentz blocks.
std::vector<Matrix> tangent_field(const JointCloud& cloud, std::uint64_t seed);

/// Moves every point of `cloud` along `field` by t, staying on the manifold
/// (normalised chord for spheres, hyperbolic geodesic for Lorentz).
JointCloud retract(const JointCloud& cloud, const std::vector<Matrix>& field, double t);

/// Central difference (f(retract(+h)) - f(retract(-h))) / 2h.
double directional_fd(const std::function<double(const JointCloud&)>& f, const JointCloud& cloud,
                      const std::vector<Matrix>& field, double h);

/// sum_ik <grad_ik, field_ik>.
double field_inner(const std::vector<Matrix>& grad, const std::vector<Matrix>& field);

}  // namespace h2sw::oracle
