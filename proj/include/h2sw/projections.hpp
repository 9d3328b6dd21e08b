#pragma once

#include <span>
#include <vector>

#include "h2sw/defining_function.hpp"
#include "h2sw/geometry.hpp"
#include "h2sw/ot1d.hpp"

namespace h2sw {

/// What defining_gradient does at a non-differentiable point.
enum class SingularPolicy {
  Throw,    ///< raise SingularityError
  Lenient,  ///< return the zero subgradient
};

double defining_value(const DefiningFunction& g, std::span<const double> x, std::span<const double> theta);

std::vector<double> defining_gradient(const DefiningFunction& g, std::span<const double> x,
                                      std::span<const double> theta,
                                      SingularPolicy policy = SingularPolicy::Throw);

/// out += scale * grad_x g(x, theta). Same checks as defining_gradient.
void accumulate_defining_gradient(const DefiningFunction& g, std::span<const double> x,
                                  std::span<const double> theta, double scale, std::span<double> out,
                                  SingularPolicy policy = SingularPolicy::Throw);

/// Discrete hierarchical hybrid Radon transform: t_i = sum_k psi_k g_k(x_ik, theta_k).
Projected1D hhrt_project(const JointCloud& cloud, const DirectionSample& dir, std::span<const DefiningFunction> gs);

/// Generalised Radon transform of the concatenated joint coordinates: t_i = g(x_i, theta).
Projected1D grt_project(const JointCloud& cloud, std::span<const double> theta, const DefiningFunction& g);

}  // namespace h2sw
