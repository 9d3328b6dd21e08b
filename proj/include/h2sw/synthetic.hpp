#pragma once

#include <cstdint>
#include <vector>

#include "h2sw/compare.hpp"
#include "h2sw/geometry.hpp"

namespace h2sw::synthetic {

/// Random cloud on `specs`: Gaussian Euclidean blocks (times `scale`), uniform
/// sphere blocks, Lorentz blocks from Gaussian tangent vectors at the basepoint.
/// Weights are uniform unless `random_weights`.
JointCloud random_cloud(const std::vector<SpaceSpec>& specs, std::size_t n, std::uint64_t seed,
                        bool random_weights = false, double scale = 1.0);

/// Fibonacci-lattice points on the unit sphere in R^3 paired with their outward normals.
JointCloud sphere_with_normals(std::size_t n);

/// Points on the surface of the cube [-h, h]^3 with outward face normals.
JointCloud cube_with_normals(std::size_t n, double half_width, std::uint64_t seed);

/// Gaussian in R^6 split as (x1, x2) and pushed to R^3 x S^2 by normalising x2.
JointCloud gaussian_on_r3_s2(std::size_t n, const std::vector<double>& mean, std::uint64_t seed);

struct ClusterDatasetOptions {
  std::size_t feature_dim = 5;
  std::size_t label_dim = 2;
  std::size_t num_classes = 3;
  std::size_t n = 200;
  double noise = 0.5;
  double label_radius = 1.0;
};

/// Feature/label dataset on R^feature_dim x L^label_dim. Class c has feature
/// mean offset + class_spread * e_{c mod d}, and its label is embedded on the Lorentz model.
JointCloud cluster_dataset(const ClusterDatasetOptions& options, const std::vector<double>& offset,
                           double class_spread, std::uint64_t seed);

/// Five cluster datasets with well separated, unevenly spaced offsets.
DatasetCollection five_cluster_datasets(std::size_t n, std::uint64_t seed);

}  // namespace h2sw::synthetic
