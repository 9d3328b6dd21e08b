#include "h2sw/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "h2sw/error.hpp"

namespace h2sw::synthetic {

JointCloud random_cloud(const std::vector<SpaceSpec>& specs, std::size_t n, std::uint64_t seed, bool random_weights,
                        double scale) {
  StreamRng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> blocks;
  for (const auto& spec : specs) {
    Matrix b(n, spec.ambient());
    for (std::size_t i = 0; i < n; ++i) {
      auto row = b.row(i);
      switch (spec.kind) {
        case SpaceKind::Euclidean:
          for (auto& v : row) v = scale * gauss(rng);
          break;
        case SpaceKind::Sphere: {
          const auto u = sample_unit_sphere(spec.dim, rng);
          std::copy(u.begin(), u.end(), row.begin());
          break;
        }
        case SpaceKind::Lorentz: {
          std::vector<double> t(spec.dim);
          for (auto& v : t) v = 0.5 * scale * gauss(rng);
          const auto x = lorentz_exp_at_basepoint(t);
          std::copy(x.begin(), x.end(), row.begin());
          break;
        }
      }
    }
    blocks.push_back(std::move(b));
  }
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  if (random_weights) {
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double total = 0.0;
    for (auto& x : w) total += (x = unif(rng));
    for (auto& x : w) x /= total;
  }
  return JointCloud(std::move(blocks), specs, std::move(w));
}

JointCloud sphere_with_normals(std::size_t n) {
  Matrix pts(n, 3);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts(i, 0) = r * std::cos(phi);
    pts(i, 1) = r * std::sin(phi);
    pts(i, 2) = z;
    const double len = norm2(pts.row(i));
    for (auto& v : pts.row(i)) v /= len;
  }
  Matrix normals = pts;
  return JointCloud::uniform({std::move(pts), std::move(normals)}, {SpaceSpec::euclidean(3), SpaceSpec::sphere(3)});
}

JointCloud cube_with_normals(std::size_t n, double half_width, std::uint64_t seed) {
  StreamRng rng(seed);
  std::uniform_real_distribution<double> unif(-half_width, half_width);
  Matrix pts(n, 3), normals(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t face = i % 6;
    const std::size_t axis = face / 2;
    const double sign = face % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t c = 0; c < 3; ++c) pts(i, c) = c == axis ? sign * half_width : unif(rng);
    normals(i, axis) = sign;
  }
  return JointCloud::uniform({std::move(pts), std::move(normals)}, {SpaceSpec::euclidean(3), SpaceSpec::sphere(3)});
}

JointCloud gaussian_on_r3_s2(std::size_t n, const std::vector<double>& mean, std::uint64_t seed) {
  if (mean.size() != 6) throw ConfigError("gaussian_on_r3_s2 needs a 6-dimensional mean");
  StreamRng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, 3), b(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) a(i, c) = mean[c] + gauss(rng);
    double len = 0.0;
    do {
      for (std::size_t c = 0; c < 3; ++c) b(i, c) = mean[3 + c] + gauss(rng);
      len = norm2(b.row(i));
    } while (len < 1e-12);
    for (auto& v : b.row(i)) v /= len;
  }
  return JointCloud::uniform({std::move(a), std::move(b)}, {SpaceSpec::euclidean(3), SpaceSpec::sphere(3)});
}

JointCloud cluster_dataset(const ClusterDatasetOptions& options, const std::vector<double>& offset, double class_spread,
                           std::uint64_t seed) {
  if (offset.size() != options.feature_dim) throw ConfigError("cluster_dataset: offset has the wrong dimension");
  StreamRng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix features(options.n, options.feature_dim);
  Matrix labels(options.n, options.label_dim + 1);
  for (std::size_t i = 0; i < options.n; ++i) {
    const std::size_t c = i % options.num_classes;
    for (std::size_t q = 0; q < options.feature_dim; ++q) {
      const double mean = offset[q] + (q == c % options.feature_dim ? class_spread : 0.0);
      features(i, q) = mean + options.noise * gauss(rng);
    }
    const auto y = embed_label(c, options.num_classes, options.label_dim, options.label_radius);
    std::copy(y.begin(), y.end(), labels.row(i).begin());
  }
  return JointCloud::uniform({std::move(features), std::move(labels)},
                             {SpaceSpec::euclidean(options.feature_dim), SpaceSpec::lorentz(options.label_dim)});
}

DatasetCollection five_cluster_datasets(std::size_t n, std::uint64_t seed) {
  // Offsets along a fixed diagonal with uneven gaps, so every dataset has a
  // distinct nearest neighbour.
  const double positions[5] = {0.0, 1.0, 2.6, 4.8, 7.6};
  const double spreads[5] = {2.0, 2.2, 1.6, 2.6, 1.8};
  const std::size_t classes[5] = {3, 3, 4, 3, 5};
  DatasetCollection out;
  for (std::size_t s = 0; s < 5; ++s) {
    ClusterDatasetOptions opt;
    opt.n = n;
    opt.num_classes = classes[s];
    opt.label_radius = 0.8 + 0.15 * static_cast<double>(s);
    std::vector<double> offset(opt.feature_dim);
    for (std::size_t q = 0; q < offset.size(); ++q) offset[q] = positions[s] * (q % 2 == 0 ? 1.0 : 0.5);
    out.names.push_back("set" + std::to_string(s));
    out.clouds.push_back(cluster_dataset(opt, offset, spreads[s], derive_seed(seed, s)));
  }
  return out;
}

}  // namespace h2sw::synthetic
