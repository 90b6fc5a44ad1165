#include "riesz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "riesz/core.hpp"
#include "riesz/detail/kdtree.hpp"
#include "riesz/detail/rng.hpp"

namespace riesz {

namespace {

Eigen::VectorXd apply_map(const IfsMap& map, int n, const Eigen::VectorXd& x) {
  Eigen::Map<const Eigen::MatrixXd> u_t(map.rotation.data(), n, n);  // row-major data: this is U^T
  Eigen::VectorXd y = map.ratio * (u_t.transpose() * x);
  for (int k = 0; k < n; ++k) y[k] += map.offset[static_cast<std::size_t>(k)];
  return y;
}

// Fixed point of x -> L U x + b, i.e. (I - L U) x = b.
Eigen::VectorXd map_fixed_point(const IfsMap& map, int n) {
  Eigen::Map<const Eigen::MatrixXd> u_t(map.rotation.data(), n, n);
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - map.ratio * u_t.transpose();
  Eigen::Map<const Eigen::VectorXd> b(map.offset.data(), n);
  return a.partialPivLu().solve(b);
}

}  // namespace

PointCloud sample_sphere(int d, int n, std::size_t N, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_sphere: d must be >= 1");
  if (n < d + 1) throw std::invalid_argument("sample_sphere: need n >= d+1 to embed S^d");
  if (N < 2) throw std::invalid_argument("sample_sphere: need at least two points");

  PointCloud cloud;
  cloud.n = n;
  cloud.d = d;
  cloud.seed = seed;
  {
    std::ostringstream label;
    label << "sphere(d=" << d << ",N=" << N << ")";
    cloud.label = label.str();
  }
  const double area = unit_sphere_area(static_cast<double>(d) + 1.0);  // |S^d|
  const double w = area / static_cast<double>(N);
  cloud.coords.assign(N * static_cast<std::size_t>(n), 0.0);
  cloud.weights.assign(N, w);

  if (d == 1) {
    // Deterministic lattice: no sampling variance on the tightest tests.
    for (std::size_t i = 0; i < N; ++i) {
      const double theta = 2.0 * detail::kPi * static_cast<double>(i) / static_cast<double>(N);
      cloud.coords[i * static_cast<std::size_t>(n)] = std::cos(theta);
      cloud.coords[i * static_cast<std::size_t>(n) + 1] = std::sin(theta);
    }
    return cloud;
  }

  detail::SplitMix64 rng(seed);
  const int m = d + 1;
  for (std::size_t i = 0; i < N; ++i) {
    double norm2 = 0.0;
    std::vector<double> g(static_cast<std::size_t>(m));
    do {
      norm2 = 0.0;
      for (int k = 0; k < m; ++k) {
        g[static_cast<std::size_t>(k)] = rng.normal();
        norm2 += g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < m; ++k)
      cloud.coords[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
          g[static_cast<std::size_t>(k)] * inv;
  }
  return cloud;
}

PointCloud sample_cube(int d, int n, std::size_t m, const std::vector<double>& offset) {
  if (d < 1) throw std::invalid_argument("sample_cube: d must be >= 1");
  if (n < d) throw std::invalid_argument("sample_cube: need n >= d");
  if (m < 1) throw std::invalid_argument("sample_cube: need at least one point per axis");
  if (!offset.empty() && offset.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("sample_cube: offset must have length n");

  std::size_t count = 1;
  for (int k = 0; k < d; ++k) {
    if (count > (std::size_t{1} << 24) / m) throw std::invalid_argument("sample_cube: grid too large");
    count *= m;
  }

  PointCloud cloud;
  cloud.n = n;
  cloud.d = d;
  {
    std::ostringstream label;
    label << "cube(d=" << d << ",m=" << m << ")";
    cloud.label = label.str();
  }
  const double w = std::pow(static_cast<double>(m), -static_cast<double>(d));
  cloud.weights.assign(count, w);
  cloud.coords.assign(count * static_cast<std::size_t>(n), 0.0);

  std::vector<std::size_t> digits(static_cast<std::size_t>(d), 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (int k = 0; k < n; ++k) {
      double v = offset.empty() ? 0.0 : offset[static_cast<std::size_t>(k)];
      if (k < d)
        v += (static_cast<double>(digits[static_cast<std::size_t>(k)]) + 0.5) / static_cast<double>(m);
      cloud.coords[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] = v;
    }
    for (int k = 0; k < d; ++k) {
      if (++digits[static_cast<std::size_t>(k)] < m) break;
      digits[static_cast<std::size_t>(k)] = 0;
    }
  }
  return cloud;
}

PointCloud union_clouds(const std::vector<PointCloud>& clouds) {
  if (clouds.empty()) throw std::invalid_argument("union_clouds: no clouds given");
  PointCloud out;
  out.n = clouds.front().n;
  out.d = clouds.front().d;
  out.seed = clouds.front().seed;
  std::ostringstream label;
  label << "union(";
  for (std::size_t c = 0; c < clouds.size(); ++c) {
    const PointCloud& cloud = clouds[c];
    cloud.validate();
    if (cloud.n != out.n) throw std::invalid_argument("union_clouds: ambient dimension mismatch");
    if (cloud.d != out.d) throw std::invalid_argument("union_clouds: target dimension mismatch");
    out.coords.insert(out.coords.end(), cloud.coords.begin(), cloud.coords.end());
    out.weights.insert(out.weights.end(), cloud.weights.begin(), cloud.weights.end());
    if (c) label << "|";
    label << cloud.label;
  }
  label << ")";
  out.label = label.str();
  return out;
}

void IfsSpec::validate() const {
  if (n < 1) throw std::invalid_argument("IfsSpec: ambient dimension must be >= 1");
  if (maps.empty()) throw std::invalid_argument("IfsSpec: at least one map required");
  for (const IfsMap& map : maps) {
    if (!(map.ratio > 0.0 && map.ratio < 1.0))
      throw std::invalid_argument("IfsSpec: contraction ratio must lie in (0,1)");
    if (map.rotation.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n) ||
        map.offset.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("IfsSpec: map dimensions do not match n");
    Eigen::Map<const Eigen::MatrixXd> u_t(map.rotation.data(), n, n);
    const double defect = (u_t * u_t.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-12) throw std::invalid_argument("IfsSpec: rotation part is not orthogonal");
  }
}

IfsSpec cantor_middle_thirds() {
  IfsSpec spec;
  spec.n = 1;
  spec.maps.push_back({1.0 / 3.0, {1.0}, {0.0}});
  spec.maps.push_back({1.0 / 3.0, {1.0}, {2.0 / 3.0}});
  return spec;
}

IfsSpec cantor_dust_quarter() {
  IfsSpec spec;
  spec.n = 2;
  const std::vector<double> eye = {1.0, 0.0, 0.0, 1.0};
  spec.maps.push_back({0.25, eye, {0.0, 0.0}});
  spec.maps.push_back({0.25, eye, {0.75, 0.0}});
  spec.maps.push_back({0.25, eye, {0.0, 0.75}});
  spec.maps.push_back({0.25, eye, {0.75, 0.75}});
  return spec;
}

double similarity_dimension(const IfsSpec& spec) {
  spec.validate();
  if (spec.maps.size() == 1) return 0.0;  // degenerate: single map has dimension 0

  const auto moran = [&](double d) {
    double s = 0.0;
    for (const IfsMap& map : spec.maps) s += std::pow(map.ratio, d);
    return s - 1.0;  // strictly decreasing in d
  };
  double lo = 1e-12, hi = 1.0;
  while (moran(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (moran(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PointCloud ifs_attractor(const IfsSpec& spec, int depth, std::size_t max_points) {
  spec.validate();
  if (depth < 0) throw std::invalid_argument("ifs_attractor: depth must be >= 0");
  const std::size_t branching = spec.maps.size();
  std::size_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count > max_points / branching) throw std::invalid_argument("ifs_attractor: point cap exceeded");
    count *= branching;
  }

  const int n = spec.n;
  const double d = similarity_dimension(spec);

  // Invariant ball B(c, r) with phi_i(B) inside B, from the map fixed points.
  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> fixed;
  fixed.reserve(branching);
  for (const IfsMap& map : spec.maps) {
    fixed.push_back(map_fixed_point(map, n));
    center += fixed.back();
  }
  center /= static_cast<double>(branching);
  double radius = 0.0;
  std::vector<Eigen::VectorXd> images;
  images.reserve(branching);
  for (const IfsMap& map : spec.maps) {
    images.push_back(apply_map(map, n, center));
    radius = std::max(radius, (images.back() - center).norm() / (1.0 - map.ratio));
  }
  // Conservative strict-self-similarity check: depth-1 image balls must be
  // pairwise disjoint.
  for (std::size_t i = 0; i < branching; ++i)
    for (std::size_t j = i + 1; j < branching; ++j) {
      const double gap = (images[i] - images[j]).norm() -
                         radius * (spec.maps[i].ratio + spec.maps[j].ratio);
      if (!(gap > 1e-12 * std::max(1.0, radius)))
        throw std::invalid_argument("ifs_attractor: depth-1 images overlap; not strictly self-similar");
    }

  PointCloud cloud;
  cloud.n = n;
  cloud.d = d;
  {
    std::ostringstream label;
    label << "ifs(maps=" << branching << ",depth=" << depth << ")";
    cloud.label = label.str();
  }
  cloud.coords.reserve(count * static_cast<std::size_t>(n));
  cloud.weights.reserve(count);

  const Eigen::VectorXd base = fixed.front();
  std::vector<std::size_t> word(static_cast<std::size_t>(depth), 0);
  for (std::size_t cell = 0; cell < count; ++cell) {
    Eigen::VectorXd x = base;
    double w = 1.0;
    for (int k = depth - 1; k >= 0; --k) {
      const IfsMap& map = spec.maps[word[static_cast<std::size_t>(k)]];
      x = apply_map(map, n, x);
      w *= std::pow(map.ratio, d);
    }
    for (int k = 0; k < n; ++k) cloud.coords.push_back(x[k]);
    cloud.weights.push_back(w);
    for (int k = depth - 1; k >= 0; --k) {
      if (++word[static_cast<std::size_t>(k)] < branching) break;
      word[static_cast<std::size_t>(k)] = 0;
    }
  }
  return cloud;
}

std::vector<double> local_spacing(const PointCloud& cloud) {
  cloud.validate();
  const std::size_t count = cloud.size();
  if (count < 2) throw std::invalid_argument("local_spacing: need at least two points");

  std::vector<double> spacing(count, 0.0);
  if (count <= 10'000) {
    for (std::size_t i = 0; i < count; ++i) {
      double best = kInfinity;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == i) continue;
        best = std::min(best, squared_distance(cloud.point(i), cloud.point(j)));
      }
      spacing[i] = std::sqrt(best);
    }
    return spacing;
  }
  detail::KdTree tree(cloud.coords.data(), count, cloud.n);
  for (std::size_t i = 0; i < count; ++i) spacing[i] = std::sqrt(tree.nearest_sq(i));
  return spacing;
}

double median_local_spacing(const PointCloud& cloud) {
  std::vector<double> spacing = local_spacing(cloud);
  const std::size_t mid = spacing.size() / 2;
  std::nth_element(spacing.begin(), spacing.begin() + static_cast<std::ptrdiff_t>(mid), spacing.end());
  return spacing[mid];
}

}  // namespace riesz
