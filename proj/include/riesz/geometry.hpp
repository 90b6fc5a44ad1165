#pragma once

#include <cstdint>
#include <vector>

#include "riesz/point_cloud.hpp"

namespace riesz {

// N points on the unit sphere S^d embedded in R^n (first d+1 coordinates),
// each with weight |S^d| / N so the total weight equals the surface area.
// d = 1 uses a deterministic equally spaced lattice; d >= 2 samples
// normalized Gaussian directions from the given seed.
PointCloud sample_sphere(int d, int n, std::size_t N, std::uint64_t seed);

// Midpoint grid with m points per axis on the unit d-cube embedded in R^n
// and translated by `offset` (defaults to the origin). Each weight is
// m^(-d); the total weight is 1, the d-measure of the cube.
PointCloud sample_cube(int d, int n, std::size_t m, const std::vector<double>& offset = {});

// Concatenation of clouds sharing n and d. Weights are kept as-is, so
// measures add; the label records the constituents.
PointCloud union_clouds(const std::vector<PointCloud>& clouds);

// One contracting similarity x -> ratio * U x + offset.
struct IfsMap {
  double ratio = 0.0;             // in (0, 1)
  std::vector<double> rotation;   // row-major n x n orthogonal matrix
  std::vector<double> offset;     // length n
};

// A strictly self-similar system: contraction maps whose depth-1 images of
// the attractor are pairwise disjoint (checked at generation time).
struct IfsSpec {
  std::vector<IfsMap> maps;
  int n = 0;

  // Checks ratios in (0,1) and orthogonality of each rotation to 1e-12.
  void validate() const;
};

// Presets used throughout the tests and CLI.
IfsSpec cantor_middle_thirds();          // two maps, ratio 1/3, on the line
IfsSpec cantor_dust_quarter();           // four maps, ratio 1/4, unit-square corners

// The unique root d > 0 of sum_i ratio_i^d = 1 (bisection to 1e-12).
// A single-map spec is degenerate and yields 0.
double similarity_dimension(const IfsSpec& spec);

// One point per word of length `depth`: the image of the base point (the
// fixed point of the first map) with weight prod ratio^d, the natural
// self-similar probability measure. The cloud's d field is set to the
// similarity dimension.
PointCloud ifs_attractor(const IfsSpec& spec, int depth, std::size_t max_points = std::size_t{1} << 20);

// Distance from each point to its nearest distinct neighbor. Brute force
// for small clouds, kd-tree above 10^4 points.
std::vector<double> local_spacing(const PointCloud& cloud);

double median_local_spacing(const PointCloud& cloud);

}  // namespace riesz
