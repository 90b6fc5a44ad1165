#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace riesz {

/**
 * Weighted discretization of a compact set in R^n.
 *
 * Each point carries the measure of the cell it represents, so the weight
 * vector discretizes d-dimensional Hausdorff measure (or the natural
 * self-similar measure for fractal clouds). `d` is the target dimension of
 * the underlying set and may be fractional.
 */
struct PointCloud {
  std::vector<double> coords;   // row-major, size() * n entries
  std::vector<double> weights;  // nonnegative, one per point
  int n = 0;                    // ambient dimension
  double d = 0.0;               // target dimension of the set
  std::string label;
  std::uint64_t seed = 0;

  std::size_t size() const { return weights.size(); }

  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }

  double total_weight() const;
  double diameter() const;  // exact for <= 4096 points, bounding-box bound above

  // Weights scaled to sum to one.
  std::vector<double> normalized_weights() const;

  // Throws std::invalid_argument when the invariants fail: equal lengths,
  // nonnegative weights, positive total weight, finite coordinates.
  void validate() const;
};

double point_distance(const PointCloud& cloud, std::size_t i, std::size_t j);

// CSV with header x1,...,xn,weight plus a sidecar "<path>.meta" key=value
// file carrying n, d, label and seed. Round-trips bit-exactly.
void save_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud load_cloud_csv(const std::string& path);

// Single-file JSON alternative with the same fields.
void save_cloud_json(const PointCloud& cloud, const std::string& path);
PointCloud load_cloud_json(const std::string& path);

}  // namespace riesz
