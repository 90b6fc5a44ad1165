#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "riesz/point_cloud.hpp"

namespace riesz {

enum class DiagPolicy { omit, cell_ball };

// Diagonal treatment for the singular kernel. `omit` zeroes the diagonal
// (pairwise sums only; the simplex minimum degenerates to a vertex).
// `cell_ball` models the cell around point i as a ball of radius c * h_i,
// h_i the local spacing, giving diagonal entries (c h_i)^(-p).
// `self_bound_from_above` is a declared property of the chosen constant:
// set it only when c is small enough that the diagonal provably dominates
// the true within-cell self-energy; energies computed under such a policy
// are certified upper bounds, hence capacities certified lower bounds.
struct DiagSpec {
  DiagPolicy policy = DiagPolicy::omit;
  double c = 1.0;
  bool self_bound_from_above = false;

  static DiagSpec omit() { return {DiagPolicy::omit, 0.0, false}; }
  static DiagSpec cell_ball(double c, bool from_above = false) {
    return {DiagPolicy::cell_ball, c, from_above};
  }
};

enum class BoundDirection { upper, lower, heuristic };

const char* to_string(BoundDirection dir);

struct EnergyEstimate {
  double value = 0.0;
  double p = 0.0;
  BoundDirection direction = BoundDirection::heuristic;
  std::string method;
  std::string cloud_label;
};

// Dense symmetric Riesz interaction matrix for a cloud at exponent p.
struct KernelMatrix {
  Eigen::MatrixXd k;
  double p = 0.0;
  DiagSpec diag;
  std::vector<double> spacing;  // h_i, populated under cell_ball
  std::string cloud_label;

  Eigen::Index size() const { return k.rows(); }
};

// Assembles the matrix; duplicate points are rejected (they would place
// infinities off the diagonal — deduplicate the cloud first).
KernelMatrix kernel_matrix(const PointCloud& cloud, double p, const DiagSpec& diag);

// w^T K w for probability weights w. The estimate is marked `upper` only
// when the policy declares the self-interaction approximated from above.
EnergyEstimate trial_energy(const KernelMatrix& k, const std::vector<double>& weights);

// Energy through the ball-indicator form of the kernel,
//   p * sum_ij w_i w_j integral_{|x_i-x_j| <= r <= r_max} r^(-p-1) dr,
// evaluated in closed form per pair. With r_max = infinity and the same
// diagonal policy this equals trial_energy exactly.
double gotz_energy(const PointCloud& cloud, const std::vector<double>& weights, double p, double r_max,
                   const DiagSpec& diag);

struct SolveDiagnostics {
  int iterations = 0;
  double relative_gap = 0.0;
  bool converged = false;
};

struct EquilibriumResult {
  std::vector<double> weights;
  EnergyEstimate energy;
  SolveDiagnostics diagnostics;
};

// Minimizes w^T K w over the probability simplex by Frank-Wolfe with away
// steps from uniform initialization. Deterministic. Requires a cell_ball
// diagonal; under omit the minimum degenerates to a vertex.
EquilibriumResult solve_equilibrium(const KernelMatrix& k, double tol = 1e-9, int max_iter = 200'000);

struct SimplexMinimum {
  std::vector<double> weights;
  double value = 0.0;
};

// Global minimum of w^T G w over the simplex by support enumeration;
// exact up to linear-solver roundoff. Size capped at 12.
SimplexMinimum exact_simplex_quadratic_min(const Eigen::MatrixXd& g);

// Closed form for the Riesz p-capacity of the unit sphere S^d, 0 < p < d:
//   2 (Gamma(d - p/2) Gamma(d/2) / (Gamma((d-p)/2) Gamma(d)))^(1/p).
double sphere_capacity_exact(int d, double p);

// cap = value^(-1/p); infinite energy maps to capacity zero. An upper
// energy bound turns into a lower capacity bound and vice versa.
double capacity(const EnergyEstimate& estimate);
BoundDirection capacity_direction(BoundDirection energy_direction);

struct CalibrationResult {
  double c = 0.0;
  double relative_error = 0.0;  // capacity error vs the exact oracle at p_ref
  int iterations = 0;
};

// Bisects the cell_ball constant c so that the equilibrium capacity of the
// N-point sphere S^d at p_ref matches sphere_capacity_exact(d, p_ref).
// The calibrated c is meant to be frozen per (d, N) and reused across p.
CalibrationResult calibrate_diag(int d, double p_ref, std::size_t N, double target_rel = 5e-3,
                                 std::uint64_t seed = 0);

// Binary dump: 4-byte magic "RKM1", uint32 N (little endian), then N*N
// little-endian doubles row-major.
void write_matrix_dump(const KernelMatrix& k, const std::string& path);
Eigen::MatrixXd read_matrix_dump(const std::string& path);

void write_weights_csv(const std::vector<double>& weights, const std::string& path,
                       const std::vector<std::string>& header_comments = {});

}  // namespace riesz
