#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riesz/energy.hpp"
#include "riesz/point_cloud.hpp"

namespace riesz {

enum class CurveTag { upper, lower, heuristic, exact };
const char* to_string(CurveTag tag);

struct CurveEntry {
  double p = 0.0;
  double cap = 0.0;
  CurveTag direction = CurveTag::heuristic;
  bool converged = true;
};

// Capacity sampled over a p-grid approaching d from below.
struct CapacityCurve {
  double d = 0.0;
  std::vector<CurveEntry> entries;  // ordered by increasing p
  std::string source_label;
  std::string method;          // "equilibrium", "trial", "exact_sphere"
  double diag_c = 0.0;         // 0 when not applicable
  bool monotone_nonincreasing = true;
};

enum class CurveMethod { equilibrium, trial };

struct CurveConfig {
  CurveMethod method = CurveMethod::equilibrium;
  DiagSpec diag = DiagSpec::cell_ball(1.0);
  double solver_tol = 1e-9;
  int max_iter = 200'000;
};

// Geometric gap grid p_k = d - g0 * 2^(-k), k = 0..levels-1, keeping gaps
// >= floor. Returned ascending in p.
std::vector<double> make_gap_grid(double d, double g0 = 0.5, int levels = 8, double floor = 0.02);

// One capacity per p: equilibrium solve (heuristic tag) or trial evaluation
// of the cloud's natural weights (certified-lower tag when the diagonal
// policy declares self-interaction bounded from above).
CapacityCurve capacity_curve(const PointCloud& cloud, const std::vector<double>& p_grid,
                             const CurveConfig& config);

// Closed-form curve for the unit sphere S^d.
CapacityCurve exact_sphere_curve(int d, const std::vector<double>& p_grid);

struct RatioPoint {
  double p = 0.0;
  double gap = 0.0;  // d - p
  double value = 0.0;
};

// Pointwise decay ratios cap_p^p / (d - p); no extrapolation.
std::vector<RatioPoint> decay_ratio(const CapacityCurve& curve);

enum class ExtrapolationScheme { last, linear_in_gap, richardson };
const char* to_string(ExtrapolationScheme scheme);
ExtrapolationScheme parse_scheme(const std::string& name);

struct Extrapolation {
  double limit = 0.0;
  double residual = 0.0;  // rms fit residual (linear) or last-correction size
  int points_used = 0;
  ExtrapolationScheme scheme = ExtrapolationScheme::last;
};

// last: final ratio. linear_in_gap: least-squares intercept of
// value ~ a + b*gap. richardson: quadratic polynomial in the gap through
// the last three points, evaluated at gap 0 (intended for geometrically
// spaced gaps).
Extrapolation extrapolate_limit(const std::vector<RatioPoint>& ratios, ExtrapolationScheme scheme);

// H^d estimate: limit * |S^(d-1)|.
double hausdorff_from_decay(double limit, double d);

// Theoretical limit for strongly rectifiable sets and lower bound for
// fractals with constant second-order density sigma.
double rectifiable_target(double h_measure, double d);
double fractal_target(double h_measure, double d, double sigma);

// CSV schema: p, cap, cap_pow_p, ratio, bound_direction.
void write_curve_csv(const CapacityCurve& curve, const std::string& path,
                     const std::vector<std::string>& header_comments = {});
CapacityCurve read_curve_csv(const std::string& path);  // d recovered from comments

}  // namespace riesz
