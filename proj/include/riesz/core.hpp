#pragma once

#include <limits>
#include <span>

namespace riesz {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Exponent / dimension bundle shared by the energy and density routines.
// p is the Riesz exponent, d the (possibly fractional) target dimension of
// the set, n the ambient dimension.
struct RieszParams {
  double p = 1.0;
  double d = 1.0;
  int n = 1;

  // Throws std::invalid_argument when p <= 0, d <= 0 or n < 1.
  void validate() const;
};

// Riesz kernel |x-y|^(-p). Coincident points return +infinity; callers that
// cannot tolerate the singularity apply a diagonal policy instead of
// handling an exception.
double riesz_kernel(std::span<const double> x, std::span<const double> y, double p);

double squared_distance(std::span<const double> x, std::span<const double> y);
double distance(std::span<const double> x, std::span<const double> y);

// Gamma function on (0, inf), at least 10 significant digits.
double gamma_fn(double x);

// Surface area of the unit sphere S^(d-1) in R^d: 2 pi^(d/2) / Gamma(d/2).
// Real d > 0 is allowed.
double unit_sphere_area(double d);

// Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(double d);

}  // namespace riesz
