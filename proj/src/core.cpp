#include "riesz/core.hpp"

#include <cmath>
#include <stdexcept>

#include "riesz/detail/rng.hpp"

namespace riesz {

void RieszParams::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("RieszParams: p must be positive");
  if (!(d > 0.0)) throw std::invalid_argument("RieszParams: d must be positive");
  if (n < 1) throw std::invalid_argument("RieszParams: ambient dimension must be >= 1");
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("squared_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k] - y[k];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> x, std::span<const double> y) {
  return std::sqrt(squared_distance(x, y));
}

double riesz_kernel(std::span<const double> x, std::span<const double> y, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("riesz_kernel: p must be positive");
  const double r2 = squared_distance(x, y);
  if (r2 == 0.0) return kInfinity;
  return std::pow(r2, -0.5 * p);
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double unit_sphere_area(double d) {
  if (!(d > 0.0)) throw std::invalid_argument("unit_sphere_area: dimension must be positive");
  return 2.0 * std::pow(detail::kPi, 0.5 * d) / gamma_fn(0.5 * d);
}

double unit_ball_volume(double d) {
  if (!(d > 0.0)) throw std::invalid_argument("unit_ball_volume: dimension must be positive");
  return std::pow(detail::kPi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
}

}  // namespace riesz
