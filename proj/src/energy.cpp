#include "riesz/energy.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "riesz/core.hpp"
#include "riesz/detail/text.hpp"
#include "riesz/geometry.hpp"

namespace riesz {

namespace {

void check_simplex(const std::vector<double>& w, std::size_t expected) {
  if (w.size() != expected) throw std::invalid_argument("weights: length mismatch with matrix");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights: negative entry, not on the simplex");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("weights: must sum to one within 1e-12");
}

}  // namespace

const char* to_string(BoundDirection dir) {
  switch (dir) {
    case BoundDirection::upper: return "upper";
    case BoundDirection::lower: return "lower";
    default: return "heuristic";
  }
}

KernelMatrix kernel_matrix(const PointCloud& cloud, double p, const DiagSpec& diag) {
  cloud.validate();
  if (!(p > 0.0)) throw std::invalid_argument("kernel_matrix: p must be positive");
  if (diag.policy == DiagPolicy::cell_ball && !(diag.c > 0.0))
    throw std::invalid_argument("kernel_matrix: cell_ball requires c > 0");
  const std::size_t count = cloud.size();

  KernelMatrix out;
  out.p = p;
  out.diag = diag;
  out.cloud_label = cloud.label;
  out.k.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));

  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double r2 = squared_distance(cloud.point(i), cloud.point(j));
      if (r2 == 0.0)
        throw std::invalid_argument(
            "kernel_matrix: duplicate points give infinite off-diagonal entries; deduplicate the cloud");
      const double v = std::pow(r2, -0.5 * p);
      out.k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out.k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  if (diag.policy == DiagPolicy::omit) {
    out.k.diagonal().setZero();
  } else {
    out.spacing = local_spacing(cloud);
    for (std::size_t i = 0; i < count; ++i)
      out.k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
          std::pow(diag.c * out.spacing[i], -p);
  }
  return out;
}

EnergyEstimate trial_energy(const KernelMatrix& k, const std::vector<double>& weights) {
  check_simplex(weights, static_cast<std::size_t>(k.size()));
  Eigen::Map<const Eigen::VectorXd> w(weights.data(), k.size());
  EnergyEstimate out;
  out.value = w.dot(k.k * w);
  out.p = k.p;
  out.method = "trial";
  out.cloud_label = k.cloud_label;
  out.direction = (k.diag.policy == DiagPolicy::cell_ball && k.diag.self_bound_from_above)
                      ? BoundDirection::upper
                      : BoundDirection::heuristic;
  return out;
}

double gotz_energy(const PointCloud& cloud, const std::vector<double>& weights, double p, double r_max,
                   const DiagSpec& diag) {
  cloud.validate();
  if (!(p > 0.0)) throw std::invalid_argument("gotz_energy: p must be positive");
  if (!(r_max > 0.0)) throw std::invalid_argument("gotz_energy: r_max must be positive");
  const std::size_t count = cloud.size();
  check_simplex(weights, count);

  // p * int_D^{r_max} r^(-p-1) dr = exp(-p log D) - exp(-p log r_max),
  // zero when D exceeds r_max. Deliberately evaluated through log/exp so the
  // identity with the pow-based kernel path is a genuine two-route check.
  const double tail = std::isinf(r_max) ? 0.0 : std::exp(-p * std::log(r_max));
  const auto pair_term = [&](double dist) {
    if (dist > r_max) return 0.0;
    return std::exp(-p * std::log(dist)) - tail;
  };

  std::vector<double> spacing;
  if (diag.policy == DiagPolicy::cell_ball) {
    if (!(diag.c > 0.0)) throw std::invalid_argument("gotz_energy: cell_ball requires c > 0");
    spacing = local_spacing(cloud);
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double dist = point_distance(cloud, i, j);
      if (dist == 0.0)
        throw std::invalid_argument("gotz_energy: duplicate points; deduplicate the cloud");
      acc += 2.0 * weights[i] * weights[j] * pair_term(dist);
    }
    if (diag.policy == DiagPolicy::cell_ball)
      acc += weights[i] * weights[i] * pair_term(diag.c * spacing[i]);
  }
  return acc;
}

EquilibriumResult solve_equilibrium(const KernelMatrix& k, double tol, int max_iter) {
  if (k.diag.policy != DiagPolicy::cell_ball)
    throw std::invalid_argument(
        "solve_equilibrium: omit diagonal admits the degenerate vertex minimum; use cell_ball");
  const Eigen::Index n = k.size();
  if (n < 1) throw std::invalid_argument("solve_equilibrium: empty matrix");
  if (!k.k.allFinite()) throw std::invalid_argument("solve_equilibrium: matrix entries must be finite");

  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd kw = k.k * w;
  double f = w.dot(kw);

  SolveDiagnostics diag;
  for (diag.iterations = 0; diag.iterations < max_iter; ++diag.iterations) {
    if ((diag.iterations & 1023) == 1023) {  // refresh against fp drift
      kw = k.k * w;
      f = w.dot(kw);
    }
    // gradient is 2 kw; the factor 2 cancels in the step-size formula.
    Eigen::Index s = 0, v = -1;
    double gmin = std::numeric_limits<double>::infinity();
    double gmax = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (kw[i] < gmin) {
        gmin = kw[i];
        s = i;
      }
      if (w[i] > 0.0 && kw[i] > gmax) {
        gmax = kw[i];
        v = i;
      }
    }
    const double gap_fw = 2.0 * (f - gmin);
    const double gap_away = v >= 0 ? 2.0 * (gmax - f) : 0.0;
    diag.relative_gap = f > 0.0 ? gap_fw / f : gap_fw;
    if (gap_fw <= tol * std::max(f, std::numeric_limits<double>::min())) {
      diag.converged = true;
      break;
    }

    const bool away = gap_away > gap_fw && v >= 0 && w[v] < 1.0;
    double gamma_max, gd, dkd;
    if (!away) {
      // d = e_s - w
      gamma_max = 1.0;
      gd = gap_fw;  // -g.d
      dkd = k.k(s, s) - 2.0 * kw[s] + f;
    } else {
      // d = w - e_v
      gamma_max = w[v] / (1.0 - w[v]);
      gd = gap_away;
      dkd = f - 2.0 * kw[v] + k.k(v, v);
    }
    double gamma = gamma_max;
    if (dkd > 0.0) gamma = std::min(gamma_max, 0.5 * gd / dkd);
    if (!(gamma > 0.0)) {
      diag.converged = true;  // no descent available: stationary
      break;
    }

    if (!away) {
      w *= (1.0 - gamma);
      w[s] += gamma;
      kw = (1.0 - gamma) * kw + gamma * k.k.col(s);
    } else {
      w *= (1.0 + gamma);
      w[v] -= gamma;
      if (w[v] < 1e-17) w[v] = 0.0;  // drop step
      kw = (1.0 + gamma) * kw - gamma * k.k.col(v);
    }
    f = w.dot(kw);
  }

  EquilibriumResult out;
  out.weights.assign(w.data(), w.data() + n);
  out.energy.value = f;
  out.energy.p = k.p;
  out.energy.direction = BoundDirection::heuristic;  // discretization bias is not one-sided
  out.energy.method = "frank_wolfe_away";
  out.energy.cloud_label = k.cloud_label;
  out.diagnostics = diag;
  return out;
}

SimplexMinimum exact_simplex_quadratic_min(const Eigen::MatrixXd& g) {
  const Eigen::Index n = g.rows();
  if (n < 1 || g.cols() != n) throw std::invalid_argument("exact_simplex_quadratic_min: square matrix required");
  if (n > 12) throw std::invalid_argument("exact_simplex_quadratic_min: size capped at 12");

  SimplexMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Index> support;

  // A minimizer lies in the relative interior of some face, where the
  // restricted gradient is constant: G_S z = 1, w = z / sum(z),
  // value = 1 / sum(z). Vertices cover the single-point faces, so every
  // support set yields its candidate and the global minimum is among them.
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    support.clear();
    for (Eigen::Index i = 0; i < n; ++i)
      if (mask & (1u << i)) support.push_back(i);
    const Eigen::Index m = static_cast<Eigen::Index>(support.size());

    if (m == 1) {
      const double value = g(support[0], support[0]);
      if (value < best.value) {
        best.value = value;
        best.weights.assign(static_cast<std::size_t>(n), 0.0);
        best.weights[static_cast<std::size_t>(support[0])] = 1.0;
      }
      continue;
    }

    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = g(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (!lu.isInvertible()) continue;  // minimum over this face lies on a subface
    const Eigen::VectorXd z = lu.solve(Eigen::VectorXd::Ones(m));
    const double zsum = z.sum();
    if (!(zsum != 0.0) || !z.allFinite()) continue;
    bool feasible = true;
    for (Eigen::Index a = 0; a < m; ++a)
      if (z[a] / zsum < -1e-12) {
        feasible = false;
        break;
      }
    if (!feasible) continue;
    const double value = 1.0 / zsum;
    if (value >= 0.0 && value < best.value) {
      best.value = value;
      best.weights.assign(static_cast<std::size_t>(n), 0.0);
      for (Eigen::Index a = 0; a < m; ++a)
        best.weights[static_cast<std::size_t>(support[static_cast<std::size_t>(a)])] =
            std::max(0.0, z[a] / zsum);
    }
  }
  return best;
}

double sphere_capacity_exact(int d, double p) {
  if (d < 1) throw std::invalid_argument("sphere_capacity_exact: d must be >= 1");
  if (!(p > 0.0 && p < static_cast<double>(d)))
    throw std::invalid_argument("sphere_capacity_exact: requires 0 < p < d");
  const double dd = static_cast<double>(d);
  const double ratio = gamma_fn(dd - 0.5 * p) * gamma_fn(0.5 * dd) /
                       (gamma_fn(0.5 * (dd - p)) * gamma_fn(dd));
  return 2.0 * std::pow(ratio, 1.0 / p);
}

double capacity(const EnergyEstimate& estimate) {
  if (std::isinf(estimate.value)) return 0.0;
  if (!(estimate.value > 0.0)) throw std::invalid_argument("capacity: energy must be positive");
  return std::pow(estimate.value, -1.0 / estimate.p);
}

BoundDirection capacity_direction(BoundDirection energy_direction) {
  switch (energy_direction) {
    case BoundDirection::upper: return BoundDirection::lower;
    case BoundDirection::lower: return BoundDirection::upper;
    default: return BoundDirection::heuristic;
  }
}

CalibrationResult calibrate_diag(int d, double p_ref, std::size_t N, double target_rel,
                                 std::uint64_t seed) {
  if (N < 50) throw std::invalid_argument("calibrate_diag: calibration requires N >= 50");
  if (d < 1) throw std::invalid_argument("calibrate_diag: d must be >= 1");
  if (!(p_ref > 0.0 && p_ref < static_cast<double>(d)))
    throw std::invalid_argument("calibrate_diag: requires 0 < p_ref < d");

  const PointCloud cloud = sample_sphere(d, d + 1, N, seed);
  const double cap_exact = sphere_capacity_exact(d, p_ref);

  // Off-diagonal part is c-independent; assemble once and patch the diagonal.
  KernelMatrix k = kernel_matrix(cloud, p_ref, DiagSpec::cell_ball(1.0));
  const std::vector<double> spacing = k.spacing;

  const auto cap_at = [&](double c) {
    for (std::size_t i = 0; i < spacing.size(); ++i)
      k.k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = std::pow(c * spacing[i], -p_ref);
    k.diag.c = c;
    const EquilibriumResult eq = solve_equilibrium(k, 1e-11, 200'000);
    return capacity(eq.energy);
  };

  // capacity(c) increases with c: larger c means smaller diagonal entries.
  double lo = 1e-4, hi = 64.0;
  double cap_lo = cap_at(lo), cap_hi = cap_at(hi);
  if (!(cap_lo < cap_exact && cap_hi > cap_exact)) {
    throw std::runtime_error(
        "calibrate_diag: bracket failure, capacity range [" + detail::fmt17(cap_lo) + ", " +
        detail::fmt17(cap_hi) + "] does not enclose the oracle " + detail::fmt17(cap_exact));
  }
  CalibrationResult out;
  double cap_mid = cap_lo;
  for (out.iterations = 0; out.iterations < 200; ++out.iterations) {
    const double mid = std::sqrt(lo * hi);  // c spans decades: bisect in log
    cap_mid = cap_at(mid);
    (cap_mid < cap_exact ? lo : hi) = mid;
    if (std::abs(cap_mid / cap_exact - 1.0) < 0.02 * target_rel) break;
  }
  out.c = std::sqrt(lo * hi);
  out.relative_error = std::abs(cap_mid / cap_exact - 1.0);
  if (out.relative_error > target_rel)
    throw std::runtime_error("calibrate_diag: failed to reach target tolerance");
  return out;
}

void write_matrix_dump(const KernelMatrix& k, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[4] = {'R', 'K', 'M', '1'};
  out.write(magic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(k.size());
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (Eigen::Index i = 0; i < k.size(); ++i)
    for (Eigen::Index j = 0; j < k.size(); ++j) {
      const double v = k.k(i, j);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
}

Eigen::MatrixXd read_matrix_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, "RKM1", 4) != 0) throw std::runtime_error("bad matrix dump magic in " + path);
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  Eigen::MatrixXd m(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      m(i, j) = v;
    }
  if (!in) throw std::runtime_error("truncated matrix dump: " + path);
  return m;
}

void write_weights_csv(const std::vector<double>& weights, const std::string& path,
                       const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const std::string& line : header_comments) out << "# " << line << "\n";
  out << "index,weight\n";
  for (std::size_t i = 0; i < weights.size(); ++i)
    out << i << "," << detail::fmt17(weights[i]) << "\n";
}

}  // namespace riesz
