#include "flatlab/mahler.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numeric>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

// P(z) = z^s R(z^g): returns R (shifted to start at frequency 0).
TrigPoly undilate(const TrigPoly& poly) {
  const std::int64_t lo = poly.min_frequency();
  std::int64_t g = 0;
  for (const auto& [k, c] : poly.coefficients()) g = std::gcd(g, k - lo);
  if (g <= 1) return poly;
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : poly.coefficients()) out.emplace((k - lo) / g, c);
  return TrigPoly(out);
}

// Mean of log|P| on the midpoint grid of size n; -inf if a sample vanishes.
double midpoint_log_mean(const TrigPoly& poly, std::size_t n) {
  const auto vals = evaluate_grid(poly, n, 0.5 / static_cast<double>(n));
  bool zero = false;
  const long double s = block_sum(vals.size(), [&](std::size_t j) {
    const double a = std::abs(vals[j]);
    if (a == 0.0) {
      zero = true;
      return 0.0L;
    }
    return static_cast<long double>(std::log(a));
  });
  if (zero) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(s / static_cast<long double>(n));
}

}  // namespace

double mahler_jensen(const TrigPoly& poly) {
  if (poly.is_zero()) throw Error(ErrorCode::InvalidParam, "Mahler measure of the zero polynomial");
  const std::int64_t lo = poly.min_frequency();
  const auto d = static_cast<Eigen::Index>(poly.span());
  const Complex lead = poly.coefficient(poly.max_frequency());
  if (d == 0) return std::abs(lead);
  // Companion matrix of the monic polynomial z^d + sum_{i<d} (a_i / lead) z^i.
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -poly.coefficient(lo + i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidParam, "companion eigenvalues failed");
  long double logm = std::log(static_cast<long double>(std::abs(lead)));
  for (Eigen::Index i = 0; i < d; ++i) {
    const double r = std::abs(solver.eigenvalues()(i));
    if (r > 1.0) logm += std::log(static_cast<long double>(r));
  }
  return static_cast<double>(std::exp(logm));
}

MahlerResult mahler_measure(const TrigPoly& input, const QuadratureConfig& cfg) {
  if (input.is_zero()) throw Error(ErrorCode::InvalidParam, "Mahler measure of the zero polynomial");
  const TrigPoly poly = cfg.reduce_dilation ? undilate(input) : input;
  MahlerResult r;
  if (poly.term_count() == 1) {
    r.value = r.quadrature_value = std::abs(poly.coefficients().begin()->second);
    r.converged = true;
    r.method = MahlerMethod::Exact;
    return r;
  }
  if (poly.span() <= cfg.jensen_max_degree) r.jensen_value = mahler_jensen(poly);

  std::size_t n = initial_grid(poly, cfg);
  double prev = midpoint_log_mean(poly, n);
  double change = std::numeric_limits<double>::infinity();
  bool converged = false;
  while (2 * n <= cfg.max_grid) {
    n *= 2;
    const double now = midpoint_log_mean(poly, n);
    change = std::abs(now - prev);
    prev = now;
    if (std::isfinite(now) && change <= cfg.stop_rel_tol) {
      converged = true;
      break;
    }
  }
  r.grid_size = n;
  r.quadrature_value = std::isfinite(prev) ? std::exp(prev) : 0.0;
  r.value = r.quadrature_value;
  r.est_error = std::isfinite(change) ? r.value * change : r.value;
  r.converged = converged;
  if (!converged && r.jensen_value) {
    // Zeros on (or extremely close to) the circle: O(1/N) quadrature error.
    r.method = MahlerMethod::Jensen;
    r.value = *r.jensen_value;
    r.est_error = std::abs(r.value - r.quadrature_value);
    r.converged = true;
  }
  return r;
}

DiscreteMahler mahler_discrete(const TrigPoly& poly, std::size_t m, double offset) {
  if (m == 0) throw Error(ErrorCode::InvalidParam, "m must be >= 1");
  const auto vals = evaluate_grid(poly, m, offset);
  // Samples below the evaluation roundoff floor count as exact zeros.
  double mass = 0.0;
  for (const auto& [k, c] : poly.coefficients()) mass += std::abs(c);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * mass;
  long double s = 0.0L;
  for (const auto& v : vals) {
    const double a = std::abs(v);
    if (a <= floor) return {0.0, true};
    s += std::log(static_cast<long double>(a));
  }
  return {static_cast<double>(std::exp(s / static_cast<long double>(m))), false};
}

}  // namespace flatlab
