#include "flatlab/mz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

ConvexPhi ConvexPhi::power(double alpha) {
  if (!(alpha >= 1.0)) throw Error(ErrorCode::InvalidParam, "phi = x^alpha needs alpha >= 1");
  return ConvexPhi(Kind::Power, alpha);
}

ConvexPhi ConvexPhi::hinge(double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::InvalidParam, "hinge offset must be finite");
  return ConvexPhi(Kind::Hinge, c);
}

double ConvexPhi::operator()(double x) const {
  if (kind_ == Kind::Power) return param_ == 1.0 ? x : std::pow(x, param_);
  return std::max(0.0, x - param_);
}

MzCheck mz_upper_check(const TrigPoly& poly, const ConvexPhi& phi, double kappa, std::size_t m,
                       double offset, const QuadratureConfig& cfg) {
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidParam, "kappa must be positive");
  const double n = static_cast<double>(poly.degree());
  if (m == 0 || static_cast<double>(m) < (1.0 + kappa) * 2.0 * n) {
    throw Error(ErrorCode::GridTooSmall, "m must be at least (1+kappa) 2n");
  }
  MzCheck r;
  r.m = m;
  r.a_kappa = 1.0 / (1.0 + 1.0 / kappa);
  const auto vals = evaluate_grid(poly, m, offset);
  const long double s = block_sum(m, [&](std::size_t j) {
    return static_cast<long double>(phi(r.a_kappa * std::abs(vals[j])));
  });
  r.lhs = static_cast<double>(s / static_cast<long double>(m));
  r.rhs = circle_mean(poly, [&](Complex z) { return phi(std::abs(z)); }, cfg).value;
  r.holds = r.lhs <= r.rhs + 1e-12 * (1.0 + std::abs(r.rhs));
  return r;
}

double bernstein_ratio(const TrigPoly& poly, double p, const QuadratureConfig& cfg) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidParam, "p must be >= 1");
  if (poly.is_zero()) throw Error(ErrorCode::EmptySupport, "zero polynomial");
  const TrigPoly deriv = poly.derivative();
  if (deriv.is_zero()) return 0.0;
  // Grids are multiples of 4 * degree so cos(nx) and its derivative see
  // congruent sample sets and the equality case is reproduced exactly.
  const auto quarter = static_cast<std::size_t>(4 * std::max<std::int64_t>(1, poly.degree()));
  std::size_t n = quarter;
  while (n < initial_grid(poly, cfg)) n *= 2;
  auto mean_pow = [p](const std::vector<Complex>& v) {
    return block_sum(v.size(), [&](std::size_t j) {
      return static_cast<long double>(std::pow(std::abs(v[j]), p));
    });
  };
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (;;) {
    const long double a = mean_pow(evaluate_grid(poly, n));
    const long double b = mean_pow(evaluate_grid(deriv, n));
    const double ratio = std::pow(static_cast<double>(b / a), 1.0 / p);
    if (std::abs(ratio - prev) <= cfg.stop_rel_tol * std::abs(ratio) || 2 * n > cfg.max_grid) return ratio;
    prev = ratio;
    n *= 2;
  }
}

double pseudo_hyperbolic(Complex a, Complex b) {
  const double den = std::abs(1.0 - std::conj(b) * a);
  if (den == 0.0) throw Error(ErrorCode::InvalidParam, "pseudo-hyperbolic distance undefined");
  return std::abs(a - b) / den;
}

double gamma_squared(std::int64_t terms) {
  if (terms < 1) throw Error(ErrorCode::InvalidParam, "terms must be >= 1");
  long double prod = 1.0L;
  for (std::int64_t t = 1; t <= terms; ++t) {
    const auto tt = static_cast<long double>(t) * static_cast<long double>(t);
    prod *= tt / (1.0L + tt);
  }
  return static_cast<double>(prod);
}

double carleson_constant(double gamma_sq) {
  const double g = std::sqrt(gamma_sq);
  return 2.0 / (gamma_sq * gamma_sq) * (1.0 - 2.0 * std::log(g));
}

SeparationReport separation_analysis(const NodalFamily& family, std::int64_t gamma_terms) {
  if (!(family.radius < 1.0)) throw Error(ErrorCode::InvalidParam, "separation needs radius < 1");
  const std::size_t count = family.angles.size();
  std::vector<Complex> z(count);
  for (std::size_t k = 0; k < count; ++k) {
    z[k] = std::polar(family.radius, 2.0 * std::numbers::pi * family.angles[k]);
  }
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t j = k + 1; j < count; ++j) {
      if (z[j] == z[k]) throw Error(ErrorCode::DegenerateFamily, "two nodes coincide");
    }
  }

  const bool interleaved = family.kind == NodeKind::Interleaved;
  const std::size_t stride = interleaved ? 2 : 1;
  const auto q = static_cast<std::size_t>(family.q);

  std::vector<double> row_product(count, 1.0);
  std::vector<std::size_t> row_checked(count, 0), row_violations(count, 0);
  std::vector<double> row_margin(count, std::numeric_limits<double>::infinity());
  for_each_block(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      long double prod = 1.0L;
      for (std::size_t j = 0; j < count; ++j) {
        if (j == k) continue;
        const double d = pseudo_hyperbolic(z[j], z[k]);
        prod *= d;
        if (j < k && j % stride == k % stride) {
          const std::size_t diff = (k - j) / stride;
          const auto t = static_cast<double>(std::min(diff, q - diff));
          const double margin = d * d - t * t / (1.0 + t * t);
          ++row_checked[k];
          if (margin < -1e-12) ++row_violations[k];
          row_margin[k] = std::min(row_margin[k], margin);
        }
      }
      row_product[k] = static_cast<double>(prod);
    }
  });

  SeparationReport r;
  r.min_pairwise_product = count < 2 ? 1.0 : *std::min_element(row_product.begin(), row_product.end());
  r.min_pair_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    r.pairs_checked += row_checked[k];
    r.pair_bound_violations += row_violations[k];
    r.min_pair_margin = std::min(r.min_pair_margin, row_margin[k]);
  }
  if (r.pairs_checked == 0) r.min_pair_margin = 0.0;
  r.gamma_sq_partial = gamma_squared(gamma_terms);
  r.lower_bound = interleaved
                      ? r.gamma_sq_partial * family.delta / std::sqrt(1.0 + family.delta * family.delta)
                      : std::sqrt(r.gamma_sq_partial);
  r.lower_bound_holds = r.min_pairwise_product >= r.lower_bound;
  return r;
}

}  // namespace flatlab
