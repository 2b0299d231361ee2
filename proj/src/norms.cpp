#include "flatlab/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

std::size_t round_up_grid(std::size_t n, std::size_t quantum) {
  if (quantum <= 1) {
    std::size_t g = 1;
    while (g < n) g <<= 1;
    return g;
  }
  return ((n + quantum - 1) / quantum) * quantum;
}

bool close_enough(double now, double before, double tol) {
  const double diff = std::abs(now - before);
  return diff <= tol * std::abs(now) || diff <= 1e-300;
}

// Several circle means of one polynomial on shared grids; stops once every
// mean has converged or the grid budget is spent.
std::vector<QuadratureResult> circle_means(const TrigPoly& poly,
                                           const std::vector<std::function<double(Complex)>>& fs,
                                           const QuadratureConfig& cfg) {
  const std::size_t k = fs.size();
  std::size_t n = initial_grid(poly, cfg);
  std::vector<long double> sums(k, 0.0L);
  auto accumulate = [&](const std::vector<Complex>& vals) {
    for (std::size_t i = 0; i < k; ++i) {
      sums[i] += block_sum(vals.size(), [&](std::size_t j) {
        return static_cast<long double>(fs[i](vals[j]));
      });
    }
  };
  accumulate(evaluate_grid(poly, n, 0.0));
  std::vector<QuadratureResult> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].value = static_cast<double>(sums[i] / static_cast<long double>(n));
    out[i].grid_size = n;
    out[i].est_error = std::abs(out[i].value);
  }
  while (2 * n <= cfg.max_grid) {
    // The doubled grid is the old one plus the midpoints.
    accumulate(evaluate_grid(poly, n, 0.5 / static_cast<double>(n)));
    n *= 2;
    bool all = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double now = static_cast<double>(sums[i] / static_cast<long double>(n));
      out[i].est_error = std::abs(now - out[i].value);
      out[i].converged = close_enough(now, out[i].value, cfg.stop_rel_tol);
      out[i].value = now;
      out[i].grid_size = n;
      all = all && out[i].converged;
    }
    if (all) break;
  }
  return out;
}

}  // namespace

std::size_t initial_grid(const TrigPoly& poly, const QuadratureConfig& cfg) {
  const auto span = static_cast<std::size_t>(std::max<std::int64_t>(poly.span(), 1));
  std::size_t n = std::max<std::size_t>(cfg.min_grid, static_cast<std::size_t>(cfg.initial_grid_multiplier) * span);
  n = std::max(n, 2 * span + 1);
  return round_up_grid(n, cfg.grid_quantum);
}

QuadratureResult circle_mean(const TrigPoly& poly, const std::function<double(Complex)>& f,
                             const QuadratureConfig& cfg) {
  return circle_means(poly, {f}, cfg).front();
}

QuadratureResult lp_norm(const TrigPoly& poly, double exponent, const QuadratureConfig& cfg) {
  if (!(exponent > 0.0)) throw Error(ErrorCode::InvalidParam, "exponent must be positive");
  QuadratureResult r;
  if (exponent == 2.0) {
    r = circle_mean(poly, [](Complex z) { return std::norm(z); }, cfg);
    // Band-limited: the first grid is exact, so Parseval must agree.
    const double parseval = poly.l2_norm_squared();
    if (std::abs(r.value - parseval) > 1e-9 * std::max(1.0, parseval)) {
      throw std::logic_error("L2 quadrature disagrees with Parseval");
    }
  } else {
    r = circle_mean(poly, [exponent](Complex z) { return std::pow(std::abs(z), exponent); }, cfg);
  }
  const double mean = r.value;
  r.value = std::pow(mean, 1.0 / exponent);
  r.est_error = mean > 0.0 ? r.value / exponent * r.est_error / mean : r.est_error;
  return r;
}

double quasi_norm(std::span<const double> values, std::span<const double> weights, double delta) {
  if (values.size() != weights.size()) throw Error(ErrorCode::InvalidParam, "values/weights size mismatch");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParam, "delta must be positive");
  long double s = 0.0L;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) throw Error(ErrorCode::InvalidParam, "values must be nonnegative");
    s += static_cast<long double>(weights[i]) * std::pow(static_cast<long double>(values[i]), delta);
  }
  return static_cast<double>(std::pow(s, 1.0L / delta));
}

NormReport flatness_report(const TrigPoly& poly, const QuadratureConfig& cfg) {
  const double l2sq = poly.l2_norm_squared();
  if (std::abs(l2sq - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "||P||_2^2 = " + std::to_string(l2sq));
  }
  const bool exact = poly.integer_form().has_value();
  std::vector<std::function<double(Complex)>> fs = {
      [](Complex z) { return std::abs(z); },
      [](Complex z) { return std::norm(z); },
      [](Complex z) {
        const double d = std::abs(z) - 1.0;
        return d * d;
      },
      [](Complex z) { return std::abs(std::norm(z) - 1.0); },
  };
  if (!exact) {
    fs.push_back([](Complex z) {
      const double d = std::norm(z) - 1.0;
      return d * d;
    });
  }
  const auto r = circle_means(poly, fs, cfg);

  NormReport rep;
  rep.l1 = r[0].value;
  rep.l2 = std::sqrt(r[1].value);
  rep.flatness_defect = 1.0 - rep.l1;
  rep.abs_minus_one_l2_sq = r[2].value;
  rep.sq_mod_minus_one_l1 = r[3].value;
  if (exact) {
    const auto sq = squared_modulus_expansion(poly);
    Rational s(0);
    for (const auto& [k, c] : sq.coefficients()) {
      if (k != 0) s += c * c;
    }
    rep.sq_mod_l2_sq = s.get_d();
  } else {
    rep.sq_mod_l2_sq = r[4].value;
  }
  rep.identity_residual = std::abs(rep.abs_minus_one_l2_sq - 2.0 * (1.0 - rep.l1));
  const double tol = 2.0 * (2.0 * r[0].est_error + r[2].est_error) + 1e-12;
  rep.identity_holds = rep.identity_residual <= tol;
  rep.cauchy_schwarz_holds =
      rep.sq_mod_minus_one_l1 <= 2.0 * std::sqrt(rep.abs_minus_one_l2_sq) + 2.0 * r[3].est_error + 1e-12;
  rep.grid_size_used = r[0].grid_size;
  rep.est_error = r[0].est_error;
  rep.converged = r[0].converged && r[2].converged && r[3].converged;
  return rep;
}

RationalTrigPoly squared_modulus_expansion(const TrigPoly& poly) {
  const auto& form = poly.integer_form();
  if (!form) throw Error(ErrorCode::InvalidParam, "exact |P|^2 needs an integer-weighted polynomial");
  std::map<std::int64_t, BigInt> acc;
  for (const auto& [i, wi] : form->weights) {
    for (const auto& [j, wj] : form->weights) {
      acc[i - j] += BigInt(static_cast<long>(wi)) * BigInt(static_cast<long>(wj));
    }
  }
  std::map<std::int64_t, Rational> out;
  const BigInt den(static_cast<long>(form->denominator));
  for (const auto& [d, v] : acc) out.emplace(d, Rational(v, den));
  return RationalTrigPoly(std::move(out));
}

L4Obstruction l4_obstruction(const SupportSet& support) {
  const auto n = static_cast<long>(support.size());
  if (n < 2) throw Error(ErrorCode::InvalidParam, "l4_obstruction needs |support| >= 2");
  const auto st = difference_stats(support);
  BigInt sum_sq(0);
  for (const auto& [d, m] : st.multiplicities) sum_sq += BigInt(static_cast<long>(m)) * static_cast<long>(m);
  L4Obstruction r;
  r.value = Rational(2 * sum_sq, BigInt(n * n));
  r.value.canonicalize();
  r.lower_bound = make_rational(n - 1, n);
  return r;
}

}  // namespace flatlab
