#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "flatlab/rational.hpp"
#include "flatlab/sidon.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

/// Uniform-grid quadrature on the circle with grid doubling.
struct QuadratureConfig {
  int initial_grid_multiplier = 8;  // first grid ~ multiplier * degree span
  double stop_rel_tol = 1e-10;
  std::size_t max_grid = std::size_t{1} << 20;
  std::size_t min_grid = 16;
  /// Grid sizes are multiples of this; 1 means powers of two.
  std::size_t grid_quantum = 1;
  /// Mahler only: evaluate P(z) instead of P(z^g), g = gcd of frequency gaps.
  bool reduce_dilation = true;
  /// Mahler only: largest span for the Jensen root-product route.
  std::int64_t jensen_max_degree = 64;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;  // change over the last doubling
  std::size_t grid_size = 0;
  bool converged = false;
};

/// First grid: strictly larger than twice the span, at least
/// initial_grid_multiplier * span.
std::size_t initial_grid(const TrigPoly& poly, const QuadratureConfig& cfg);

/// Mean of f(P(z)) over the circle by the trapezoid rule, doubling the grid
/// until the relative change drops below stop_rel_tol.
QuadratureResult circle_mean(const TrigPoly& poly, const std::function<double(Complex)>& f,
                             const QuadratureConfig& cfg = {});

/// (integral |P|^p dz)^{1/p}.
QuadratureResult lp_norm(const TrigPoly& poly, double exponent, const QuadratureConfig& cfg = {});

/// (sum_i w_i v_i^delta)^{1/delta}.
double quasi_norm(std::span<const double> values, std::span<const double> weights, double delta);

struct NormReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double flatness_defect = 0.0;        // 1 - l1
  double sq_mod_l2_sq = 0.0;           // || |P|^2 - 1 ||_2^2
  double abs_minus_one_l2_sq = 0.0;    // || |P| - 1 ||_2^2
  double sq_mod_minus_one_l1 = 0.0;    // || |P|^2 - 1 ||_1
  double identity_residual = 0.0;      // | || |P|-1 ||_2^2 - 2 (1 - l1) |
  bool identity_holds = false;
  bool cauchy_schwarz_holds = false;   // || |P|^2-1 ||_1 <= 2 || |P|-1 ||_2
  std::size_t grid_size_used = 0;
  double est_error = 0.0;
  bool converged = false;
};

/// Requires ||P||_2 = 1 within 1e-9 (NotNormalized otherwise).
NormReport flatness_report(const TrigPoly& poly, const QuadratureConfig& cfg = {});

/// Exact |P|^2 for a polynomial carrying an IntegerForm (InvalidParam otherwise).
RationalTrigPoly squared_modulus_expansion(const TrigPoly& poly);

struct L4Obstruction {
  Rational value;        // || |P_n|^2 - 1 ||_2^2 = (2/n^2) sum m(j)^2
  Rational lower_bound;  // (n-1)/n
};

L4Obstruction l4_obstruction(const SupportSet& support);

}  // namespace flatlab
