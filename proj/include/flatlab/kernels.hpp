#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "flatlab/rational.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

enum class KernelKind { Dirichlet, Fejer, ValleePoussin, ValleePoussinOrder, Poisson, ConjugatePoisson };

struct KernelSpec {
  KernelKind kind = KernelKind::Dirichlet;
  std::int64_t n = 0;
  std::int64_t h = 1;  // ValleePoussinOrder only
  double r = 0.5;      // Poisson kinds only
};

/// Kernel value at x (in turns). Closed forms, with the exponential sum used
/// when |sin(pi x)| < 1e-8.
double kernel_eval(const KernelSpec& spec, double x);

/// Exact Fourier coefficients of the polynomial kernels (InvalidParam for
/// the Poisson kinds).
std::map<std::int64_t, Rational> kernel_coefficients(const KernelSpec& spec);

/// Jump points xi0 + j/m, j = 0..m-1 (turns), each with mass 1/m.
struct StepMeasure {
  std::int64_t m = 1;
  double xi0 = 0.0;
};

Complex step_integral(const std::function<Complex(double)>& f, const StepMeasure& measure);

/// Same integral for a polynomial, from its coefficients: sum over k = 0 mod m
/// of c_k e^{2 pi i k xi0}.
Complex step_integral(const TrigPoly& poly, const StepMeasure& measure);

/// Exact version at xi0 = 0: sum of c_k over k = 0 mod m.
Rational step_integral_exact(const std::map<std::int64_t, Rational>& coeffs, std::int64_t m);

/// c_n -> -i sign(n) r^{|n|} c_n, c_0 -> 0.
std::map<std::int64_t, Complex> conjugate_function(const std::map<std::int64_t, Complex>& coeffs,
                                                   double r = 1.0);

/// Max over theta_j = 2 pi j / grid of
/// |log|1 - r e^{i(theta - theta0)}|^2 + 2 sum_{n<=truncation} r^n cos(n(theta - theta0)) / n|.
double outer_modulus_check(double r, double theta0, int truncation, std::size_t grid);

struct HelsonSzegoU {
  double sup_u = 0.0;
  double bound = 0.0;  // 2/(1 - e^{-kappa/2}) + 2/(1 - e^{-1/2})
  bool holds = false;
  double rho_n = 0.0;
  double rho_kappa = 0.0;
  int truncation = 0;
  /// Series against the log-product over the 2q nodes (phase_scale = 1 only).
  std::optional<double> direct_discrepancy;
};

/// u(theta) = 2 Re sum_l ((rho_kappa^{lq} - rho_n^{lq}) / l) e^{ilq theta}
///            (1 + e^{-2 pi i l delta phase_scale})
/// with n = 2q - 1, rho_n = 1 - 1/(2q), rho_kappa = max(1/2, 1 - kappa/(2q)).
/// truncation <= 0 picks the smallest L with max(rho)^{Lq} < 1e-15;
/// an explicit truncation short of that is InvalidParam.
HelsonSzegoU helson_szego_u_bound(std::int64_t q, double kappa, double delta, int truncation = 0,
                                  std::size_t grid = 4096, double phase_scale = 1.0);

struct HelsonSzegoV {
  double sup_i = 0.0;
  double sup_ii = 0.0;
  double sup_v = 0.0;
  double i_exact_bound = 0.0;  // -4 log(1 - rho_kappa^q)
  double i_bound = 0.0;        // -4 log(1 - e^{-kappa/2})
  double ii_bound = 0.0;       // 2 pi delta - 4 log(1 - e^{-kappa/2})
  bool i_exact_holds = false;
  /// Asserted with 10% slack only when kappa <= q.
  std::optional<bool> i_bound_holds;
  std::optional<bool> ii_bound_holds;
  bool below_half_pi = false;
  int truncation = 0;
};

/// I(theta) = sum_l 2 rho^{lq} sin(lq theta)/l,
/// II(theta) = sum_l 2 rho^{lq} sin(lq(theta - 2 pi delta / q))/l - 2 pi delta,
/// v = I + II, rho = rho_kappa.
HelsonSzegoV helson_szego_v_report(std::int64_t q, double kappa, double delta, int truncation = 0,
                                   std::size_t grid = 4096);

}  // namespace flatlab
