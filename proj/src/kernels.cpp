#include "flatlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesSwitch = 1e-8;
constexpr double kTailTarget = 1e-15;

void validate(const KernelSpec& s) {
  if (s.n < 0) throw Error(ErrorCode::InvalidParam, "kernel order must be >= 0");
  if (s.kind == KernelKind::ValleePoussinOrder && s.h < 1) {
    throw Error(ErrorCode::InvalidParam, "kernel order h must be >= 1");
  }
  if ((s.kind == KernelKind::Poisson || s.kind == KernelKind::ConjugatePoisson) && !(s.r > 0.0 && s.r < 1.0)) {
    throw Error(ErrorCode::InvalidParam, "Poisson radius must lie in (0,1)");
  }
}

double fejer(std::int64_t n, double x) {
  const double s = std::sin(kPi * x);
  const auto n1 = static_cast<double>(n + 1);
  if (std::abs(s) < kSeriesSwitch) {
    double sum = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) sum += 2.0 * (1.0 - static_cast<double>(k) / n1) * std::cos(2.0 * kPi * k * x);
    return sum;
  }
  const double t = std::sin(kPi * n1 * x) / s;
  return t * t / n1;
}

double dirichlet(std::int64_t n, double x) {
  const double s = std::sin(kPi * x);
  if (std::abs(s) < kSeriesSwitch) {
    double sum = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) sum += 2.0 * std::cos(2.0 * kPi * k * x);
    return sum;
  }
  return std::sin(kPi * static_cast<double>(2 * n + 1) * x) / s;
}

void add_fejer(std::map<std::int64_t, Rational>& out, std::int64_t n, const Rational& w) {
  if (n < 0) return;
  for (std::int64_t k = -n; k <= n; ++k) {
    out[k] += w * make_rational(n + 1 - std::abs(k), n + 1);
  }
}

std::map<std::int64_t, Rational> drop_zeros(std::map<std::int64_t, Rational> m) {
  for (auto it = m.begin(); it != m.end();) {
    it->second.canonicalize();
    it = it->second == 0 ? m.erase(it) : std::next(it);
  }
  return m;
}

int auto_truncation(double rho, std::int64_t q) {
  return static_cast<int>(std::ceil(std::log(kTailTarget) / (static_cast<double>(q) * std::log(rho)))) + 1;
}

int resolve_truncation(int requested, double rho, std::int64_t q) {
  const int needed = auto_truncation(rho, q);
  if (requested <= 0) return needed;
  if (std::pow(rho, static_cast<double>(requested) * static_cast<double>(q)) >= kTailTarget) {
    throw Error(ErrorCode::InvalidParam, "truncation too short: need at least " + std::to_string(needed));
  }
  return requested;
}

// e^{i l q theta_j} with theta_j = 2 pi j / grid, reduced exactly.
double grid_phase(std::int64_t l, std::int64_t q, std::size_t j, std::size_t grid) {
  const auto g = static_cast<unsigned __int128>(grid);
  const auto k = static_cast<unsigned __int128>(l) * static_cast<unsigned __int128>(q) * j % g;
  return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(grid);
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

double kernel_eval(const KernelSpec& spec, double x) {
  validate(spec);
  switch (spec.kind) {
    case KernelKind::Dirichlet:
      return dirichlet(spec.n, x);
    case KernelKind::Fejer:
      return fejer(spec.n, x);
    case KernelKind::ValleePoussin:
      return 2.0 * fejer(2 * spec.n + 1, x) - fejer(spec.n, x);
    case KernelKind::ValleePoussinOrder: {
      const double w = static_cast<double>(spec.n) / static_cast<double>(spec.h);
      const double low = spec.n >= 1 ? fejer(spec.n - 1, x) : 0.0;
      return (1.0 + w) * fejer(spec.n + spec.h - 1, x) - w * low;
    }
    case KernelKind::Poisson: {
      const double r = spec.r;
      return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(2.0 * kPi * x) + r * r);
    }
    case KernelKind::ConjugatePoisson: {
      const double r = spec.r;
      return 2.0 * r * std::sin(2.0 * kPi * x) / (1.0 - 2.0 * r * std::cos(2.0 * kPi * x) + r * r);
    }
  }
  return 0.0;
}

std::map<std::int64_t, Rational> kernel_coefficients(const KernelSpec& spec) {
  validate(spec);
  std::map<std::int64_t, Rational> out;
  switch (spec.kind) {
    case KernelKind::Dirichlet:
      for (std::int64_t k = -spec.n; k <= spec.n; ++k) out[k] = 1;
      break;
    case KernelKind::Fejer:
      add_fejer(out, spec.n, 1);
      break;
    case KernelKind::ValleePoussin:
      add_fejer(out, 2 * spec.n + 1, 2);
      add_fejer(out, spec.n, -1);
      break;
    case KernelKind::ValleePoussinOrder: {
      const Rational w = make_rational(spec.n, spec.h);
      add_fejer(out, spec.n + spec.h - 1, 1 + w);
      add_fejer(out, spec.n - 1, -w);
      break;
    }
    case KernelKind::Poisson:
    case KernelKind::ConjugatePoisson:
      throw Error(ErrorCode::InvalidParam, "Poisson kernels have infinitely many coefficients");
  }
  return drop_zeros(std::move(out));
}

Complex step_integral(const std::function<Complex(double)>& f, const StepMeasure& measure) {
  if (measure.m < 1) throw Error(ErrorCode::InvalidParam, "step measure needs m >= 1");
  std::complex<long double> sum = 0.0L;
  for (std::int64_t j = 0; j < measure.m; ++j) {
    const Complex v = f(measure.xi0 + static_cast<double>(j) / static_cast<double>(measure.m));
    sum += std::complex<long double>(v.real(), v.imag());
  }
  sum /= static_cast<long double>(measure.m);
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

Complex step_integral(const TrigPoly& poly, const StepMeasure& measure) {
  if (measure.m < 1) throw Error(ErrorCode::InvalidParam, "step measure needs m >= 1");
  Complex sum = 0.0;
  for (const auto& [k, c] : poly.coefficients()) {
    if (k % measure.m != 0) continue;
    sum += c * std::polar(1.0, 2.0 * kPi * frac(static_cast<double>(k) * measure.xi0));
  }
  return sum;
}

Rational step_integral_exact(const std::map<std::int64_t, Rational>& coeffs, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidParam, "step measure needs m >= 1");
  Rational sum = 0;
  for (const auto& [k, c] : coeffs) {
    if (k % m == 0) sum += c;
  }
  sum.canonicalize();
  return sum;
}

std::map<std::int64_t, Complex> conjugate_function(const std::map<std::int64_t, Complex>& coeffs, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorCode::InvalidParam, "r must lie in (0,1]");
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : coeffs) {
    if (k == 0) continue;
    const double scale = r == 1.0 ? 1.0 : std::pow(r, static_cast<double>(std::abs(k)));
    const Complex m(0.0, k > 0 ? -scale : scale);
    const Complex v = m * c;
    if (v != Complex(0.0)) out[k] = v;
  }
  return out;
}

double outer_modulus_check(double r, double theta0, int truncation, std::size_t grid) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorCode::InvalidParam, "r must lie in [0,1)");
  if (truncation < 1 || grid < 1) throw Error(ErrorCode::InvalidParam, "truncation and grid must be >= 1");
  std::vector<double> err(grid);
  for_each_block(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid) - theta0;
      const double exact = std::log1p(r * r - 2.0 * r * std::cos(phi));
      long double series = 0.0L;
      for (int n = truncation; n >= 1; --n) {
        series += static_cast<long double>(std::pow(r, n) / n * std::cos(n * phi));
      }
      err[j] = std::abs(exact + 2.0 * static_cast<double>(series));
    }
  });
  return *std::max_element(err.begin(), err.end());
}

HelsonSzegoU helson_szego_u_bound(std::int64_t q, double kappa, double delta, int truncation, std::size_t grid,
                                  double phase_scale) {
  if (q < 1) throw Error(ErrorCode::InvalidParam, "q must be >= 1");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidParam, "kappa must be positive");
  if (grid < 1) throw Error(ErrorCode::InvalidParam, "grid must be >= 1");
  HelsonSzegoU out;
  const auto qd = static_cast<double>(q);
  out.rho_n = 1.0 - 1.0 / (2.0 * qd);
  out.rho_kappa = std::max(0.5, 1.0 - kappa / (2.0 * qd));
  out.truncation = resolve_truncation(truncation, std::max(out.rho_n, out.rho_kappa), q);
  const int L = out.truncation;

  std::vector<Complex> weight(L + 1);
  for (int l = 1; l <= L; ++l) {
    const double lq = static_cast<double>(l) * qd;
    const double a = (std::pow(out.rho_kappa, lq) - std::pow(out.rho_n, lq)) / l;
    weight[l] = a * (1.0 + std::polar(1.0, -2.0 * kPi * frac(l * delta * phase_scale)));
  }

  std::vector<double> series(grid);
  for_each_block(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      long double s = 0.0L;
      for (int l = L; l >= 1; --l) {
        s += static_cast<long double>((weight[l] * std::polar(1.0, grid_phase(l, q, j, grid))).real());
      }
      series[j] = 2.0 * static_cast<double>(s);
    }
  });
  for (double v : series) out.sup_u = std::max(out.sup_u, std::abs(v));
  out.bound = 2.0 / (1.0 - std::exp(-kappa / 2.0)) + 2.0 / (1.0 - std::exp(-0.5));
  out.holds = out.sup_u <= out.bound;

  if (phase_scale == 1.0) {
    std::vector<double> nodes;
    for (std::int64_t r = 0; r < q; ++r) {
      nodes.push_back(2.0 * kPi * static_cast<double>(r) / qd);
      nodes.push_back(2.0 * kPi * (static_cast<double>(r) + delta) / qd);
    }
    std::vector<double> disc(grid);
    const double rn = out.rho_n, rk = out.rho_kappa;
    for_each_block(grid, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid);
        long double s = 0.0L;
        for (double t : nodes) {
          const double c = std::cos(theta - t);
          s += static_cast<long double>(std::log1p(rn * rn - 2.0 * rn * c) - std::log1p(rk * rk - 2.0 * rk * c));
        }
        disc[j] = std::abs(static_cast<double>(s) - series[j]);
      }
    });
    out.direct_discrepancy = *std::max_element(disc.begin(), disc.end());
  }
  return out;
}

HelsonSzegoV helson_szego_v_report(std::int64_t q, double kappa, double delta, int truncation, std::size_t grid) {
  if (q < 1) throw Error(ErrorCode::InvalidParam, "q must be >= 1");
  if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidParam, "kappa must be positive");
  if (grid < 1) throw Error(ErrorCode::InvalidParam, "grid must be >= 1");
  HelsonSzegoV out;
  const auto qd = static_cast<double>(q);
  const double rho = std::max(0.5, 1.0 - kappa / (2.0 * qd));
  out.truncation = resolve_truncation(truncation, rho, q);
  const int L = out.truncation;

  std::vector<double> a(L + 1), shift(L + 1);
  for (int l = 1; l <= L; ++l) {
    a[l] = 2.0 * std::pow(rho, static_cast<double>(l) * qd) / l;
    shift[l] = 2.0 * kPi * frac(l * delta);  // l q (2 pi delta / q)
  }
  std::vector<double> vi(grid), vii(grid);
  for_each_block(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      long double si = 0.0L, sii = 0.0L;
      for (int l = L; l >= 1; --l) {
        const double ph = grid_phase(l, q, j, grid);
        si += static_cast<long double>(a[l] * std::sin(ph));
        sii += static_cast<long double>(a[l] * std::sin(ph - shift[l]));
      }
      vi[j] = static_cast<double>(si);
      vii[j] = static_cast<double>(sii) - 2.0 * kPi * delta;
    }
  });
  for (std::size_t j = 0; j < grid; ++j) {
    out.sup_i = std::max(out.sup_i, std::abs(vi[j]));
    out.sup_ii = std::max(out.sup_ii, std::abs(vii[j]));
    out.sup_v = std::max(out.sup_v, std::abs(vi[j] + vii[j]));
  }
  out.i_exact_bound = -4.0 * std::log1p(-std::pow(rho, qd));
  out.i_bound = -4.0 * std::log1p(-std::exp(-kappa / 2.0));
  out.ii_bound = 2.0 * kPi * delta + out.i_bound;
  out.i_exact_holds = out.sup_i <= out.i_exact_bound;
  if (kappa <= qd) {
    out.i_bound_holds = out.sup_i <= 1.1 * out.i_bound;
    out.ii_bound_holds = out.sup_ii <= 1.1 * out.ii_bound;
  }
  out.below_half_pi = out.sup_v < kPi / 2.0;
  return out;
}

}  // namespace flatlab
