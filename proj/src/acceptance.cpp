#include "flatlab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/kernels.hpp"
#include "flatlab/mahler.hpp"
#include "flatlab/mz.hpp"
#include "flatlab/nodes.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/random.hpp"
#include "flatlab/riesz.hpp"
#include "flatlab/sidon.hpp"
#include "flatlab/singer.hpp"

namespace flatlab {

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TrigPoly random_analytic(SeededRng& rng, std::int64_t degree) {
  std::map<std::int64_t, Complex> c;
  for (std::int64_t k = 0; k <= degree; ++k) c[k] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  if (c[degree] == Complex(0.0)) c[degree] = 1.0;
  return TrigPoly(c);
}

TrigPoly singer_poly(std::int64_t p) { return from_support(singer_set(p).support(), true); }

CriterionResult singer_exactness() {
  const auto t0 = Clock::now();
  int checked = 0;
  bool ok = true;
  for (std::int64_t p = 2; p <= 31; ++p) {
    if (!is_prime(p)) continue;
    const auto s = singer_set(p);
    ok = ok && verify_perfect_difference_set(s.support(), s.q);
    ++checked;
  }
  const bool fast = seconds_since(t0) < 5.0;
  return {1, "Singer sets are perfect difference sets for p <= 31", ok && fast,
          std::to_string(checked) + " primes verified" + (fast ? "" : ", over 5 s")};
}

CriterionResult singer_modulus() {
  double worst = 0.0;
  for (std::int64_t p : {2, 3, 5, 7, 13, 31}) {
    const auto poly = singer_poly(p);
    const auto q = static_cast<std::size_t>(p * p + p + 1);
    const auto vals = evaluate_grid(poly, q);
    const double target = std::sqrt(static_cast<double>(p) / static_cast<double>(p + 1));
    for (std::size_t r = 1; r < q; ++r) worst = std::max(worst, std::abs(std::abs(vals[r]) - target));
  }
  return {2, "|P_S| = sqrt(p/(p+1)) at nonzero q-th roots of unity", worst < 1e-12, "max error " + sci(worst)};
}

CriterionResult node_mean_closed_form() {
  double worst = 0.0;
  bool exact = true;
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    const auto poly = singer_poly(p);
    NodeParams np;
    np.q = p * p + p + 1;
    const auto roots = build_nodes(NodeKind::Roots, np);
    for (double a : {0.5, 1.0, 2.0, 3.0, 3.9}) {
      worst = std::max(worst, std::abs(discrete_mean(poly, roots, a) - singer_node_mean(p, a)));
    }
    exact = exact && singer_node_mean_exact(p, 1) == 1;
  }
  return {3, "discrete mean over roots matches the closed form; alpha = 2 gives 1 exactly",
          worst < 1e-12 && exact, "max error " + sci(worst) + (exact ? ", exact alpha=2 mean is 1" : ", exact mean != 1")};
}

CriterionResult node_mean_rate() {
  const double d5 = 1.0 - singer_node_mean(5, 1.0);
  const double d199 = 1.0 - singer_node_mean(199, 1.0);
  double worst_ratio = 0.0;
  bool within = true;
  for (std::int64_t p : {13, 31, 61, 127, 199}) {
    const double pd = static_cast<double>(p);
    const double dev = std::abs((1.0 - singer_node_mean(p, 1.0)) - 1.0 / (2.0 * pd));
    const double tol = 2.0 / std::pow(pd, 1.5);
    worst_ratio = std::max(worst_ratio, dev / tol);
    within = within && dev <= tol;
  }
  return {4, "1 - mean(p, 1) decreases and tracks 1/(2p) within 2/p^{3/2}", d199 < d5 && within,
          "gap(5) " + sci(d5) + ", gap(199) " + sci(d199) + ", worst deviation/tolerance " + sci(worst_ratio)};
}

CriterionResult beta_bound() {
  const TrigPoly poly(std::map<std::int64_t, Complex>{{0, 1.0 / std::sqrt(2.0)}, {1, 1.0 / std::sqrt(2.0)}});
  const double l1 = lp_norm(poly, 1.0).value;
  const double err = std::abs(l1 - 2.0 * std::sqrt(2.0) / std::numbers::pi);
  return {5, "L1 norm of (1+z)/sqrt(2) equals 2 sqrt(2)/pi", err < 1e-8, "error " + sci(err)};
}

CriterionResult mahler_examples() {
  double worst_cont = 0.0, worst_disc = 0.0;
  for (std::int64_t n : {3, 10}) {
    const auto poly = TrigPoly::cosine_bump(0.6, n);
    worst_cont = std::max(worst_cont, std::abs(mahler_measure(poly).value - 0.9));
    worst_disc = std::max(worst_disc, std::abs(mahler_discrete(poly, static_cast<std::size_t>(2 * n)).value - 0.8));
  }
  return {6, "Mahler measure of 1 + 0.6 cos(n theta): 0.9 continuous, 0.8 sampled",
          worst_cont < 1e-10 && worst_disc < 1e-10,
          "continuous error " + sci(worst_cont) + ", sampled error " + sci(worst_disc)};
}

CriterionResult l4_obstruction_check(std::uint64_t seed) {
  SeededRng rng(seed ^ 0x4c34);
  std::vector<SupportSet> supports;
  for (int i = 0; i < 100; ++i) {
    const auto n = rng.uniform_int(2, 12);
    std::vector<std::int64_t> e;
    while (static_cast<std::int64_t>(e.size()) < n) {
      const auto x = rng.uniform_int(0, 60);
      if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
    }
    supports.push_back(SupportSet::from_unsorted(e));
  }
  for (std::int64_t p = 2; p <= 31; ++p) {
    if (is_prime(p)) supports.push_back(singer_set(p).support());
  }
  double worst = 0.0;
  bool bound_ok = true, equality_ok = true;
  for (const auto& s : supports) {
    const auto ob = l4_obstruction(s);
    const auto poly = from_support(s, true);
    const double quad = circle_mean(poly, [](Complex z) {
                          const double d = std::norm(z) - 1.0;
                          return d * d;
                        }).value;
    worst = std::max(worst, std::abs(quad - ob.value.get_d()));
    bound_ok = bound_ok && ob.value >= ob.lower_bound;
    equality_ok = equality_ok && ((ob.value == ob.lower_bound) == is_sidon(s));
  }
  return {7, "exact L4 obstruction matches quadrature, respects (n-1)/n, equality iff Sidon",
          worst < 1e-9 && bound_ok && equality_ok,
          std::to_string(supports.size()) + " supports, max error " + sci(worst)};
}

CriterionResult flatness_trend() {
  const auto t0 = Clock::now();
  QuadratureConfig cfg;
  cfg.max_grid = std::size_t{1} << 20;
  std::string detail;
  double d5 = 0.0, d199 = 0.0;
  for (std::int64_t p : {5, 13, 31, 61, 127, 199}) {
    const double d = 1.0 - lp_norm(singer_poly(p), 1.0, cfg).value;
    if (p == 5) d5 = d;
    if (p == 199) d199 = d;
    detail += (detail.empty() ? "" : ", ") + std::string("p=") + std::to_string(p) + ": " + sci(d);
  }
  const bool fast = seconds_since(t0) < 120.0;
  return {8, "L1 flatness defect of Singer polynomials shrinks from p=5 to p=199", d199 < d5 && fast,
          detail + (fast ? "" : ", over 2 min")};
}

CriterionResult mz_bernstein(std::uint64_t seed) {
  SeededRng rng(seed ^ 0x4d5a);
  int mz_fail = 0;
  for (int i = 0; i < 200; ++i) {
    const auto deg = rng.uniform_int(1, 64);
    const double kappa = std::array{1.0, 2.0, 4.0}[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    const double alpha = rng.uniform_int(1, 2);
    const auto poly = random_analytic(rng, deg);
    const auto m = static_cast<std::size_t>(std::ceil((1.0 + kappa) * 2.0 * static_cast<double>(deg)));
    const double offset = rng.uniform();
    if (!mz_upper_check(poly, ConvexPhi::power(alpha), kappa, m, offset).holds) ++mz_fail;
  }
  int bern_fail = 0;
  for (int i = 0; i < 200; ++i) {
    const auto deg = rng.uniform_int(1, 64);
    const double p = std::array{1.0, 2.0, 4.0}[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    const auto poly = random_analytic(rng, deg);
    if (bernstein_ratio(poly, p) > static_cast<double>(deg) + 1e-9) ++bern_fail;
  }
  double worst_eq = 0.0;
  for (std::int64_t n : {1, 3, 8, 20}) {
    const TrigPoly c(std::map<std::int64_t, Complex>{{-n, 0.5}, {n, 0.5}});
    for (double p : {1.0, 2.0, 4.0}) {
      worst_eq = std::max(worst_eq, std::abs(bernstein_ratio(c, p) - static_cast<double>(n)));
    }
  }
  return {9, "sampling upper bound and Bernstein inequality on seeded polynomials",
          mz_fail == 0 && bern_fail == 0 && worst_eq < 1e-9,
          "sampling failures " + std::to_string(mz_fail) + "/200, Bernstein failures " + std::to_string(bern_fail) +
              "/200, cos(nx) equality error " + sci(worst_eq)};
}

CriterionResult separation() {
  const double g = gamma_squared(1000000);
  const double oracle = std::numbers::pi / std::sinh(std::numbers::pi);
  std::size_t pairs = 0, violations = 0;
  for (std::int64_t q : {7, 13, 57}) {
    NodeParams np;
    np.q = q;
    const auto rep = separation_analysis(build_nodes(NodeKind::Roots, np));
    pairs += rep.pairs_checked;
    violations += rep.pair_bound_violations;
  }
  const double err = std::abs(g - oracle);
  return {10, "gamma^2 = pi/sinh(pi) and pairwise separation of roots families", err < 1e-6 && violations == 0,
          "gamma^2 error " + sci(err) + ", " + std::to_string(violations) + " violations in " + std::to_string(pairs) +
              " pairs"};
}

CriterionResult outer_and_u() {
  double worst = 0.0;
  for (auto [r, t] : {std::pair{0.3, 60}, std::pair{0.6, 120}, std::pair{0.9, 400}}) {
    worst = std::max(worst, outer_modulus_check(r, 0.0, t, 4096));
  }
  bool u_ok = true;
  double worst_ratio = 0.0;
  for (double kappa : {1.0, 4.0}) {
    for (std::int64_t q : {7, 13, 57}) {
      const auto u = helson_szego_u_bound(q, kappa, 0.1);
      u_ok = u_ok && u.holds;
      worst_ratio = std::max(worst_ratio, u.sup_u / u.bound);
    }
  }
  return {11, "outer modulus series identity and bounded u", worst < 1e-10 && u_ok,
          "series error " + sci(worst) + ", max sup|u|/bound " + sci(worst_ratio)};
}

CriterionResult riesz_exactness() {
  IntegerForm form;
  form.weights = {{0, 1}, {1, 1}};
  form.denominator = 2;
  const TrigPoly half(form);
  const auto spec = dynamical_origin_dilations(std::vector<TrigPoly>(10, half));
  bool dil_ok = true;
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto s = dynamical_origin_dilations(std::vector<TrigPoly>(k, half));
    for (std::size_t j = 0; j < k; ++j) dil_ok = dil_ok && s.factors[j].dilation == (std::int64_t{1} << j);
  }
  bool zero_ok = true;
  for (std::size_t K = 0; K <= 10; ++K) zero_ok = zero_ok && partial_product(spec, K).coefficient(0) == 1;
  const auto two = partial_product(spec, 2);
  const std::map<std::int64_t, Rational> table{{-3, Rational(1, 4)}, {-2, Rational(1, 2)}, {-1, Rational(3, 4)},
                                               {0, Rational(1)},     {1, Rational(3, 4)},  {2, Rational(1, 2)},
                                               {3, Rational(1, 4)}};
  const bool table_ok = two.coefficients() == table;
  const double m8 = mahler_product(spec, 8).value;
  const double merr = std::abs(m8 - std::ldexp(1.0, -8));
  return {12, "dyadic Riesz products: exact coefficients, dilations, Mahler product",
          dil_ok && zero_ok && table_ok && merr < 1e-9,
          std::string(zero_ok ? "c_0 = 1 for K <= 10" : "c_0 != 1") + (table_ok ? ", K=2 table exact" : ", K=2 table wrong") +
              (dil_ok ? ", dilations 2^j" : ", dilations wrong") + ", Mahler product error " + sci(merr)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<std::function<CriterionResult()>> all{
      singer_exactness,
      singer_modulus,
      node_mean_closed_form,
      node_mean_rate,
      beta_bound,
      mahler_examples,
      [seed] { return l4_obstruction_check(seed); },
      flatness_trend,
      [seed] { return mz_bernstein(seed); },
      separation,
      outer_and_u,
      riesz_exactness,
  };
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      out.push_back(all[i]());
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(i + 1), "criterion " + std::to_string(i + 1), false,
                     std::string("exception: ") + e.what()});
    }
  }
  return out;
}

}  // namespace flatlab
