#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/mz.hpp"
#include "flatlab/random.hpp"

using namespace flatlab;

namespace {

TrigPoly random_analytic(SeededRng& rng, std::int64_t degree) {
  std::map<std::int64_t, Complex> c;
  for (std::int64_t k = 0; k <= degree; ++k) c[k] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return TrigPoly(c);
}

NodalFamily roots(std::int64_t q) {
  NodeParams np;
  np.q = q;
  return build_nodes(NodeKind::Roots, np);
}

// sinh(pi)/pi = prod (1 + 1/t^2); evaluated through the exponential series.
double inverse_sinh_product() {
  const double pi = std::numbers::pi;
  const double e = std::exp(pi);
  return pi / ((e - 1.0 / e) / 2.0);
}

}  // namespace

TEST(MzUpper, Examples) {
  const auto one = TrigPoly::constant(1.0);
  const auto r = mz_upper_check(one, ConvexPhi::power(1.0), 1.0, 4);
  EXPECT_DOUBLE_EQ(r.lhs, 0.5);
  EXPECT_DOUBLE_EQ(r.rhs, 1.0);
  EXPECT_TRUE(r.holds);
  for (double kappa : {0.5, 1.0, 3.0}) {
    const std::int64_t n = 5;
    const auto m = static_cast<std::size_t>(std::ceil((1.0 + kappa) * 2.0 * n));
    const auto z = mz_upper_check(TrigPoly::monomial(n), ConvexPhi::power(2.0), kappa, m);
    const double a = 1.0 / (1.0 + 1.0 / kappa);
    EXPECT_NEAR(z.lhs, a * a, 1e-14);
    EXPECT_NEAR(z.rhs, 1.0, 1e-14);
    EXPECT_TRUE(z.holds);
  }
  SeededRng rng(16);
  EXPECT_TRUE(mz_upper_check(random_analytic(rng, 16), ConvexPhi::power(1.0), 2.0, 96).holds);
}

TEST(MzUpper, GridTooSmall) {
  try {
    mz_upper_check(TrigPoly::monomial(10), ConvexPhi::power(1.0), 1.0, 39);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooSmall);
  }
  EXPECT_NO_THROW(mz_upper_check(TrigPoly::monomial(10), ConvexPhi::power(1.0), 1.0, 40));
  EXPECT_THROW(ConvexPhi::power(0.5), Error);
}

TEST(MzUpper, RandomSweepIncludingHinge) {
  SeededRng rng(17);
  for (int i = 0; i < 150; ++i) {
    const auto deg = rng.uniform_int(1, 64);
    const double kappa = std::array{1.0, 2.0, 4.0}[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    const auto poly = random_analytic(rng, deg);
    const auto m = static_cast<std::size_t>(std::ceil((1.0 + kappa) * 2.0 * deg)) + rng.uniform_int(0, 10);
    const auto phi = i % 3 == 0 ? ConvexPhi::hinge(rng.uniform(0.0, 2.0)) : ConvexPhi::power(rng.uniform(1.0, 3.0));
    EXPECT_TRUE(mz_upper_check(poly, phi, kappa, m, rng.uniform()).holds);
  }
}

TEST(Bernstein, Examples) {
  for (double p : {1.0, 2.0, 4.0}) {
    EXPECT_NEAR(bernstein_ratio(TrigPoly::monomial(6), p), 6.0, 1e-12);
    const TrigPoly c(std::map<std::int64_t, Complex>{{-5, 0.5}, {5, 0.5}});
    EXPECT_NEAR(bernstein_ratio(c, p), 5.0, 1e-9);
  }
  EXPECT_NEAR(bernstein_ratio(from_support({0, 1}, true), 2.0), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Bernstein, RandomPolynomialsRespectDegree) {
  SeededRng rng(18);
  for (int i = 0; i < 200; ++i) {
    const auto deg = rng.uniform_int(1, 64);
    const double p = std::array{1.0, 2.0, 4.0}[static_cast<std::size_t>(rng.uniform_int(0, 2))];
    EXPECT_LE(bernstein_ratio(random_analytic(rng, deg), p), static_cast<double>(deg) + 1e-9);
  }
}

TEST(PseudoHyperbolic, Antipodal) {
  for (double r : {0.3, 0.9, 13.0 / 14.0}) {
    EXPECT_NEAR(pseudo_hyperbolic(Complex(r, 0), Complex(-r, 0)), 2 * r / (1 + r * r), 1e-15);
  }
}

TEST(GammaSquared, Values) {
  EXPECT_DOUBLE_EQ(gamma_squared(1), 0.5);
  EXPECT_DOUBLE_EQ(gamma_squared(2), 0.4);
  EXPECT_NEAR(gamma_squared(1000000), inverse_sinh_product(), 1e-6);
  EXPECT_NEAR(gamma_squared(1000000), 0.27202906, 1e-6);
  EXPECT_THROW(gamma_squared(0), Error);
  EXPECT_GT(carleson_constant(gamma_squared(1000000)), 0.0);
}

TEST(Separation, TwoPoints) {
  NodalFamily f;
  f.q = 2;
  f.radius = 0.8;
  f.angles = {0.0, 0.5};
  const auto r = separation_analysis(f, 10);
  EXPECT_NEAR(r.min_pairwise_product, 2 * 0.8 / (1 + 0.64), 1e-15);
}

TEST(Separation, RootsFamiliesMeetPairBound) {
  for (std::int64_t q : {7, 13, 57}) {
    const auto r = separation_analysis(roots(q));
    EXPECT_EQ(r.pairs_checked, static_cast<std::size_t>(q * (q - 1) / 2));
    EXPECT_EQ(r.pair_bound_violations, 0u);
    EXPECT_GE(r.min_pair_margin, -1e-12);
    EXPECT_GE(r.min_pairwise_product, 0.0);
    EXPECT_LE(r.min_pairwise_product, 1.0);
    EXPECT_TRUE(r.lower_bound_holds);
  }
  // Adjacent pair of the q = 7 family.
  const double rho = 13.0 / 14.0;
  const double d = pseudo_hyperbolic(std::polar(rho, 0.0), std::polar(rho, 2 * std::numbers::pi / 7));
  EXPECT_GE(d * d, 0.5);
}

TEST(Separation, InterleavedLowerBound) {
  for (std::int64_t q : {7, 13, 57}) {
    NodeParams np;
    np.q = q;
    np.delta = 0.1;
    const auto r = separation_analysis(build_nodes(NodeKind::Interleaved, np));
    EXPECT_NEAR(r.lower_bound, r.gamma_sq_partial * 0.1 / std::sqrt(1.01), 1e-15);
    EXPECT_TRUE(r.lower_bound_holds) << r.min_pairwise_product;
    EXPECT_EQ(r.pair_bound_violations, 0u);
  }
}

TEST(Separation, Errors) {
  auto f = roots(5);
  f.radius = 1.0;
  EXPECT_THROW(separation_analysis(f), Error);
  f.radius = 0.5;
  f.angles.push_back(0.0);
  try {
    separation_analysis(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFamily);
  }
}
