#include <gtest/gtest.h>

#include <cmath>

#include "flatlab/error.hpp"
#include "flatlab/mahler.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/random.hpp"

using namespace flatlab;

namespace {

TrigPoly random_analytic(SeededRng& rng, std::int64_t degree) {
  std::map<std::int64_t, Complex> c;
  for (std::int64_t k = 0; k <= degree; ++k) c[k] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return TrigPoly(c);
}

// Closed form for 1 + alpha cos(n theta).
double bump_oracle(double alpha) {
  const double a = alpha / (1.0 + std::sqrt(1.0 - alpha * alpha));
  return 1.0 / (1.0 + a * a);
}

}  // namespace

TEST(Mahler, CosineBump) {
  for (std::int64_t n : {1, 3, 10}) {
    const auto r = mahler_measure(TrigPoly::cosine_bump(0.6, n));
    EXPECT_NEAR(r.value, 0.9, 1e-10);
    EXPECT_TRUE(r.converged);
  }
  for (double alpha : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(mahler_measure(TrigPoly::cosine_bump(alpha, 4)).value, bump_oracle(alpha), 1e-10);
  }
}

TEST(Mahler, ZeroOnCircleUsesRootProduct) {
  const auto r = mahler_measure(from_support({0, 1}, true));
  EXPECT_NEAR(r.value, 1.0 / std::sqrt(2.0), 1e-12);
  ASSERT_TRUE(r.jensen_value.has_value());
}

TEST(Mahler, ConstantAndMonomial) {
  EXPECT_DOUBLE_EQ(mahler_measure(TrigPoly::constant(Complex(-3.0, 4.0))).value, 5.0);
  const auto m = mahler_measure(TrigPoly::monomial(7, 2.5));
  EXPECT_DOUBLE_EQ(m.value, 2.5);
  EXPECT_EQ(m.method, MahlerMethod::Exact);
  EXPECT_THROW(mahler_measure(TrigPoly()), Error);
}

TEST(Mahler, JensenAgreesWithQuadrature) {
  SeededRng rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_analytic(rng, rng.uniform_int(1, 30));
    const auto r = mahler_measure(p);
    ASSERT_TRUE(r.jensen_value.has_value());
    EXPECT_NEAR(r.quadrature_value, *r.jensen_value, 1e-8 * r.value);
  }
}

TEST(MahlerDiscrete, Examples) {
  for (std::int64_t n : {3, 10}) {
    const auto bump = TrigPoly::cosine_bump(0.6, n);
    EXPECT_NEAR(mahler_discrete(bump, static_cast<std::size_t>(2 * n)).value, 0.8, 1e-12);
    EXPECT_LE(mahler_discrete(bump, static_cast<std::size_t>(2 * n)).value, mahler_measure(bump).value);
  }
  EXPECT_DOUBLE_EQ(mahler_discrete(TrigPoly::constant(1.0), 13).value, 1.0);
  const auto z = mahler_discrete(from_support({0, 1}, true), 2);
  EXPECT_TRUE(z.hit_zero);
  EXPECT_EQ(z.value, 0.0);
}

TEST(MahlerProperties, BoundedByLpNorms) {
  SeededRng rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_analytic(rng, rng.uniform_int(1, 20));
    const double m = mahler_measure(p).value;
    for (double e : {0.25, 0.5, 1.0}) EXPECT_LE(m, lp_norm(p, e).value * (1.0 + 1e-9));
  }
}

TEST(MahlerProperties, Multiplicative) {
  SeededRng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_analytic(rng, rng.uniform_int(1, 20));
    const auto b = random_analytic(rng, rng.uniform_int(1, 20));
    const double lhs = mahler_measure(a * b).value;
    const double rhs = mahler_measure(a).value * mahler_measure(b).value;
    EXPECT_NEAR(lhs, rhs, 1e-8 * rhs);
  }
}

TEST(MahlerProperties, DilationInvariantWithoutReduction) {
  QuadratureConfig cfg;
  cfg.reduce_dilation = false;
  SeededRng rng(10);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_analytic(rng, rng.uniform_int(1, 12));
    const double base = mahler_measure(p, cfg).value;
    for (std::int64_t n : {2, 3, 7}) EXPECT_NEAR(mahler_measure(p.dilate(n), cfg).value, base, 1e-9 * base);
  }
}
