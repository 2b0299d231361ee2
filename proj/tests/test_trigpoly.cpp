#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/random.hpp"
#include "flatlab/singer.hpp"
#include "flatlab/trigpoly.hpp"

using namespace flatlab;

namespace {

Complex naive_eval(const TrigPoly& p, double x) {
  Complex s = 0.0;
  for (const auto& [k, c] : p.coefficients()) s += c * std::polar(1.0, 2.0 * std::numbers::pi * k * x);
  return s;
}

TrigPoly random_poly(SeededRng& rng, std::int64_t lo, std::int64_t hi, int terms) {
  std::map<std::int64_t, Complex> c;
  for (int i = 0; i < terms; ++i) c[rng.uniform_int(lo, hi)] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return TrigPoly(c);
}

}  // namespace

TEST(FromSupport, Examples) {
  const auto one = from_support({0}, true);
  EXPECT_EQ(one.term_count(), 1u);
  EXPECT_EQ(one.coefficient(0), Complex(1.0));
  const auto two = from_support({0, 1}, true);
  EXPECT_DOUBLE_EQ(two.coefficient(0).real(), 1.0 / std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(two.coefficient(1).real(), 1.0 / std::sqrt(2.0));
  const auto three = from_support({0, 1, 3}, true);
  for (int k : {0, 1, 3}) EXPECT_DOUBLE_EQ(three.coefficient(k).real(), 1.0 / std::sqrt(3.0));
  EXPECT_EQ(three.coefficient(2), Complex(0.0));
  EXPECT_EQ(from_support({0, 1, 3}, false).coefficient(3), Complex(1.0));
  try {
    from_support(SupportSet(), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySupport);
  }
}

TEST(TrigPoly, DropsZerosAndReportsShape) {
  const TrigPoly p(std::map<std::int64_t, Complex>{{-2, 1.0}, {0, 0.0}, {5, Complex(0, 2)}});
  EXPECT_EQ(p.term_count(), 2u);
  EXPECT_EQ(p.min_frequency(), -2);
  EXPECT_EQ(p.max_frequency(), 5);
  EXPECT_EQ(p.span(), 7);
  EXPECT_EQ(p.degree(), 5);
  EXPECT_DOUBLE_EQ(p.l2_norm_squared(), 5.0);
  EXPECT_TRUE(TrigPoly().is_zero());
}

TEST(TrigPoly, ArithmeticAgreesWithPointwise) {
  SeededRng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_poly(rng, -10, 10, 6);
    const auto b = random_poly(rng, -5, 12, 5);
    const double x = rng.uniform();
    EXPECT_NEAR(std::abs((a * b)(x) - a(x) * b(x)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((a + b)(x) - (a(x) + b(x))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(a.dilate(3)(x) - a(3.0 * x)), 0.0, 1e-12);
    // Angular derivative by central difference in theta = 2 pi x.
    const double h = 1e-6;
    const Complex fd = (a(x + h) - a(x - h)) / (2.0 * 2.0 * std::numbers::pi * h);
    EXPECT_NEAR(std::abs(a.derivative()(x) - fd), 0.0, 1e-6);
  }
}

TEST(TrigPoly, ExactFormSurvivesDilationAndProduct) {
  IntegerForm f;
  f.weights = {{0, 1}, {1, 1}};
  f.denominator = 2;
  const TrigPoly p(f);
  ASSERT_TRUE(p.dilate(4).integer_form());
  EXPECT_EQ(p.dilate(4).integer_form()->weights.count(4), 1u);
  const auto sq = p * p;
  ASSERT_TRUE(sq.integer_form());
  EXPECT_EQ(sq.integer_form()->denominator, 4);
  EXPECT_EQ(sq.integer_form()->weights.at(1), 2);
}

TEST(EvaluateGrid, Examples) {
  const auto ones = evaluate_grid(TrigPoly::constant(1.0), 4);
  ASSERT_EQ(ones.size(), 4u);
  for (auto v : ones) EXPECT_EQ(v, Complex(1.0));
  EXPECT_NEAR(std::abs(from_support({0, 1}, true)(0.0)), std::sqrt(2.0), 1e-15);
  const auto s = evaluate_grid(from_support(singer_set(2).support(), true), 7);
  EXPECT_NEAR(std::abs(s[0]), std::sqrt(3.0), 1e-12);
  for (int j = 1; j < 7; ++j) EXPECT_NEAR(std::abs(s[j]), std::sqrt(2.0 / 3.0), 1e-12);
}

TEST(EvaluateGrid, FftAndDirectAgreeWithNaive) {
  SeededRng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_poly(rng, -300, 300, 40);
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 700));
    const double off = rng.uniform(-1, 1);
    const auto d = evaluate_grid_direct(p, n, off);
    const auto f = evaluate_grid_fft(p, n, off);
    for (std::size_t j = 0; j < n; ++j) {
      const auto ref = naive_eval(p, static_cast<double>(j) / static_cast<double>(n) + off);
      EXPECT_NEAR(std::abs(d[j] - ref), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(f[j] - d[j]), 0.0, 1e-12);
    }
  }
}

TEST(EvaluateGrid, IndependentOfThreadCount) {
  SeededRng rng(3);
  const auto p = random_poly(rng, 0, 5000, 200);
  set_thread_count(1);
  const auto a = evaluate_grid_direct(p, 20000, 0.25);
  set_thread_count(4);
  const auto b = evaluate_grid_direct(p, 20000, 0.25);
  set_thread_count(1);
  EXPECT_EQ(a, b);
}

TEST(RationalTrigPoly, CanonicalAndConvertible) {
  const RationalTrigPoly r({{0, Rational(2, 4)}, {3, Rational(0)}, {-1, Rational(-1, 3)}});
  EXPECT_EQ(r.term_count(), 2u);
  EXPECT_EQ(r.coefficient(0), Rational(1, 2));
  EXPECT_EQ(r.sum_of_squares(), Rational(1, 4) + Rational(1, 9));
  EXPECT_DOUBLE_EQ(r.to_trigpoly().coefficient(-1).real(), -1.0 / 3.0);
}
