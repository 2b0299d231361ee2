#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/nodes.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/random.hpp"
#include "flatlab/singer.hpp"

using namespace flatlab;

namespace {

NodeParams params(std::int64_t q, std::int64_t p = 0, double delta = 0.0, double eps = 0.0) {
  NodeParams np;
  np.q = q;
  np.p = p;
  np.delta = delta;
  np.epsilon = eps;
  return np;
}

TrigPoly singer_poly(std::int64_t p) { return from_support(singer_set(p).support(), true); }

// Direct sum over the nodes with the polynomial evaluated pointwise.
double mean_oracle(const TrigPoly& poly, const NodalFamily& f, double alpha) {
  long double s = 0;
  for (double a : f.angles) s += std::pow(std::abs(poly(a)), alpha);
  return static_cast<double>(s / f.angles.size());
}

}  // namespace

TEST(BuildNodes, Roots) {
  const auto f = build_nodes(NodeKind::Roots, params(4));
  EXPECT_EQ(f.angles, (std::vector<double>{0.0, 0.25, 0.5, 0.75}));
  EXPECT_DOUBLE_EQ(f.radius, 1.0 - 1.0 / 8.0);
}

TEST(BuildNodes, Perturbed) {
  const auto f = build_nodes(NodeKind::Perturbed, params(7, 2, 0.1, 0.5));
  ASSERT_EQ(f.angles.size(), 7u);
  for (int r = 0; r < 7; ++r) EXPECT_NEAR(f.angles[r], r / 7.0 + 1.0 / 140.0, 1e-15);
  auto down = params(7, 2, 0.1, 0.5);
  down.sign = -1;
  EXPECT_NEAR(build_nodes(NodeKind::Perturbed, down).angles[0], 1.0 - 1.0 / 140.0, 1e-15);
}

TEST(BuildNodes, Interleaved) {
  const auto f = build_nodes(NodeKind::Interleaved, params(3, 0, 0.2));
  const std::vector<double> want{0, 0.2 / 3, 1.0 / 3, 1.0 / 3 + 0.2 / 3, 2.0 / 3, 2.0 / 3 + 0.2 / 3};
  ASSERT_EQ(f.angles.size(), 6u);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(f.angles[i], want[i], 1e-15);
}

TEST(BuildNodes, Errors) {
  auto bad = params(5);
  bad.radius = 0.0;
  EXPECT_THROW(build_nodes(NodeKind::Roots, bad), Error);
  bad.radius = 1.5;
  try {
    build_nodes(NodeKind::Roots, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParam);
  }
  EXPECT_THROW(build_nodes(NodeKind::Roots, params(0)), Error);
  EXPECT_THROW(build_nodes(NodeKind::Roots, params(3, 0, -0.1)), Error);
  EXPECT_THROW(build_nodes(NodeKind::Interleaved, params(3, 0, 1.0)), Error);
}

TEST(DiscreteMean, Examples) {
  const auto roots = build_nodes(NodeKind::Roots, params(7));
  const auto p2 = singer_poly(2);
  EXPECT_NEAR(discrete_mean(p2, roots, 1.0), (std::sqrt(3.0) + 6.0 * std::sqrt(2.0 / 3.0)) / 7.0, 1e-14);
  EXPECT_NEAR(discrete_mean(p2, roots, 1.0), (std::sqrt(3.0) + 6.0 * std::sqrt(2.0 / 3.0)) / 7.0, 1e-12);
  EXPECT_NEAR(discrete_mean(p2, roots, 2.0), 1.0, 1e-14);
  const auto inter = build_nodes(NodeKind::Interleaved, params(5, 0, 0.3));
  for (double a : {0.5, 1.0, 3.0}) EXPECT_NEAR(discrete_mean(TrigPoly::constant(1.0), inter, a), 1.0, 1e-15);
  EXPECT_THROW(discrete_mean(p2, roots, 0.0), Error);
}

TEST(DiscreteMean, AgreesWithPointwiseEvaluation) {
  SeededRng rng(4);
  for (auto kind : {NodeKind::Roots, NodeKind::Perturbed, NodeKind::Interleaved}) {
    const auto f = build_nodes(kind, params(31, 5, 0.37, 0.2));
    const auto poly = singer_poly(5);
    const double a = rng.uniform(0.5, 4.0);
    EXPECT_NEAR(discrete_mean(poly, f, a), mean_oracle(poly, f, a), 1e-12);
  }
}

TEST(SingerNodeMean, ClosedForm) {
  EXPECT_NEAR(singer_node_mean(2, 1.0), (std::sqrt(3.0) + 6.0 * std::sqrt(2.0 / 3.0)) / 7.0, 1e-12);
  EXPECT_NEAR(singer_node_mean(2, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(singer_node_mean(2, 4.0), 5.0 / 3.0, 1e-15);
  EXPECT_EQ(singer_node_mean_exact(2, 1), 1);
  EXPECT_EQ(singer_node_mean_exact(2, 2), make_rational(5, 3));
  for (std::int64_t p : {3, 5, 7, 13, 199}) EXPECT_EQ(singer_node_mean_exact(p, 1), 1);
  try {
    singer_node_mean(4, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
  EXPECT_THROW(singer_node_mean_exact(9, 1), Error);
}

TEST(SingerNodeMean, MatchesDiscreteMeanOverRoots) {
  for (std::int64_t p : {2, 3, 5, 7, 13}) {
    const auto poly = singer_poly(p);
    const auto roots = build_nodes(NodeKind::Roots, params(p * p + p + 1));
    for (double a : {0.5, 1.0, 2.0, 3.0, 3.9}) {
      EXPECT_NEAR(discrete_mean(poly, roots, a), singer_node_mean(p, a), 1e-12) << p << " " << a;
    }
  }
}

TEST(SingerNodeMean, ApproachesOne) {
  for (double a : {0.5, 1.0, 2.5, 3.0, 3.5, 3.8}) {
    EXPECT_LT(std::abs(singer_node_mean(199, a) - 1.0), std::abs(singer_node_mean(5, a) - 1.0)) << a;
  }
  // Near alpha = 4 the (p+1)^{alpha/2}/q term decays too slowly and the gap grows over this range.
  EXPECT_GT(std::abs(singer_node_mean(199, 3.9) - 1.0), std::abs(singer_node_mean(5, 3.9) - 1.0));
  EXPECT_DOUBLE_EQ(singer_node_mean(199, 2.0), 1.0);
}

TEST(SingerNodeMean, FirstOrderRate) {
  // Brute-force the gap against 1/(2p) over many primes before relying on it.
  for (std::int64_t p = 13; p <= 400; ++p) {
    if (!is_prime(p)) continue;
    const double pd = static_cast<double>(p);
    const double gap = 1.0 - singer_node_mean(p, 1.0);
    EXPECT_LE(std::abs(gap - 1.0 / (2.0 * pd)), 2.0 / std::pow(pd, 1.5)) << p;
  }
}

TEST(PerturbationDrift, WithinBernsteinEnvelope) {
  for (std::int64_t p : {2, 3, 5, 7, 13, 31}) {
    for (double delta : {0.05, 0.1, 0.25}) {
      for (double eps : {0.0, 0.5}) {
        for (int sign : {+1, -1}) {
          const auto d = perturbation_drift(singer_set(p), delta, eps, sign);
          EXPECT_LE(d.max_drift, d.bernstein_envelope + 1e-12);
          EXPECT_GT(d.max_drift, 0.0);
        }
      }
    }
  }
}

TEST(PerturbationDrift, StatedEnvelopeIsTooSmall) {
  // The drift exceeds sqrt(p+1) delta / (2 pi p^{1/2+eps}) here.
  const auto d = perturbation_drift(singer_set(13), 0.1, 0.0);
  EXPECT_GT(d.max_drift, d.stated_envelope);
}

TEST(SampledL2, ExactForBandLimited) {
  SeededRng rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto deg = rng.uniform_int(0, 64);
    std::map<std::int64_t, Complex> c;
    for (std::int64_t k = 0; k <= deg; ++k) c[k] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const TrigPoly poly(c);
    const auto m = rng.uniform_int(2 * deg + 1, 4 * deg + 8);
    const auto roots = build_nodes(NodeKind::Roots, params(m));
    EXPECT_NEAR(discrete_mean(poly, roots, 2.0), poly.l2_norm_squared(), 1e-12 * (1.0 + poly.l2_norm_squared()));
  }
}

TEST(SampledLp, RatioStableUnderGridDoubling) {
  SeededRng rng(13);
  for (double alpha : {1.0, 3.0}) {
    for (int i = 0; i < 50; ++i) {
      std::map<std::int64_t, Complex> c;
      for (std::int64_t k = 0; k <= 32; ++k) c[k] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const TrigPoly poly(c);
      const double cont = std::pow(lp_norm(poly, alpha).value, alpha);
      const double d1 = discrete_mean(poly, build_nodes(NodeKind::Roots, params(8 * 32)), alpha);
      const double d2 = discrete_mean(poly, build_nodes(NodeKind::Roots, params(16 * 32)), alpha);
      const double r1 = cont / d1, r2 = cont / d2;
      EXPECT_TRUE(std::isfinite(r1));
      EXPECT_NEAR(r1, r2, 0.01 * r2);
    }
  }
}
