// Results must not depend on the worker count.
#include <gtest/gtest.h>

#include "flatlab/acceptance.hpp"
#include "flatlab/kernels.hpp"
#include "flatlab/mahler.hpp"
#include "flatlab/mz.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/riesz.hpp"
#include "flatlab/singer.hpp"

using namespace flatlab;

namespace {

template <class F>
auto under_threads(unsigned n, F&& f) {
  set_thread_count(n);
  auto r = f();
  set_thread_count(1);
  return r;
}

}  // namespace

TEST(ThreadIndependence, Quadrature) {
  const auto poly = from_support(singer_set(61).support(), true);
  const auto a = under_threads(1, [&] { return lp_norm(poly, 1.0).value; });
  const auto b = under_threads(3, [&] { return lp_norm(poly, 1.0).value; });
  const auto c = under_threads(8, [&] { return lp_norm(poly, 1.0).value; });
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  const auto m1 = under_threads(1, [&] { return mahler_measure(poly).value; });
  const auto m4 = under_threads(4, [&] { return mahler_measure(poly).value; });
  EXPECT_EQ(m1, m4);
}

TEST(ThreadIndependence, GridLoops) {
  const auto u1 = under_threads(1, [] { return helson_szego_u_bound(57, 2.0, 0.1, 0, 20000).sup_u; });
  const auto u4 = under_threads(4, [] { return helson_szego_u_bound(57, 2.0, 0.1, 0, 20000).sup_u; });
  EXPECT_EQ(u1, u4);
  const auto o1 = under_threads(1, [] { return outer_modulus_check(0.9, 0.2, 400, 10000); });
  const auto o4 = under_threads(4, [] { return outer_modulus_check(0.9, 0.2, 400, 10000); });
  EXPECT_EQ(o1, o4);
  NodeParams np;
  np.q = 5000;
  const auto fam = build_nodes(NodeKind::Roots, np);
  const auto s1 = under_threads(1, [&] { return separation_analysis(fam).min_pairwise_product; });
  const auto s4 = under_threads(4, [&] { return separation_analysis(fam).min_pairwise_product; });
  EXPECT_EQ(s1, s4);
}

TEST(Determinism, AcceptanceDetailsRepeat) {
  const auto a = run_acceptance(3);
  const auto b = run_acceptance(3);
  ASSERT_EQ(a.size(), 12u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, static_cast<int>(i + 1));
    EXPECT_EQ(a[i].detail, b[i].detail);
    EXPECT_TRUE(a[i].passed) << a[i].id << ": " << a[i].detail;
  }
}
