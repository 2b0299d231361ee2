#pragma once

#include <cstddef>
#include <cstdint>

#include "flatlab/nodes.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

/// Convex nondecreasing test function: x^alpha (alpha >= 1) or max(0, x - c).
class ConvexPhi {
 public:
  static ConvexPhi power(double alpha);
  static ConvexPhi hinge(double c);
  double operator()(double x) const;

 private:
  enum class Kind { Power, Hinge };
  ConvexPhi(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

struct MzCheck {
  double lhs = 0.0;      // (1/m) sum phi(A |Q(xi_j)|)
  double rhs = 0.0;      // integral phi(|Q|)
  bool holds = false;
  double a_kappa = 0.0;  // 1 / (1 + 1/kappa)
  std::size_t m = 0;
};

/// Sampled side versus continuous side of the upper sampling inequality.
/// GridTooSmall if m < (1+kappa) 2n with n the degree of Q.
MzCheck mz_upper_check(const TrigPoly& poly, const ConvexPhi& phi, double kappa, std::size_t m,
                       double offset = 0.0, const QuadratureConfig& cfg = {});

/// ||P'||_p / ||P||_p with P' the angular derivative, both norms on a shared grid.
double bernstein_ratio(const TrigPoly& poly, double p, const QuadratureConfig& cfg = {});

/// |a - b| / |1 - conj(b) a|.
double pseudo_hyperbolic(Complex a, Complex b);

/// Partial product prod_{t=1}^{terms} t^2 / (1 + t^2).
double gamma_squared(std::int64_t terms);

/// (2/gamma^4)(1 - 2 log gamma), reported only.
double carleson_constant(double gamma_sq);

struct SeparationReport {
  double min_pairwise_product = 1.0;  // min_k prod_{j != k} d(z_j, z_k)
  double gamma_sq_partial = 0.0;
  // interleaved: gamma^2 delta / sqrt(1 + delta^2); otherwise gamma.
  double lower_bound = 0.0;
  bool lower_bound_holds = false;
  std::size_t pairs_checked = 0;      // pairs tested against t^2/(1+t^2)
  std::size_t pair_bound_violations = 0;
  double min_pair_margin = 0.0;       // min d^2 - t^2/(1+t^2)
};

/// Points radius * e^{2 pi i angle}. Pair bounds use the cyclic index distance
/// t; interleaved families are checked within each of the two subfamilies.
SeparationReport separation_analysis(const NodalFamily& family, std::int64_t gamma_terms = 1000000);

}  // namespace flatlab
