#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatlab/rational.hpp"
#include "flatlab/singer.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

enum class NodeKind { Roots, Perturbed, Interleaved };

struct NodeParams {
  std::int64_t q = 1;
  std::int64_t p = 0;       // perturbed only
  double delta = 0.0;
  double epsilon = 0.0;     // perturbed only
  std::optional<double> radius;  // defaults to 1 - 1/(2q)
  int sign = +1;            // perturbed only: direction of the shift
};

/// Sample points on the circle, as fractions of a full turn, plus the radius
/// used when the family is pulled inside the disc.
struct NodalFamily {
  NodeKind kind = NodeKind::Roots;
  std::int64_t q = 1;
  std::int64_t p = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  double radius = 1.0;
  int sign = +1;
  std::vector<double> angles;

  /// Constant shift of the perturbed family: sign * delta / (q p^{1/2+eps}).
  double perturbation() const;
};

double default_radius(std::int64_t q);

/// roots: r/q. perturbed: r/q + sign*delta/(q p^{1/2+eps}) mod 1.
/// interleaved: r/q and r/q + delta/q alternating (2q points).
NodalFamily build_nodes(NodeKind kind, const NodeParams& params);

/// P at each node, in node order.
std::vector<Complex> evaluate_at_nodes(const TrigPoly& poly, const NodalFamily& nodes);

/// (1/|nodes|) sum |P(node)|^alpha.
double discrete_mean(const TrigPoly& poly, const NodalFamily& nodes, double alpha);

/// (1/q) ((p+1)^{alpha/2} + (q-1) (p/(p+1))^{alpha/2}).
double singer_node_mean(std::int64_t p, double alpha);

/// Same closed form, exact, for alpha = 2 * half_alpha.
Rational singer_node_mean_exact(std::int64_t p, int half_alpha);

struct DriftReport {
  double max_drift = 0.0;           // max_r |P(t_r) - P(t*_r)|
  double bernstein_envelope = 0.0;  // 2 pi sqrt(p+1) delta (q-1) / (q p^{1/2+eps})
  double stated_envelope = 0.0;     // sqrt(p+1) delta / (2 pi p^{1/2+eps})
};

DriftReport perturbation_drift(const SingerSet& set, double delta, double epsilon, int sign = +1);

}  // namespace flatlab
