#include "flatlab/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatlab/error.hpp"
#include "flatlab/parallel.hpp"

namespace flatlab {

namespace {

double wrap(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

}  // namespace

double NodalFamily::perturbation() const {
  if (kind != NodeKind::Perturbed) return 0.0;
  return sign * delta / (static_cast<double>(q) * std::pow(static_cast<double>(p), 0.5 + epsilon));
}

double default_radius(std::int64_t q) { return 1.0 - 1.0 / (2.0 * static_cast<double>(q)); }

NodalFamily build_nodes(NodeKind kind, const NodeParams& params) {
  if (params.q < 1) throw Error(ErrorCode::InvalidParam, "q must be >= 1");
  if (params.delta < 0.0) throw Error(ErrorCode::InvalidParam, "delta must be >= 0");
  NodalFamily f;
  f.kind = kind;
  f.q = params.q;
  f.p = params.p;
  f.delta = params.delta;
  f.epsilon = params.epsilon;
  f.sign = params.sign >= 0 ? +1 : -1;
  f.radius = params.radius.value_or(default_radius(params.q));
  if (!(f.radius > 0.0 && f.radius <= 1.0)) throw Error(ErrorCode::InvalidParam, "radius must lie in (0,1]");
  const auto q = static_cast<double>(params.q);
  switch (kind) {
    case NodeKind::Roots:
      for (std::int64_t r = 0; r < params.q; ++r) f.angles.push_back(static_cast<double>(r) / q);
      break;
    case NodeKind::Perturbed: {
      if (params.p < 1) throw Error(ErrorCode::InvalidParam, "perturbed nodes need p >= 1");
      if (params.epsilon < 0.0) throw Error(ErrorCode::InvalidParam, "epsilon must be >= 0");
      const double shift = f.perturbation();
      for (std::int64_t r = 0; r < params.q; ++r) f.angles.push_back(wrap(static_cast<double>(r) / q + shift));
      break;
    }
    case NodeKind::Interleaved: {
      const double frac = params.delta - std::floor(params.delta);
      if (frac == 0.0) throw Error(ErrorCode::DegenerateFamily, "interleaved nodes coincide for integer delta");
      for (std::int64_t r = 0; r < params.q; ++r) {
        f.angles.push_back(static_cast<double>(r) / q);
        f.angles.push_back(wrap((static_cast<double>(r) + params.delta) / q));
      }
      break;
    }
  }
  return f;
}

std::vector<Complex> evaluate_at_nodes(const TrigPoly& poly, const NodalFamily& nodes) {
  const auto q = static_cast<std::size_t>(nodes.q);
  switch (nodes.kind) {
    case NodeKind::Roots:
      return evaluate_grid(poly, q, 0.0);
    case NodeKind::Perturbed:
      return evaluate_grid(poly, q, nodes.perturbation());
    case NodeKind::Interleaved: {
      const auto even = evaluate_grid(poly, q, 0.0);
      const auto odd = evaluate_grid(poly, q, nodes.delta / static_cast<double>(nodes.q));
      std::vector<Complex> out(2 * q);
      for (std::size_t r = 0; r < q; ++r) {
        out[2 * r] = even[r];
        out[2 * r + 1] = odd[r];
      }
      return out;
    }
  }
  return {};
}

double discrete_mean(const TrigPoly& poly, const NodalFamily& nodes, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidParam, "alpha must be positive");
  const auto vals = evaluate_at_nodes(poly, nodes);
  const long double s = block_sum(vals.size(), [&](std::size_t j) {
    return static_cast<long double>(std::pow(std::abs(vals[j]), alpha));
  });
  return static_cast<double>(s / static_cast<long double>(vals.size()));
}

double singer_node_mean(std::int64_t p, double alpha) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const auto pl = static_cast<long double>(p);
  const long double q = pl * pl + pl + 1.0L;
  const long double a = static_cast<long double>(alpha) / 2.0L;
  return static_cast<double>((std::pow(pl + 1.0L, a) + (q - 1.0L) * std::pow(pl / (pl + 1.0L), a)) / q);
}

Rational singer_node_mean_exact(std::int64_t p, int half_alpha) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (half_alpha < 0) throw Error(ErrorCode::InvalidParam, "half_alpha must be >= 0");
  const long q = static_cast<long>(p * p + p + 1);
  BigInt top, pk, p1k;
  mpz_ui_pow_ui(top.get_mpz_t(), static_cast<unsigned long>(p + 1), static_cast<unsigned long>(half_alpha));
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(half_alpha));
  p1k = top;
  Rational ratio(pk, p1k);
  ratio.canonicalize();
  Rational r = Rational(top) + Rational(q - 1) * ratio;
  r /= q;
  r.canonicalize();
  return r;
}

DriftReport perturbation_drift(const SingerSet& set, double delta, double epsilon, int sign) {
  const TrigPoly poly = from_support(set.support(), true);
  NodeParams params;
  params.q = set.q;
  params.p = set.p;
  params.delta = delta;
  params.epsilon = epsilon;
  params.sign = sign;
  const auto roots = build_nodes(NodeKind::Roots, params);
  const auto moved = build_nodes(NodeKind::Perturbed, params);
  const auto a = evaluate_at_nodes(poly, roots);
  const auto b = evaluate_at_nodes(poly, moved);
  DriftReport r;
  for (std::size_t i = 0; i < a.size(); ++i) r.max_drift = std::max(r.max_drift, std::abs(a[i] - b[i]));
  const double pp = std::pow(static_cast<double>(set.p), 0.5 + epsilon);
  const double sq = std::sqrt(static_cast<double>(set.p + 1));
  const auto q = static_cast<double>(set.q);
  r.bernstein_envelope = 2.0 * std::numbers::pi * sq * delta * (q - 1.0) / (q * pp);
  r.stated_envelope = sq * delta / (2.0 * std::numbers::pi * pp);
  return r;
}

}  // namespace flatlab
