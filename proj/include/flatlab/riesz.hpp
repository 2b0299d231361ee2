#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatlab/norms.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

/// Cutting parameters m_k >= 2 and, per level, m_k - 1 spacer counts.
struct RankOneParams {
  std::vector<std::int64_t> cuts;
  std::vector<std::vector<std::int64_t>> spacers;
};

/// h_0 = 1, h_{k+1} = m_k h_k + sum of level-k spacers; one entry per cut plus h_0.
std::vector<std::int64_t> heights(const RankOneParams& params);

/// P_k(z) = (1 + sum_{j<m_k} z^{-(j h_k + a_1 + ... + a_j)}) / sqrt(m_k), k < levels.
std::vector<TrigPoly> rank_one_polynomials(const RankOneParams& params, std::size_t levels);

struct RieszFactor {
  TrigPoly poly;
  std::int64_t dilation = 1;
};

struct RieszProductSpec {
  std::vector<RieszFactor> factors;
  std::vector<std::int64_t> heights;  // h_0 .. h_K
  bool dynamical_origin = false;
};

inline constexpr std::size_t kDefaultTermCap = 5'000'000;

struct DissociationWitness {
  std::vector<std::int64_t> first;   // one exponent per factor
  std::vector<std::int64_t> second;
  std::int64_t total = 0;            // sum_j N_j * exponent_j for both
};

struct DissociationResult {
  bool dissociated = true;
  std::optional<DissociationWitness> witness;
};

/// True iff the formal product of the P_j(z^{N_j}) has pairwise distinct
/// powers. BudgetExceeded once the expansion passes term_cap.
DissociationResult dissociation(const std::vector<RieszFactor>& factors, std::size_t term_cap = kDefaultTermCap);

/// Smallest dilations with N_j r_1 >= h_{j-1} and N_j (r_{i+1} - r_i) >= h_{j-1},
/// h_j = N_j r_n + h_{j-1}, h_0 = 1. Supports must be one-signed with a
/// nonzero constant term (InvalidFactor) and L2 norm 1 (NotNormalized).
RieszProductSpec dynamical_origin_dilations(const std::vector<TrigPoly>& polys);

struct DynamicalCheck {
  bool valid = true;
  std::optional<std::size_t> failing_factor;
  std::string reason;
};

/// Checks the gap constraints against heights recomputed from the dilations.
DynamicalCheck validate_dynamical_origin(const RieszProductSpec& spec);

/// Exact coefficients of prod_{j<K} |P_j(z^{N_j})|^2. Factors need an
/// IntegerForm (InvalidParam); BudgetExceeded past term_cap coefficients.
RationalTrigPoly partial_product(const RieszProductSpec& spec, std::size_t K,
                                 std::size_t term_cap = kDefaultTermCap);

struct MahlerProduct {
  double value = 1.0;
  std::vector<double> factor_values;  // M(P_j)^2
  double est_error = 0.0;
  bool converged = true;
};

/// prod_{j<K} M(P_j^2).
MahlerProduct mahler_product(const RieszProductSpec& spec, std::size_t K, const QuadratureConfig& cfg = {});

struct PointwiseRange {
  double min = 0.0;
  double max = 0.0;
};

/// Range of prod_{j<K} |P_j(z^{N_j})|^2 over the grid j/grid.
PointwiseRange pointwise_partial_product(const RieszProductSpec& spec, std::size_t K, std::size_t grid);

}  // namespace flatlab
