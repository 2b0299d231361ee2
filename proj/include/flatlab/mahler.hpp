#pragma once

#include <cstddef>
#include <optional>

#include "flatlab/norms.hpp"
#include "flatlab/trigpoly.hpp"

namespace flatlab {

enum class MahlerMethod { Quadrature, Jensen, Exact };

struct MahlerResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t grid_size = 0;
  bool converged = false;
  MahlerMethod method = MahlerMethod::Quadrature;
  double quadrature_value = 0.0;
  std::optional<double> jensen_value;  // set whenever the span allows it
};

/// exp(integral log|P| dz). Midpoint grids (half-step offset) with doubling;
/// falls back to the Jensen root product when quadrature stalls and the span
/// is at most cfg.jensen_max_degree. InvalidParam for the zero polynomial.
MahlerResult mahler_measure(const TrigPoly& poly, const QuadratureConfig& cfg = {});

/// |leading coefficient| * prod max(1, |root|), roots from the companion matrix.
double mahler_jensen(const TrigPoly& poly);

struct DiscreteMahler {
  double value = 0.0;
  bool hit_zero = false;
};

/// exp((1/m) sum_j log|P(e^{2 pi i (j/m + offset)})|); 0 if a sample vanishes.
DiscreteMahler mahler_discrete(const TrigPoly& poly, std::size_t m, double offset = 0.0);

}  // namespace flatlab
