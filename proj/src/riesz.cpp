#include "flatlab/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "flatlab/error.hpp"
#include "flatlab/mahler.hpp"

namespace flatlab {

namespace {

void validate_params(const RankOneParams& params) {
  if (params.spacers.size() != params.cuts.size()) {
    throw Error(ErrorCode::InvalidParam, "need one spacer list per cut");
  }
  for (std::size_t k = 0; k < params.cuts.size(); ++k) {
    if (params.cuts[k] < 2) throw Error(ErrorCode::InvalidParam, "cuts must be >= 2");
    if (static_cast<std::int64_t>(params.spacers[k].size()) != params.cuts[k] - 1) {
      throw Error(ErrorCode::InvalidParam, "level " + std::to_string(k) + " needs m_k - 1 spacers");
    }
    for (auto a : params.spacers[k]) {
      if (a < 0) throw Error(ErrorCode::InvalidParam, "spacers must be >= 0");
    }
  }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::OutOfRange, "integer overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::OutOfRange, "integer overflow");
  return r;
}

// Sorted nonzero |k| of a one-signed support with nonzero constant term.
std::vector<std::int64_t> one_signed_exponents(const TrigPoly& poly, std::size_t index) {
  if (poly.coefficient(0) == Complex(0.0)) {
    throw Error(ErrorCode::InvalidFactor, "factor " + std::to_string(index) + " has zero constant term");
  }
  if (poly.min_frequency() < 0 && poly.max_frequency() > 0) {
    throw Error(ErrorCode::InvalidFactor, "factor " + std::to_string(index) + " has a two-sided support");
  }
  std::vector<std::int64_t> r;
  for (const auto& [k, c] : poly.coefficients()) {
    if (k != 0) r.push_back(std::abs(k));
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::int64_t min_gap(const std::vector<std::int64_t>& r) {
  std::int64_t g = r.front();
  for (std::size_t i = 1; i < r.size(); ++i) g = std::min(g, r[i] - r[i - 1]);
  return g;
}

double top_modulus(const TrigPoly& poly) {
  const auto& c = poly.coefficients();
  return std::abs(std::abs(c.begin()->first) > std::abs(c.rbegin()->first) ? c.begin()->second
                                                                             : c.rbegin()->second);
}

}  // namespace

std::vector<std::int64_t> heights(const RankOneParams& params) {
  validate_params(params);
  std::vector<std::int64_t> h{1};
  for (std::size_t k = 0; k < params.cuts.size(); ++k) {
    std::int64_t next = checked_mul(params.cuts[k], h.back());
    for (auto a : params.spacers[k]) next = checked_add(next, a);
    h.push_back(next);
  }
  return h;
}

std::vector<TrigPoly> rank_one_polynomials(const RankOneParams& params, std::size_t levels) {
  if (levels > params.cuts.size()) throw Error(ErrorCode::InvalidParam, "levels exceeds the number of cuts");
  const auto h = heights(params);
  std::vector<TrigPoly> out;
  for (std::size_t k = 0; k < levels; ++k) {
    IntegerForm form;
    form.denominator = params.cuts[k];
    form.weights[0] = 1;
    std::int64_t spacer_sum = 0;
    for (std::int64_t j = 1; j < params.cuts[k]; ++j) {
      spacer_sum = checked_add(spacer_sum, params.spacers[k][static_cast<std::size_t>(j - 1)]);
      form.weights[-checked_add(checked_mul(j, h[k]), spacer_sum)] = 1;
    }
    out.emplace_back(std::move(form));
  }
  return out;
}

DissociationResult dissociation(const std::vector<RieszFactor>& factors, std::size_t term_cap) {
  // levels[j] maps each reachable total after factor j to the exponent of
  // factor j that produced it; earlier totals are recovered by subtraction.
  std::vector<std::unordered_map<std::int64_t, std::int64_t>> levels;
  std::vector<std::int64_t> order{0};
  std::unordered_map<std::int64_t, std::int64_t> base{{0, 0}};
  levels.push_back(base);

  auto backtrack = [&](std::int64_t total, std::size_t upto) {
    std::vector<std::int64_t> combo(upto + 1);
    for (std::size_t j = upto + 1; j-- > 0;) {
      const std::int64_t e = levels[j + 1].at(total);
      combo[j] = e;
      total -= factors[j].dilation * e;
    }
    return combo;
  };

  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = factors[j];
    if (f.poly.is_zero()) throw Error(ErrorCode::EmptySupport, "factor " + std::to_string(j) + " is zero");
    if (f.dilation < 1) throw Error(ErrorCode::InvalidParam, "dilations must be >= 1");
    if (order.size() * f.poly.term_count() > term_cap) {
      throw Error(ErrorCode::BudgetExceeded, "dissociation expansion exceeds " + std::to_string(term_cap) + " terms");
    }
    std::unordered_map<std::int64_t, std::int64_t> next;
    next.reserve(order.size() * f.poly.term_count());
    std::vector<std::int64_t> next_order;
    for (std::int64_t s : order) {
      for (const auto& [e, c] : f.poly.coefficients()) {
        const std::int64_t t = checked_add(s, checked_mul(f.dilation, e));
        auto [it, inserted] = next.emplace(t, e);
        if (!inserted) {
          levels.push_back(std::move(next));
          DissociationWitness w;
          w.total = t;
          w.first = backtrack(t, j);
          std::vector<std::int64_t> prev;
          if (j > 0) prev = backtrack(s, j - 1);
          prev.push_back(e);
          w.second = std::move(prev);
          return {false, std::move(w)};
        }
        next_order.push_back(t);
      }
    }
    levels.push_back(std::move(next));
    order = std::move(next_order);
  }
  return {true, std::nullopt};
}

RieszProductSpec dynamical_origin_dilations(const std::vector<TrigPoly>& polys) {
  RieszProductSpec spec;
  spec.heights.push_back(1);
  bool tops_below_one = true;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    const auto& p = polys[j];
    if (p.is_zero()) throw Error(ErrorCode::InvalidFactor, "factor " + std::to_string(j) + " is zero");
    const auto r = one_signed_exponents(p, j);
    if (std::abs(p.l2_norm_squared() - 1.0) > 1e-9) {
      throw Error(ErrorCode::NotNormalized, "factor " + std::to_string(j) + " is not L2-normalized");
    }
    const std::int64_t h = spec.heights.back();
    std::int64_t n = 1;
    std::int64_t next = h;
    if (!r.empty()) {
      const std::int64_t g = min_gap(r);
      n = (h + g - 1) / g;
      next = checked_add(checked_mul(n, r.back()), h);
      if (!(top_modulus(p) < 1.0)) tops_below_one = false;
    }
    spec.factors.push_back({p, n});
    spec.heights.push_back(next);
  }
  spec.dynamical_origin = tops_below_one && validate_dynamical_origin(spec).valid;
  return spec;
}

DynamicalCheck validate_dynamical_origin(const RieszProductSpec& spec) {
  DynamicalCheck out;
  auto fail = [&](std::size_t j, std::string why) {
    out.valid = false;
    out.failing_factor = j;
    out.reason = std::move(why);
    return out;
  };
  std::int64_t h = 1;
  for (std::size_t j = 0; j < spec.factors.size(); ++j) {
    const auto& f = spec.factors[j];
    if (f.dilation < 1) return fail(j, "dilation must be >= 1");
    std::vector<std::int64_t> r;
    try {
      r = one_signed_exponents(f.poly, j);
    } catch (const Error& e) {
      return fail(j, e.what());
    }
    if (!r.empty()) {
      if (checked_mul(f.dilation, r.front()) < h) return fail(j, "first exponent below previous height");
      for (std::size_t i = 1; i < r.size(); ++i) {
        if (checked_mul(f.dilation, r[i] - r[i - 1]) < h) return fail(j, "exponent gap below previous height");
      }
      h = checked_add(checked_mul(f.dilation, r.back()), h);
    }
    if (spec.heights.size() > j + 1 && spec.heights[j + 1] != h) return fail(j, "height mismatch");
  }
  return out;
}

RationalTrigPoly partial_product(const RieszProductSpec& spec, std::size_t K, std::size_t term_cap) {
  if (K > spec.factors.size()) throw Error(ErrorCode::InvalidParam, "K exceeds the number of factors");
  std::map<std::int64_t, BigInt> acc{{0, BigInt(1)}};
  BigInt den = 1;
  for (std::size_t j = 0; j < K; ++j) {
    const auto& f = spec.factors[j];
    const auto& form = f.poly.integer_form();
    if (!form) throw Error(ErrorCode::InvalidParam, "factor " + std::to_string(j) + " has no exact form");
    // |P|^2 numerators: autocorrelation of the integer weights.
    std::map<std::int64_t, BigInt> sq;
    for (const auto& [a, wa] : form->weights) {
      for (const auto& [b, wb] : form->weights) {
        BigInt prod = BigInt(static_cast<long>(wa)) * BigInt(static_cast<long>(wb));
        sq[checked_mul(a - b, f.dilation)] += prod;
      }
    }
    const std::int64_t span_acc = acc.rbegin()->first - acc.begin()->first;
    const std::int64_t span_sq = sq.rbegin()->first - sq.begin()->first;
    const auto projected = std::min<long double>(static_cast<long double>(acc.size()) * sq.size(),
                                                 static_cast<long double>(span_acc) + span_sq + 1);
    if (projected > static_cast<long double>(term_cap)) {
      throw Error(ErrorCode::BudgetExceeded, "partial product exceeds " + std::to_string(term_cap) + " coefficients");
    }
    std::map<std::int64_t, BigInt> next;
    for (const auto& [a, ca] : acc) {
      for (const auto& [b, cb] : sq) next[a + b] += ca * cb;
    }
    acc.clear();
    for (auto& [k, c] : next) {
      if (c != 0) acc.emplace(k, std::move(c));
    }
    den *= BigInt(static_cast<long>(form->denominator));
  }
  std::map<std::int64_t, Rational> out;
  for (const auto& [k, c] : acc) out.emplace(k, Rational(c, den));
  return RationalTrigPoly(std::move(out));
}

MahlerProduct mahler_product(const RieszProductSpec& spec, std::size_t K, const QuadratureConfig& cfg) {
  if (K > spec.factors.size()) throw Error(ErrorCode::InvalidParam, "K exceeds the number of factors");
  MahlerProduct out;
  double rel = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    const auto m = mahler_measure(spec.factors[j].poly, cfg);
    const double sq = m.value * m.value;
    out.factor_values.push_back(sq);
    out.value *= sq;
    if (m.value > 0.0) rel += 2.0 * m.est_error / m.value;
    out.converged = out.converged && m.converged;
  }
  out.est_error = out.value * rel;
  return out;
}

PointwiseRange pointwise_partial_product(const RieszProductSpec& spec, std::size_t K, std::size_t grid) {
  if (K > spec.factors.size()) throw Error(ErrorCode::InvalidParam, "K exceeds the number of factors");
  if (grid < 1) throw Error(ErrorCode::InvalidParam, "grid must be >= 1");
  std::vector<double> prod(grid, 1.0);
  for (std::size_t j = 0; j < K; ++j) {
    const auto vals = evaluate_grid(spec.factors[j].poly.dilate(spec.factors[j].dilation), grid);
    for (std::size_t i = 0; i < grid; ++i) prod[i] *= std::norm(vals[i]);
  }
  const auto [lo, hi] = std::minmax_element(prod.begin(), prod.end());
  return {*lo, *hi};
}

}  // namespace flatlab
