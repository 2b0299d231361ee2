#include "flatlab/singer.hpp"

#include <algorithm>
#include <string>

#include "flatlab/error.hpp"

namespace flatlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace detail {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

CubicFieldContext::Element CubicFieldContext::mul(const Element& u, const Element& v) const {
  std::array<std::int64_t, 5> r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r[i + j] = (r[i + j] + u[i] * v[j]) % p;
  }
  // x^3 = -a x^2 - b x - c
  for (int k = 4; k >= 3; --k) {
    const std::int64_t t = r[k];
    r[k] = 0;
    r[k - 1] = ((r[k - 1] - a * t) % p + p) % p;
    r[k - 2] = ((r[k - 2] - b * t) % p + p) % p;
    r[k - 3] = ((r[k - 3] - c * t) % p + p) % p;
  }
  return {r[0], r[1], r[2]};
}

CubicFieldContext::Element CubicFieldContext::pow(Element g, std::uint64_t e) const {
  Element r{1, 0, 0};
  while (e != 0) {
    if (e & 1u) r = mul(r, g);
    g = mul(g, g);
    e >>= 1;
  }
  return r;
}

CubicFieldContext make_cubic_field(std::int64_t p) {
  CubicFieldContext f;
  f.p = p;
  bool found = false;
  // A cubic is irreducible over GF(p) iff it has no root.
  for (std::int64_t a = 0; a < p && !found; ++a) {
    for (std::int64_t b = 0; b < p && !found; ++b) {
      for (std::int64_t c = 1; c < p && !found; ++c) {
        bool has_root = false;
        for (std::int64_t x = 0; x < p && !has_root; ++x) {
          const std::int64_t v = (((x * x % p) * x) + a * (x * x % p) + b * x + c) % p;
          has_root = (v == 0);
        }
        if (!has_root) {
          f.a = a;
          f.b = b;
          f.c = c;
          found = true;
        }
      }
    }
  }
  if (!found) throw Error(ErrorCode::InvalidParam, "no irreducible cubic found");

  const std::int64_t order = p * p * p - 1;
  const auto factors = prime_factors(order);
  const CubicFieldContext::Element one{1, 0, 0};
  // Elements enumerated by c0 + c1 p + c2 p^2, starting at x.
  for (std::int64_t e = p; e < p * p * p; ++e) {
    const CubicFieldContext::Element g{e % p, (e / p) % p, e / (p * p)};
    bool primitive = true;
    for (std::int64_t l : factors) {
      if (f.pow(g, static_cast<std::uint64_t>(order / l)) == one) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      f.generator = g;
      return f;
    }
  }
  throw Error(ErrorCode::InvalidParam, "no generator found");
}

std::vector<std::int64_t> raw_singer_residues(const CubicFieldContext& field) {
  const std::int64_t p = field.p;
  const std::int64_t q = p * p + p + 1;
  std::vector<std::int64_t> out;
  CubicFieldContext::Element cur{1, 0, 0};
  for (std::int64_t i = 0; i < q; ++i) {
    if (cur[2] == 0) out.push_back(i);
    cur = field.mul(cur, field.generator);
  }
  return out;
}

}  // namespace detail

namespace {

// Lexicographically least translate. It must contain 0, so only the
// translates by -s for s in the set are candidates.
std::vector<std::int64_t> canonical_translate(const std::vector<std::int64_t>& raw, std::int64_t q) {
  std::vector<std::int64_t> best;
  std::vector<std::int64_t> cand(raw.size());
  for (std::int64_t s : raw) {
    for (std::size_t i = 0; i < raw.size(); ++i) cand[i] = ((raw[i] - s) % q + q) % q;
    std::sort(cand.begin(), cand.end());
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

}  // namespace

SingerSet singer_set(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (p > kMaxSingerPrime) {
    throw Error(ErrorCode::LimitExceeded,
                "p=" + std::to_string(p) + " exceeds " + std::to_string(kMaxSingerPrime));
  }
  const auto field = detail::make_cubic_field(p);
  SingerSet s;
  s.p = p;
  s.q = p * p + p + 1;
  s.residues = canonical_translate(detail::raw_singer_residues(field), s.q);
  if (static_cast<std::int64_t>(s.residues.size()) != p + 1 ||
      !verify_perfect_difference_set(s.support(), s.q)) {
    throw Error(ErrorCode::InvalidParam,
                "construction failed verification for p=" + std::to_string(p));
  }
  return s;
}

bool verify_perfect_difference_set(const SupportSet& set, std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::OutOfRange, "q must be positive");
  for (std::int64_t a : set) {
    if (a >= q) throw Error(ErrorCode::OutOfRange, "element " + std::to_string(a) + " >= q");
  }
  std::vector<int> hits(static_cast<std::size_t>(q), 0);
  const auto& e = set.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      const std::int64_t d = ((e[i] - e[j]) % q + q) % q;
      if (++hits[static_cast<std::size_t>(d)] > 1) return false;
    }
  }
  for (std::int64_t r = 1; r < q; ++r) {
    if (hits[static_cast<std::size_t>(r)] != 1) return false;
  }
  return true;
}

}  // namespace flatlab
