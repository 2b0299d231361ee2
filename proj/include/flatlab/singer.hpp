#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "flatlab/sidon.hpp"

namespace flatlab {

inline constexpr std::int64_t kMaxSingerPrime = 2000;

/// Perfect difference set modulo q = p^2 + p + 1, in canonical form: the
/// lexicographically least of its translates.
struct SingerSet {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> residues;

  SupportSet support() const { return SupportSet(residues); }
};

bool is_prime(std::int64_t n);

/// Builds the set from GF(p^3) and verifies it exhaustively before returning.
SingerSet singer_set(std::int64_t p);

bool verify_perfect_difference_set(const SupportSet& set, std::int64_t q);

namespace detail {

/// GF(p^3) realized as GF(p)[x]/(x^3 + a x^2 + b x + c).
struct CubicFieldContext {
  std::int64_t p = 0;
  std::int64_t a = 0, b = 0, c = 0;  // monic irreducible cubic
  std::array<std::int64_t, 3> generator{};  // c0 + c1 x + c2 x^2

  using Element = std::array<std::int64_t, 3>;
  Element mul(const Element& u, const Element& v) const;
  Element pow(Element g, std::uint64_t e) const;
};

CubicFieldContext make_cubic_field(std::int64_t p);

/// Raw Singer residues { i mod q : g^i in span{1, x} }, unsorted.
std::vector<std::int64_t> raw_singer_residues(const CubicFieldContext& field);

}  // namespace detail

}  // namespace flatlab
