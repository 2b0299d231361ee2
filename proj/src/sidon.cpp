#include "flatlab/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "flatlab/error.hpp"

namespace flatlab {

SupportSet::SupportSet(std::vector<std::int64_t> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 0) {
      throw Error(ErrorCode::OutOfRange, "negative element " + std::to_string(elements_[i]));
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw Error(ErrorCode::InvalidParam, "support must be strictly increasing");
    }
  }
}

SupportSet SupportSet::from_unsorted(std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return SupportSet(std::move(elements));
}

bool is_sidon(const SupportSet& set) {
  std::unordered_set<std::int64_t> seen;
  const auto& e = set.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (!seen.insert(e[j] - e[i]).second) return false;
    }
  }
  return true;
}

bool is_bhg(const SupportSet& set, int h, std::int64_t g) {
  if (h < 2 || g < 1) throw Error(ErrorCode::InvalidParam, "need h >= 2 and g >= 1");
  if (set.empty()) return true;
  const std::int64_t top = set.max();
  if (top > std::numeric_limits<std::int64_t>::max() / h) {
    throw Error(ErrorCode::OutOfRange, "h * max(set) overflows");
  }
  const std::size_t width = static_cast<std::size_t>(h * top + 1);
  // ways[k][s]: multisets of size k with sum s over the elements seen so far.
  // Counts saturate at g + 1, which is all the decision needs.
  const std::uint64_t cap = static_cast<std::uint64_t>(g) + 1;
  std::vector<std::vector<std::uint64_t>> ways(h + 1, std::vector<std::uint64_t>(width, 0));
  ways[0][0] = 1;
  for (std::int64_t a : set) {
    // Unbounded multiplicity: increasing k reuses this element.
    for (int k = 1; k <= h; ++k) {
      for (std::size_t s = static_cast<std::size_t>(a); s < width; ++s) {
        const std::uint64_t add = ways[k - 1][s - static_cast<std::size_t>(a)];
        if (add != 0) ways[k][s] = std::min(cap, ways[k][s] + add);
      }
    }
  }
  return std::all_of(ways[h].begin(), ways[h].end(),
                     [&](std::uint64_t w) { return w <= static_cast<std::uint64_t>(g); });
}

DifferenceStats difference_stats(const SupportSet& set) {
  DifferenceStats st;
  const auto& e = set.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) ++st.multiplicities[e[j] - e[i]];
  }
  st.distinct = static_cast<std::int64_t>(st.multiplicities.size());
  for (const auto& [d, m] : st.multiplicities) st.max_multiplicity = std::max(st.max_multiplicity, m);
  return st;
}

bool lindstrom_bound_check(const SupportSet& set, std::int64_t H) {
  if (H < 0) throw Error(ErrorCode::OutOfRange, "H must be nonnegative");
  for (std::int64_t a : set) {
    if (a > H) throw Error(ErrorCode::OutOfRange, "element " + std::to_string(a) + " > H");
  }
  // n < sqrt(H) + H^{1/4} + 1  <=>  t < y^2 + y with y = H^{1/4}, t = n - 1
  //                            <=>  H > y_t^4, y_t = (sqrt(1 + 4t) - 1) / 2.
  const std::int64_t t = static_cast<std::int64_t>(set.size()) - 1;
  if (t < 0) return true;
  const std::int64_t d = 1 + 4 * t;
  const auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(d))));
  for (std::int64_t r = std::max<std::int64_t>(0, s - 2); r <= s + 2; ++r) {
    if (r * r == d) {
      // y_t = (r - 1) / 2 is rational: compare 16 H > (r - 1)^4 exactly.
      const __int128 lhs = static_cast<__int128>(16) * H;
      const __int128 base = r - 1;
      return lhs > base * base * base * base;
    }
  }
  // y_t^4 is irrational here, so equality cannot occur.
  const long double y = (std::sqrt(static_cast<long double>(d)) - 1.0L) / 2.0L;
  return static_cast<long double>(H) > y * y * y * y;
}

}  // namespace flatlab
