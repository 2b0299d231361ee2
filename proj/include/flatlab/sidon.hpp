#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

namespace flatlab {

/// Strictly increasing list of nonnegative integers.
class SupportSet {
 public:
  SupportSet() = default;
  /// Throws OutOfRange on negative entries, InvalidParam if not strictly increasing.
  explicit SupportSet(std::vector<std::int64_t> elements);
  SupportSet(std::initializer_list<std::int64_t> elements)
      : SupportSet(std::vector<std::int64_t>(elements)) {}

  /// Sorts and removes duplicates first.
  static SupportSet from_unsorted(std::vector<std::int64_t> elements);

  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::int64_t max() const { return elements_.back(); }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::int64_t> elements_;
};

struct DifferenceStats {
  std::map<std::int64_t, std::int64_t> multiplicities;  // positive difference -> m(l)
  std::int64_t distinct = 0;                             // N
  std::int64_t max_multiplicity = 0;                     // M
};

bool is_sidon(const SupportSet& set);

/// Every integer has at most g representations as a sum of h elements,
/// counted as multisets.
bool is_bhg(const SupportSet& set, int h, std::int64_t g);

DifferenceStats difference_stats(const SupportSet& set);

/// |set| < sqrt(H) + H^{1/4} + 1, decided exactly.
bool lindstrom_bound_check(const SupportSet& set, std::int64_t H);

}  // namespace flatlab
