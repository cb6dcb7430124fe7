#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace basewalk {

// Elements of a matroid ground set are dense integer ids in [0, m).
using ElementId = int;

// Costs are nonnegative 64-bit integers; kInfCost is an explicit
// unavailability sentinel, never a "large number".
using Cost = std::int64_t;
inline constexpr Cost kInfCost = std::numeric_limits<Cost>::max();

inline bool is_finite(Cost c) { return c != kInfCost; }

// Saturating addition so holding-cost sums never wrap.
inline Cost add_cost(Cost a, Cost b) {
  if (!is_finite(a) || !is_finite(b)) return kInfCost;
  if (a > kInfCost - b) return kInfCost;
  return a + b;
}

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Element sets are sorted, duplicate-free id vectors.
using ElementSet = std::vector<ElementId>;

inline void normalize(ElementSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool contains(const ElementSet& s, ElementId e) {
  return std::binary_search(s.begin(), s.end(), e);
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace basewalk
