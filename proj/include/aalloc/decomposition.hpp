#pragma once

#include <array>
#include <vector>

#include "aalloc/asil.hpp"
#include "aalloc/model.hpp"

namespace aalloc {

// Counts of redundant subtasks per ASIL level; alpha[h-1] replicas at level h.
// A valid scheme satisfies sum_h alpha_h * h == original ASIL value.
struct DecompositionScheme {
  std::array<int, 4> alpha{};

  int replica_count() const { return alpha[0] + alpha[1] + alpha[2] + alpha[3]; }
  int weighted_sum() const { return alpha[0] + 2 * alpha[1] + 3 * alpha[2] + 4 * alpha[3]; }

  // Replica ASIL values, highest level first.
  std::vector<int> replica_levels() const;

  friend bool operator==(const DecompositionScheme&, const DecompositionScheme&) = default;
};

// All nonnegative integer vectors alpha with sum alpha_h * h == value(original),
// sorted lexicographically by (alpha4, alpha3, alpha2, alpha1) descending. The
// trivial scheme (one replica at the original level) is always included.
// Throws std::invalid_argument for QM ("nothing to decompose").
std::vector<DecompositionScheme> enumerate_schemes(Asil original);

// Keeps schemes whose replicas can be hosted: every used level has a capable
// ECU, and for each threshold h the replicas at levels >= h fit on distinct
// ECUs supporting >= h. Output is a subsequence of the input.
std::vector<DecompositionScheme> filter_compatible(const std::vector<DecompositionScheme>& schemes,
                                                   const std::vector<Ecu>& ecus);

}  // namespace aalloc
