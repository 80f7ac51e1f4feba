#include "aalloc/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

namespace aalloc {

std::vector<int> DecompositionScheme::replica_levels() const {
  std::vector<int> out;
  for (int h = 4; h >= 1; --h)
    for (int r = 0; r < alpha[h - 1]; ++r) out.push_back(h);
  return out;
}

std::vector<DecompositionScheme> enumerate_schemes(Asil original) {
  int target = original.value();
  if (target == 0) throw std::invalid_argument("nothing to decompose: QM has no ASIL value");
  std::vector<DecompositionScheme> out;
  for (int a4 = 0; a4 <= 4; ++a4)
    for (int a3 = 0; a3 <= 4; ++a3)
      for (int a2 = 0; a2 <= 4; ++a2)
        for (int a1 = 0; a1 <= 4; ++a1)
          if (a1 + 2 * a2 + 3 * a3 + 4 * a4 == target)
            out.push_back({{a1, a2, a3, a4}});
  std::sort(out.begin(), out.end(), [](const DecompositionScheme& l, const DecompositionScheme& r) {
    for (int h = 3; h >= 0; --h)
      if (l.alpha[h] != r.alpha[h]) return l.alpha[h] > r.alpha[h];
    return false;
  });
  return out;
}

std::vector<DecompositionScheme> filter_compatible(const std::vector<DecompositionScheme>& schemes,
                                                   const std::vector<Ecu>& ecus) {
  // capable[h-1] = number of ECUs supporting at least ASIL h
  std::array<int, 4> capable{};
  for (const auto& e : ecus)
    for (int h = 1; h <= e.asil.value() && h <= 4; ++h) ++capable[h - 1];

  std::vector<DecompositionScheme> out;
  for (const auto& s : schemes) {
    bool ok = s.replica_count() <= static_cast<int>(ecus.size());
    int at_or_above = 0;
    for (int h = 4; h >= 1 && ok; --h) {
      at_or_above += s.alpha[h - 1];
      if (at_or_above > capable[h - 1]) ok = false;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace aalloc
