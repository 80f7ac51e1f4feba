#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace aalloc {

// Integrity level with the numeric encoding QM=0, A=1, B=2, C=3, D=4.
// The total order QM < A < B < C < D coincides with the numeric order.
class Asil {
 public:
  constexpr Asil() = default;

  static constexpr Asil qm() { return Asil{0}; }
  static constexpr Asil a() { return Asil{1}; }
  static constexpr Asil b() { return Asil{2}; }
  static constexpr Asil c() { return Asil{3}; }
  static constexpr Asil d() { return Asil{4}; }

  // Throws std::out_of_range for v outside [0, 4].
  static Asil from_value(int v);

  // Accepts "QM", "A".."D" (case-insensitive); nullopt otherwise.
  static std::optional<Asil> parse(std::string_view s);

  constexpr int value() const { return value_; }
  std::string name() const;

  friend constexpr auto operator<=>(Asil lhs, Asil rhs) = default;

 private:
  constexpr explicit Asil(int v) : value_(v) {}
  int value_ = 0;
};

}  // namespace aalloc
