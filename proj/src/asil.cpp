#include "aalloc/asil.hpp"

#include <cctype>
#include <stdexcept>

namespace aalloc {

Asil Asil::from_value(int v) {
  if (v < 0 || v > 4) {
    throw std::out_of_range("ASIL value must be in [0, 4], got " + std::to_string(v));
  }
  return Asil{v};
}

std::optional<Asil> Asil::parse(std::string_view s) {
  std::string up;
  up.reserve(s.size());
  for (char ch : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (up == "QM") return qm();
  if (up == "A") return a();
  if (up == "B") return b();
  if (up == "C") return c();
  if (up == "D") return d();
  return std::nullopt;
}

std::string Asil::name() const {
  switch (value_) {
    case 0: return "QM";
    case 1: return "A";
    case 2: return "B";
    case 3: return "C";
    default: return "D";
  }
}

}  // namespace aalloc
