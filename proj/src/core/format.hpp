#pragma once

#include <span>
#include <string>

#include "prn/model.hpp"

namespace prn {

// Concatenated digits ("0120"); falls back to comma separation when a value
// needs more than one digit.
inline std::string format_digits(std::span<const Value> values) {
  bool wide = false;
  for (Value v : values) {
    wide = wide || v > 9;
  }
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (wide && i > 0) {
      out += ',';
    }
    out += std::to_string(values[i]);
  }
  return out;
}

// "⟨0120⟩"
inline std::string format_values(std::span<const Value> values) {
  return "⟨" + format_digits(values) + "⟩";
}

} // namespace prn
