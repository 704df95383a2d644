#include "isect/position.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace isect {

bool Position::is_prefix_of(const Position& other) const {
  return path.size() <= other.path.size() &&
         std::equal(path.begin(), path.end(), other.path.begin());
}

std::string to_string(const Position& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.path[i]);
  }
  return s + "]";
}

Position parse_position(const std::string& text) {
  Position p;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    p.path.push_back(static_cast<std::uint32_t>(std::stoul(digits)));
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (c == ',') {
      if (digits.empty()) throw std::invalid_argument("bad position: " + text);
      flush();
    } else if (c != '[' && c != ']' && !std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("bad position: " + text);
    }
  }
  flush();
  return p;
}

}  // namespace isect
