#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace isect {

// Path of child indices from a root. Abstraction body = 0; application
// function = 0, argument element i = 1+i; wrapper head = 0, payload element
// i = 1+i; for a set-term root, element i = i. Set elements are indexed in
// canonical order.
struct Position {
  std::vector<std::uint32_t> path;

  Position() = default;
  Position(std::initializer_list<std::uint32_t> p) : path(p) {}
  explicit Position(std::vector<std::uint32_t> p) : path(std::move(p)) {}

  Position child(std::uint32_t i) const {
    Position p = *this;
    p.path.push_back(i);
    return p;
  }
  bool empty() const noexcept { return path.empty(); }
  std::size_t depth() const noexcept { return path.size(); }
  bool is_prefix_of(const Position& other) const;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position& a, const Position& b) { return a.path <=> b.path; }
};

// "[0,1,2]"
std::string to_string(const Position& p);
// Accepts "0,1,2", "[0,1,2]" or "" (root).
Position parse_position(const std::string& text);

}  // namespace isect
