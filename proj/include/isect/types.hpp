#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace isect {

class SetType;

// Strict intersection type: either a base type `a` or an arrow `ā -> B`
// whose domain ā is a non-empty set of types. Immutable, cheap to copy.
class Type {
 public:
  static Type base(std::string name);
  // Throws std::invalid_argument when `domain` is empty.
  static Type arrow(SetType domain, Type codomain);

  bool is_base() const noexcept;
  bool is_arrow() const noexcept { return !is_base(); }

  const std::string& name() const;
  const SetType& domain() const;
  const Type& codomain() const;

  // h(a) = 0, h(ā -> B) = 1 + max(h(ā), h(B)); cached on construction.
  unsigned height() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Type& a, const Type& b) noexcept;
  friend std::strong_ordering operator<=>(const Type& a, const Type& b) noexcept;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Finite duplicate-free set of types, stored sorted under the structural
// order (Base < Arrow, names lexicographic, arrows by domain then codomain).
class SetType {
 public:
  SetType() = default;
  SetType(std::initializer_list<Type> elements);
  explicit SetType(std::vector<Type> elements);

  static SetType singleton(Type t);

  std::span<const Type> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  const Type& operator[](std::size_t i) const { return elems_[i]; }

  bool contains(const Type& t) const;
  bool is_subset_of(const SetType& other) const;
  SetType united(const SetType& other) const;

  // Max of element heights; the empty set has height 0.
  unsigned height() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const SetType& a, const SetType& b) noexcept;
  friend std::strong_ordering operator<=>(const SetType& a, const SetType& b) noexcept;

 private:
  std::vector<Type> elems_;
};

// Sorts and deduplicates; idempotent and insensitive to input order.
SetType canonicalize(std::vector<Type> raw);

}  // namespace isect

template <>
struct std::hash<isect::Type> {
  std::size_t operator()(const isect::Type& t) const noexcept { return t.hash(); }
};
