#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isect/position.hpp"
#include "isect/types.hpp"

namespace isect {

// ---------------------------------------------------------------------------
// Untyped lambda terms. Bound variables are de Bruijn indices; the name on a
// Lam is only a printing hint and is ignored by == and <=>.

class UntypedTerm {
 public:
  enum class Kind : std::uint8_t { Var, Lam, App };

  static UntypedTerm free(std::string name);
  static UntypedTerm bound(std::uint32_t index);
  static UntypedTerm lam_raw(std::string hint, UntypedTerm body);
  static UntypedTerm app(UntypedTerm fun, UntypedTerm arg);
  // \x. body, abstracting the free variable x of body.
  static UntypedTerm lam(const std::string& x, const UntypedTerm& body);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_lam() const noexcept { return kind() == Kind::Lam; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  bool is_bound() const noexcept;
  bool is_free() const noexcept { return is_var() && !is_bound(); }

  std::uint32_t index() const;
  // Free-variable name, or the hint of a Lam.
  const std::string& name() const;
  const UntypedTerm& body() const;
  const UntypedTerm& fun() const;
  const UntypedTerm& arg() const;
  const UntypedTerm& child(std::uint32_t i) const;

  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;
  // 1 + largest dangling bound index, 0 when locally closed.
  std::uint32_t loose() const noexcept;

  friend bool operator==(const UntypedTerm& a, const UntypedTerm& b) noexcept;
  friend std::strong_ordering operator<=>(const UntypedTerm& a, const UntypedTerm& b) noexcept;

 private:
  struct Node;
  explicit UntypedTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Annotated terms with wrappers. Terms without Wrap nodes are the plain
// Church-style terms.

class SetTerm;

class MemTerm {
 public:
  enum class Kind : std::uint8_t { Var, Lam, App, Wrap };

  static MemTerm free(std::string name, Type annot);
  static MemTerm bound(std::uint32_t index, Type annot);
  // Throws std::invalid_argument on an empty binder.
  static MemTerm lam_raw(std::string hint, SetType binder, MemTerm body);
  // Throws std::invalid_argument on an empty argument.
  static MemTerm app(MemTerm fun, SetTerm arg);
  static MemTerm wrap(MemTerm head, SetTerm payload);
  // \x:binder. body, abstracting the free variable x of body.
  static MemTerm lam(const std::string& x, SetType binder, const MemTerm& body);

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_lam() const noexcept { return kind() == Kind::Lam; }
  bool is_app() const noexcept { return kind() == Kind::App; }
  bool is_wrap() const noexcept { return kind() == Kind::Wrap; }
  bool is_bound() const noexcept;
  bool is_free() const noexcept { return is_var() && !is_bound(); }

  std::uint32_t index() const;
  const std::string& name() const;
  const Type& annot() const;
  const SetType& binder() const;
  const MemTerm& body() const;
  const MemTerm& fun() const;
  const SetTerm& arg() const;
  const MemTerm& head() const;
  const SetTerm& payload() const;
  // Child at one position step; throws InvalidPosition-free std::out_of_range.
  const MemTerm& child(std::uint32_t i) const;
  std::uint32_t child_count() const noexcept;

  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;
  std::uint32_t loose() const noexcept;
  // Number of Wrap nodes anywhere inside.
  std::size_t weight() const noexcept;
  bool wrapper_free() const noexcept { return weight() == 0; }
  // Abstraction followed by zero or more wrappers.
  bool is_wabs() const noexcept;
  // Type computed bottom-up from annotations, or nullopt when some typing
  // rule fails inside (bound occurrences are checked against their binder,
  // free ones are not).
  const std::optional<Type>& type() const noexcept;
  // Largest height among types of applied w-abstractions, 0 without redexes.
  unsigned max_degree() const noexcept;

  friend bool operator==(const MemTerm& a, const MemTerm& b) noexcept;
  friend std::strong_ordering operator<=>(const MemTerm& a, const MemTerm& b) noexcept;

 private:
  struct Node;
  explicit MemTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend class SetTerm;
};

// Finite set of terms, sorted and free of α-duplicates.
class SetTerm {
 public:
  SetTerm() = default;
  SetTerm(std::initializer_list<MemTerm> elements);
  explicit SetTerm(std::vector<MemTerm> elements);
  static SetTerm singleton(MemTerm t);

  std::span<const MemTerm> elements() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }
  const MemTerm& operator[](std::size_t i) const { return elems_[i]; }

  std::size_t hash() const noexcept;
  std::size_t weight() const noexcept;
  std::uint32_t loose() const noexcept;
  unsigned max_degree() const noexcept;
  // Set of element types when every element is typed and the types are
  // pairwise distinct; nullopt otherwise.
  std::optional<SetType> type() const;
  // Element whose synthesized type is t, if any.
  const MemTerm* find_typed(const Type& t) const;

  friend bool operator==(const SetTerm& a, const SetTerm& b) noexcept;
  friend std::strong_ordering operator<=>(const SetTerm& a, const SetTerm& b) noexcept;

 private:
  std::vector<MemTerm> elems_;
};

SetTerm canonicalize(std::vector<MemTerm> raw);

// Wrapper payloads, innermost first: apply_wrappers(t, {p1, p2}) = t<p1><p2>.
using WrapperList = std::vector<SetTerm>;
MemTerm apply_wrappers(MemTerm t, const WrapperList& list);
// Strips all outer wrappers: t = apply_wrappers(core, list).
std::pair<MemTerm, WrapperList> peel(const MemTerm& t);

// ---------------------------------------------------------------------------
// Nameless plumbing.

// Adds `by` to every bound index >= cutoff.
MemTerm shift(const MemTerm& t, std::int64_t by, std::uint32_t cutoff = 0);
SetTerm shift(const SetTerm& s, std::int64_t by, std::uint32_t cutoff = 0);
UntypedTerm shift(const UntypedTerm& t, std::int64_t by, std::uint32_t cutoff = 0);

// Body of an abstraction with bound index 0 replaced by the element of `s`
// whose type is the occurrence's annotation; throws MissingSubstituent.
// Elements of `s` live in the context outside the abstraction.
MemTerm instantiate(const MemTerm& body, const SetTerm& s);
// Same, with an explicit type -> substituent lookup.
MemTerm instantiate_with(const MemTerm& body,
                         const std::function<const MemTerm*(const Type&)>& lookup);
UntypedTerm instantiate(const UntypedTerm& body, const UntypedTerm& s);

// Replace bound index 0 by the free variable x (same annotation).
MemTerm open(const MemTerm& body, const std::string& x);
UntypedTerm open(const UntypedTerm& body, const std::string& x);
// Replace free x by bound index 0 (shifting others); inverse of open.
MemTerm close(const MemTerm& t, const std::string& x);
UntypedTerm close(const UntypedTerm& t, const std::string& x);

// Replaces each free occurrence x^A by lookup(A) (or throws
// MissingSubstituent when lookup gives null). Substituents must be locally
// closed.
MemTerm replace_free(const MemTerm& t, const std::string& x,
                     const std::function<const MemTerm*(const Type&)>& lookup);
SetTerm replace_free(const SetTerm& s, const std::string& x,
                     const std::function<const MemTerm*(const Type&)>& lookup);
UntypedTerm replace_free(const UntypedTerm& t, const std::string& x, const UntypedTerm& s);

bool occurs_free(const MemTerm& t, const std::string& x);
bool occurs_free(const UntypedTerm& t, const std::string& x);
// Does bound index `index` (relative to t) occur in t?
bool occurs_bound(const MemTerm& t, std::uint32_t index);
bool occurs_bound(const UntypedTerm& t, std::uint32_t index);

// Free variable names, sorted.
std::vector<std::string> free_names(const MemTerm& t);
std::vector<std::string> free_names(const UntypedTerm& t);
// Name not in `taken`, built from `hint` by appending digits when needed.
std::string fresh_name(const std::string& hint, const std::vector<std::string>& taken);

// ---------------------------------------------------------------------------
// Positions.

// Throws InvalidPosition.
const MemTerm& subterm_at(const MemTerm& t, const Position& p);
const UntypedTerm& subterm_at(const UntypedTerm& t, const Position& p);
// Rebuilds t with the subterm at p replaced; sets on the path are
// re-canonicalized. The replacement lives under the same binders.
MemTerm replace_at(const MemTerm& t, const Position& p, const MemTerm& replacement);
UntypedTerm replace_at(const UntypedTerm& t, const Position& p, const UntypedTerm& replacement);
// All positions, preorder (= Position order).
std::vector<Position> positions(const MemTerm& t);
std::vector<Position> positions(const UntypedTerm& t);

}  // namespace isect

template <>
struct std::hash<isect::MemTerm> {
  std::size_t operator()(const isect::MemTerm& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<isect::UntypedTerm> {
  std::size_t operator()(const isect::UntypedTerm& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<isect::SetTerm> {
  std::size_t operator()(const isect::SetTerm& s) const noexcept { return s.hash(); }
};
