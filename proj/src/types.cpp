#include "isect/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace isect {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct Type::Node {
  struct Arrow {
    SetType domain;
    Type codomain;
  };
  std::variant<std::string, Arrow> data;
  unsigned height = 0;
  std::size_t hash = 0;
};

Type Type::base(std::string name) {
  auto node = std::make_shared<Node>();
  node->hash = mix(0x51ed27, std::hash<std::string>{}(name));
  node->data = std::move(name);
  return Type(std::move(node));
}

Type Type::arrow(SetType domain, Type codomain) {
  if (domain.empty()) throw std::invalid_argument("arrow type with empty domain");
  auto node = std::make_shared<Node>();
  node->height = 1 + std::max(domain.height(), codomain.height());
  node->hash = mix(mix(0xa7707, domain.hash()), codomain.hash());
  node->data = Node::Arrow{std::move(domain), std::move(codomain)};
  return Type(std::move(node));
}

bool Type::is_base() const noexcept { return node_->data.index() == 0; }

const std::string& Type::name() const {
  if (!is_base()) throw std::logic_error("Type::name on an arrow type");
  return std::get<0>(node_->data);
}

const SetType& Type::domain() const {
  if (is_base()) throw std::logic_error("Type::domain on a base type");
  return std::get<1>(node_->data).domain;
}

const Type& Type::codomain() const {
  if (is_base()) throw std::logic_error("Type::codomain on a base type");
  return std::get<1>(node_->data).codomain;
}

unsigned Type::height() const noexcept { return node_->height; }
std::size_t Type::hash() const noexcept { return node_->hash; }

bool operator==(const Type& a, const Type& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->height != b.node_->height) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_base() != b.is_base())
    return a.is_base() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_base()) return a.name().compare(b.name()) <=> 0;
  if (auto c = a.domain() <=> b.domain(); c != 0) return c;
  return a.codomain() <=> b.codomain();
}

SetType canonicalize(std::vector<Type> raw) { return SetType(std::move(raw)); }

SetType::SetType(std::initializer_list<Type> elements)
    : SetType(std::vector<Type>(elements)) {}

SetType::SetType(std::vector<Type> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

SetType SetType::singleton(Type t) {
  SetType s;
  s.elems_.push_back(std::move(t));
  return s;
}

bool SetType::contains(const Type& t) const {
  return std::binary_search(elems_.begin(), elems_.end(), t);
}

bool SetType::is_subset_of(const SetType& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(),
                       elems_.end());
}

SetType SetType::united(const SetType& other) const {
  SetType out;
  out.elems_.reserve(elems_.size() + other.elems_.size());
  std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                 std::back_inserter(out.elems_));
  return out;
}

unsigned SetType::height() const noexcept {
  unsigned h = 0;
  for (const auto& t : elems_) h = std::max(h, t.height());
  return h;
}

std::size_t SetType::hash() const noexcept {
  std::size_t h = 0x5e7;
  for (const auto& t : elems_) h = mix(h, t.hash());
  return h;
}

bool operator==(const SetType& a, const SetType& b) noexcept {
  return a.elems_.size() == b.elems_.size() &&
         std::equal(a.elems_.begin(), a.elems_.end(), b.elems_.begin());
}

std::strong_ordering operator<=>(const SetType& a, const SetType& b) noexcept {
  return std::lexicographical_compare_three_way(a.elems_.begin(), a.elems_.end(),
                                                b.elems_.begin(), b.elems_.end());
}

}  // namespace isect
