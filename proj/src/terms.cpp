#include "isect/terms.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

#include "isect/errors.hpp"
#include "isect/print.hpp"

namespace isect {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::strong_ordering cmp_str(const std::string& a, const std::string& b) {
  return a.compare(b) <=> 0;
}

}  // namespace

// ===========================================================================
// UntypedTerm

struct UntypedTerm::Node {
  Kind kind;
  bool bound = false;
  std::uint32_t index = 0;
  std::string name;
  std::vector<UntypedTerm> kids;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::uint32_t loose = 0;
};

UntypedTerm UntypedTerm::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = mix(0xf3, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return UntypedTerm(std::move(n));
}

UntypedTerm UntypedTerm::bound(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->bound = true;
  n->index = index;
  n->loose = index + 1;
  n->hash = mix(0xb0, index);
  return UntypedTerm(std::move(n));
}

UntypedTerm UntypedTerm::lam_raw(std::string hint, UntypedTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->hash = mix(0x1a, body.hash());
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->kids.push_back(std::move(body));
  return UntypedTerm(std::move(n));
}

UntypedTerm UntypedTerm::app(UntypedTerm fun, UntypedTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = 1 + fun.size() + arg.size();
  n->hash = mix(mix(0xa9, fun.hash()), arg.hash());
  n->loose = std::max(fun.loose(), arg.loose());
  n->kids.push_back(std::move(fun));
  n->kids.push_back(std::move(arg));
  return UntypedTerm(std::move(n));
}

UntypedTerm UntypedTerm::lam(const std::string& x, const UntypedTerm& body) {
  return lam_raw(x, close(body, x));
}

UntypedTerm::Kind UntypedTerm::kind() const noexcept { return node_->kind; }
bool UntypedTerm::is_bound() const noexcept { return node_->kind == Kind::Var && node_->bound; }
std::uint32_t UntypedTerm::index() const { return node_->index; }
const std::string& UntypedTerm::name() const { return node_->name; }
const UntypedTerm& UntypedTerm::body() const { return node_->kids.at(0); }
const UntypedTerm& UntypedTerm::fun() const { return node_->kids.at(0); }
const UntypedTerm& UntypedTerm::arg() const { return node_->kids.at(1); }
const UntypedTerm& UntypedTerm::child(std::uint32_t i) const { return node_->kids.at(i); }
std::size_t UntypedTerm::size() const noexcept { return node_->size; }
std::size_t UntypedTerm::hash() const noexcept { return node_->hash; }
std::uint32_t UntypedTerm::loose() const noexcept { return node_->loose; }

bool operator==(const UntypedTerm& a, const UntypedTerm& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const UntypedTerm& a, const UntypedTerm& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case UntypedTerm::Kind::Var:
      if (a.is_bound() != b.is_bound())
        return a.is_bound() ? std::strong_ordering::less : std::strong_ordering::greater;
      if (a.is_bound()) return a.index() <=> b.index();
      return cmp_str(a.name(), b.name());
    case UntypedTerm::Kind::Lam:
      return a.body() <=> b.body();
    case UntypedTerm::Kind::App:
      if (auto c = a.fun() <=> b.fun(); c != 0) return c;
      return a.arg() <=> b.arg();
  }
  return std::strong_ordering::equal;
}

// ===========================================================================
// MemTerm

struct MemTerm::Node {
  Kind kind;
  bool bound = false;
  std::uint32_t index = 0;
  std::string name;                  // free name or Lam hint
  std::optional<Type> annot;         // Var
  SetType binder;                    // Lam
  std::optional<MemTerm> sub;        // Lam body, App fun, Wrap head
  SetTerm set;                       // App arg, Wrap payload
  std::size_t size = 1;
  std::size_t hash = 0;
  std::size_t weight = 0;
  std::uint32_t loose = 0;
  bool wabs = false;
  unsigned max_degree = 0;
  std::optional<Type> type;
};

namespace {

// Every occurrence of bound index `depth` in t has an annotation in `binder`.
bool bound_annots_ok(const MemTerm& t, std::uint32_t depth, const SetType& binder) {
  if (t.loose() <= depth) return true;
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return !t.is_bound() || t.index() != depth || binder.contains(t.annot());
    case MemTerm::Kind::Lam:
      return bound_annots_ok(t.body(), depth + 1, binder);
    case MemTerm::Kind::App:
    case MemTerm::Kind::Wrap: {
      if (!bound_annots_ok(t.child(0), depth, binder)) return false;
      const SetTerm& s = t.is_app() ? t.arg() : t.payload();
      for (const auto& e : s)
        if (!bound_annots_ok(e, depth, binder)) return false;
      return true;
    }
  }
  return true;
}

}  // namespace

MemTerm MemTerm::free(std::string name, Type annot) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = mix(mix(0xf3, std::hash<std::string>{}(name)), annot.hash());
  n->name = std::move(name);
  n->type = annot;
  n->annot = std::move(annot);
  return MemTerm(std::move(n));
}

MemTerm MemTerm::bound(std::uint32_t index, Type annot) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->bound = true;
  n->index = index;
  n->loose = index + 1;
  n->hash = mix(mix(0xb0, index), annot.hash());
  n->type = annot;
  n->annot = std::move(annot);
  return MemTerm(std::move(n));
}

MemTerm MemTerm::lam_raw(std::string hint, SetType binder, MemTerm body) {
  if (binder.empty()) throw std::invalid_argument("abstraction with empty binder");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->weight = body.weight();
  n->hash = mix(mix(0x1a, binder.hash()), body.hash());
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->wabs = true;
  n->max_degree = body.max_degree();
  if (body.type() && bound_annots_ok(body, 0, binder)) n->type = Type::arrow(binder, *body.type());
  n->binder = std::move(binder);
  n->sub = std::move(body);
  return MemTerm(std::move(n));
}

MemTerm MemTerm::app(MemTerm fun, SetTerm arg) {
  if (arg.empty()) throw std::invalid_argument("application to an empty set-term");
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = 1 + fun.size();
  for (const auto& e : arg) n->size += e.size();
  n->weight = fun.weight() + arg.weight();
  n->hash = mix(mix(0xa9, fun.hash()), arg.hash());
  n->loose = std::max(fun.loose(), arg.loose());
  n->max_degree = std::max(fun.max_degree(), arg.max_degree());
  if (fun.is_wabs() && fun.type()) n->max_degree = std::max(n->max_degree, fun.type()->height());
  if (const auto& ft = fun.type(); ft && ft->is_arrow()) {
    auto at = arg.type();
    if (at && *at == ft->domain()) n->type = ft->codomain();
  }
  n->sub = std::move(fun);
  n->set = std::move(arg);
  return MemTerm(std::move(n));
}

MemTerm MemTerm::wrap(MemTerm head, SetTerm payload) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Wrap;
  n->size = 1 + head.size();
  for (const auto& e : payload) n->size += e.size();
  n->weight = 1 + head.weight() + payload.weight();
  n->hash = mix(mix(0x3b, head.hash()), payload.hash());
  n->loose = std::max(head.loose(), payload.loose());
  n->wabs = head.is_wabs();
  n->max_degree = std::max(head.max_degree(), payload.max_degree());
  if (head.type() && (payload.empty() || payload.type())) n->type = head.type();
  n->sub = std::move(head);
  n->set = std::move(payload);
  return MemTerm(std::move(n));
}

MemTerm MemTerm::lam(const std::string& x, SetType binder, const MemTerm& body) {
  return lam_raw(x, std::move(binder), close(body, x));
}

MemTerm::Kind MemTerm::kind() const noexcept { return node_->kind; }
bool MemTerm::is_bound() const noexcept { return node_->kind == Kind::Var && node_->bound; }
std::uint32_t MemTerm::index() const { return node_->index; }
const std::string& MemTerm::name() const { return node_->name; }
const Type& MemTerm::annot() const { return *node_->annot; }
const SetType& MemTerm::binder() const { return node_->binder; }
const MemTerm& MemTerm::body() const { return *node_->sub; }
const MemTerm& MemTerm::fun() const { return *node_->sub; }
const SetTerm& MemTerm::arg() const { return node_->set; }
const MemTerm& MemTerm::head() const { return *node_->sub; }
const SetTerm& MemTerm::payload() const { return node_->set; }

const MemTerm& MemTerm::child(std::uint32_t i) const {
  if (is_var()) throw std::out_of_range("variable has no children");
  if (i == 0) return *node_->sub;
  if (is_lam() || i - 1 >= node_->set.size()) throw std::out_of_range("child index");
  return node_->set[i - 1];
}

std::uint32_t MemTerm::child_count() const noexcept {
  switch (kind()) {
    case Kind::Var: return 0;
    case Kind::Lam: return 1;
    default: return 1 + static_cast<std::uint32_t>(node_->set.size());
  }
}

std::size_t MemTerm::size() const noexcept { return node_->size; }
std::size_t MemTerm::hash() const noexcept { return node_->hash; }
std::uint32_t MemTerm::loose() const noexcept { return node_->loose; }
std::size_t MemTerm::weight() const noexcept { return node_->weight; }
bool MemTerm::is_wabs() const noexcept { return node_->wabs; }
const std::optional<Type>& MemTerm::type() const noexcept { return node_->type; }
unsigned MemTerm::max_degree() const noexcept { return node_->max_degree; }

bool operator==(const MemTerm& a, const MemTerm& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const MemTerm& a, const MemTerm& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case MemTerm::Kind::Var:
      if (a.is_bound() != b.is_bound())
        return a.is_bound() ? std::strong_ordering::less : std::strong_ordering::greater;
      if (a.is_bound()) {
        if (auto c = a.index() <=> b.index(); c != 0) return c;
      } else if (auto c = cmp_str(a.name(), b.name()); c != 0) {
        return c;
      }
      return a.annot() <=> b.annot();
    case MemTerm::Kind::Lam:
      if (auto c = a.binder() <=> b.binder(); c != 0) return c;
      return a.body() <=> b.body();
    case MemTerm::Kind::App:
      if (auto c = a.fun() <=> b.fun(); c != 0) return c;
      return a.arg() <=> b.arg();
    case MemTerm::Kind::Wrap:
      if (auto c = a.head() <=> b.head(); c != 0) return c;
      return a.payload() <=> b.payload();
  }
  return std::strong_ordering::equal;
}

// ===========================================================================
// SetTerm

SetTerm::SetTerm(std::initializer_list<MemTerm> elements)
    : SetTerm(std::vector<MemTerm>(elements)) {}

SetTerm::SetTerm(std::vector<MemTerm> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

SetTerm SetTerm::singleton(MemTerm t) {
  SetTerm s;
  s.elems_.push_back(std::move(t));
  return s;
}

SetTerm canonicalize(std::vector<MemTerm> raw) { return SetTerm(std::move(raw)); }

std::size_t SetTerm::hash() const noexcept {
  std::size_t h = 0x5e75;
  for (const auto& e : elems_) h = mix(h, e.hash());
  return h;
}

std::size_t SetTerm::weight() const noexcept {
  std::size_t w = 0;
  for (const auto& e : elems_) w += e.weight();
  return w;
}

std::uint32_t SetTerm::loose() const noexcept {
  std::uint32_t l = 0;
  for (const auto& e : elems_) l = std::max(l, e.loose());
  return l;
}

unsigned SetTerm::max_degree() const noexcept {
  unsigned d = 0;
  for (const auto& e : elems_) d = std::max(d, e.max_degree());
  return d;
}

std::optional<SetType> SetTerm::type() const {
  std::vector<Type> ts;
  ts.reserve(elems_.size());
  for (const auto& e : elems_) {
    if (!e.type()) return std::nullopt;
    ts.push_back(*e.type());
  }
  SetType st(std::move(ts));
  if (st.size() != elems_.size()) return std::nullopt;
  return st;
}

const MemTerm* SetTerm::find_typed(const Type& t) const {
  for (const auto& e : elems_)
    if (e.type() && *e.type() == t) return &e;
  return nullptr;
}

bool operator==(const SetTerm& a, const SetTerm& b) noexcept {
  return a.elems_.size() == b.elems_.size() &&
         std::equal(a.elems_.begin(), a.elems_.end(), b.elems_.begin());
}

std::strong_ordering operator<=>(const SetTerm& a, const SetTerm& b) noexcept {
  return std::lexicographical_compare_three_way(a.elems_.begin(), a.elems_.end(),
                                                b.elems_.begin(), b.elems_.end());
}

MemTerm apply_wrappers(MemTerm t, const WrapperList& list) {
  for (const auto& p : list) t = MemTerm::wrap(std::move(t), p);
  return t;
}

std::pair<MemTerm, WrapperList> peel(const MemTerm& t) {
  WrapperList list;
  const MemTerm* cur = &t;
  while (cur->is_wrap()) {
    list.push_back(cur->payload());
    cur = &cur->head();
  }
  std::reverse(list.begin(), list.end());
  return {*cur, std::move(list)};
}

// ===========================================================================
// Generic traversal. `leaf(var, depth)` rewrites variables; structure is
// rebuilt only on change.

namespace {

template <class Leaf>
MemTerm map_vars(const MemTerm& t, std::uint32_t depth, const Leaf& leaf);

template <class Leaf>
SetTerm map_vars_set(const SetTerm& s, std::uint32_t depth, const Leaf& leaf, bool& changed) {
  std::vector<MemTerm> out;
  out.reserve(s.size());
  changed = false;
  for (const auto& e : s) {
    out.push_back(map_vars(e, depth, leaf));
    if (!(out.back() == e)) changed = true;
  }
  return changed ? SetTerm(std::move(out)) : s;
}

template <class Leaf>
MemTerm map_vars(const MemTerm& t, std::uint32_t depth, const Leaf& leaf) {
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return leaf(t, depth);
    case MemTerm::Kind::Lam: {
      MemTerm b = map_vars(t.body(), depth + 1, leaf);
      return b == t.body() ? t : MemTerm::lam_raw(t.name(), t.binder(), std::move(b));
    }
    case MemTerm::Kind::App:
    case MemTerm::Kind::Wrap: {
      MemTerm h = map_vars(t.child(0), depth, leaf);
      bool changed = false;
      SetTerm s = map_vars_set(t.is_app() ? t.arg() : t.payload(), depth, leaf, changed);
      if (!changed && h == t.child(0)) return t;
      return t.is_app() ? MemTerm::app(std::move(h), std::move(s))
                        : MemTerm::wrap(std::move(h), std::move(s));
    }
  }
  return t;
}

template <class Leaf>
UntypedTerm map_vars(const UntypedTerm& t, std::uint32_t depth, const Leaf& leaf) {
  switch (t.kind()) {
    case UntypedTerm::Kind::Var:
      return leaf(t, depth);
    case UntypedTerm::Kind::Lam: {
      UntypedTerm b = map_vars(t.body(), depth + 1, leaf);
      return b == t.body() ? t : UntypedTerm::lam_raw(t.name(), std::move(b));
    }
    case UntypedTerm::Kind::App: {
      UntypedTerm f = map_vars(t.fun(), depth, leaf);
      UntypedTerm a = map_vars(t.arg(), depth, leaf);
      if (f == t.fun() && a == t.arg()) return t;
      return UntypedTerm::app(std::move(f), std::move(a));
    }
  }
  return t;
}

std::uint32_t shifted(std::uint32_t i, std::int64_t by) {
  std::int64_t r = static_cast<std::int64_t>(i) + by;
  if (r < 0) throw InvariantViolation("negative de Bruijn index after shift");
  return static_cast<std::uint32_t>(r);
}

}  // namespace

MemTerm shift(const MemTerm& t, std::int64_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  return map_vars(t, cutoff, [by](const MemTerm& v, std::uint32_t d) {
    if (!v.is_bound() || v.index() < d) return v;
    return MemTerm::bound(shifted(v.index(), by), v.annot());
  });
}

SetTerm shift(const SetTerm& s, std::int64_t by, std::uint32_t cutoff) {
  if (by == 0 || s.loose() <= cutoff) return s;
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(shift(e, by, cutoff));
  return SetTerm(std::move(out));
}

UntypedTerm shift(const UntypedTerm& t, std::int64_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose() <= cutoff) return t;
  return map_vars(t, cutoff, [by](const UntypedTerm& v, std::uint32_t d) {
    if (!v.is_bound() || v.index() < d) return v;
    return UntypedTerm::bound(shifted(v.index(), by));
  });
}

MemTerm instantiate_with(const MemTerm& body,
                         const std::function<const MemTerm*(const Type&)>& lookup) {
  if (body.loose() == 0) return body;
  return map_vars(body, 0, [&](const MemTerm& v, std::uint32_t d) {
    if (!v.is_bound() || v.index() < d) return v;
    if (v.index() > d) return MemTerm::bound(v.index() - 1, v.annot());
    const MemTerm* s = lookup(v.annot());
    if (!s) throw MissingSubstituent(print(v.annot()));
    return shift(*s, d, 0);
  });
}

MemTerm instantiate(const MemTerm& body, const SetTerm& s) {
  return instantiate_with(body, [&s](const Type& t) { return s.find_typed(t); });
}

UntypedTerm instantiate(const UntypedTerm& body, const UntypedTerm& s) {
  if (body.loose() == 0) return body;
  return map_vars(body, 0, [&](const UntypedTerm& v, std::uint32_t d) {
    if (!v.is_bound() || v.index() < d) return v;
    if (v.index() > d) return UntypedTerm::bound(v.index() - 1);
    return shift(s, d, 0);
  });
}

MemTerm open(const MemTerm& body, const std::string& x) {
  if (body.loose() == 0) return body;
  return map_vars(body, 0, [&](const MemTerm& v, std::uint32_t d) {
    if (!v.is_bound() || v.index() < d) return v;
    if (v.index() > d) return MemTerm::bound(v.index() - 1, v.annot());
    return MemTerm::free(x, v.annot());
  });
}

UntypedTerm open(const UntypedTerm& body, const std::string& x) {
  return instantiate(body, UntypedTerm::free(x));
}

MemTerm close(const MemTerm& t, const std::string& x) {
  return map_vars(t, 0, [&](const MemTerm& v, std::uint32_t d) {
    if (v.is_bound()) return v.index() < d ? v : MemTerm::bound(v.index() + 1, v.annot());
    if (v.name() == x) return MemTerm::bound(d, v.annot());
    return v;
  });
}

UntypedTerm close(const UntypedTerm& t, const std::string& x) {
  return map_vars(t, 0, [&](const UntypedTerm& v, std::uint32_t d) {
    if (v.is_bound()) return v.index() < d ? v : UntypedTerm::bound(v.index() + 1);
    if (v.name() == x) return UntypedTerm::bound(d);
    return v;
  });
}

MemTerm replace_free(const MemTerm& t, const std::string& x,
                     const std::function<const MemTerm*(const Type&)>& lookup) {
  return map_vars(t, 0, [&](const MemTerm& v, std::uint32_t d) {
    if (v.is_bound() || v.name() != x) return v;
    const MemTerm* s = lookup(v.annot());
    if (!s) throw MissingSubstituent(print(v.annot()));
    return shift(*s, d, 0);
  });
}

SetTerm replace_free(const SetTerm& s, const std::string& x,
                     const std::function<const MemTerm*(const Type&)>& lookup) {
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(replace_free(e, x, lookup));
  return SetTerm(std::move(out));
}

UntypedTerm replace_free(const UntypedTerm& t, const std::string& x, const UntypedTerm& s) {
  return map_vars(t, 0, [&](const UntypedTerm& v, std::uint32_t d) {
    if (v.is_bound() || v.name() != x) return v;
    return shift(s, d, 0);
  });
}

namespace {

template <class T, class Pred>
bool any_var(const T& t, const Pred& pred, std::uint32_t depth = 0) {
  if (t.is_var()) return pred(t, depth);
  if (t.is_lam()) return any_var(t.body(), pred, depth + 1);
  if constexpr (std::is_same_v<T, MemTerm>) {
    if (any_var(t.child(0), pred, depth)) return true;
    for (const auto& e : t.is_app() ? t.arg() : t.payload())
      if (any_var(e, pred, depth)) return true;
    return false;
  } else {
    return any_var(t.fun(), pred, depth) || any_var(t.arg(), pred, depth);
  }
}

template <class T>
void collect_free(const T& t, std::vector<std::string>& out) {
  any_var(t, [&](const T& v, std::uint32_t) {
    if (!v.is_bound()) out.push_back(v.name());
    return false;
  });
}

}  // namespace

bool occurs_free(const MemTerm& t, const std::string& x) {
  return any_var(t, [&](const MemTerm& v, std::uint32_t) { return !v.is_bound() && v.name() == x; });
}
bool occurs_free(const UntypedTerm& t, const std::string& x) {
  return any_var(t, [&](const UntypedTerm& v, std::uint32_t) {
    return !v.is_bound() && v.name() == x;
  });
}
bool occurs_bound(const MemTerm& t, std::uint32_t index) {
  if (t.loose() <= index) return false;
  return any_var(t, [&](const MemTerm& v, std::uint32_t d) {
    return v.is_bound() && v.index() == index + d;
  });
}
bool occurs_bound(const UntypedTerm& t, std::uint32_t index) {
  if (t.loose() <= index) return false;
  return any_var(t, [&](const UntypedTerm& v, std::uint32_t d) {
    return v.is_bound() && v.index() == index + d;
  });
}

std::vector<std::string> free_names(const MemTerm& t) {
  std::vector<std::string> out;
  collect_free(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> free_names(const UntypedTerm& t) {
  std::vector<std::string> out;
  collect_free(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string fresh_name(const std::string& hint, const std::vector<std::string>& taken) {
  std::string base = hint.empty() ? "x" : hint;
  auto used = [&](const std::string& n) {
    return std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  if (!used(base)) return base;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
  if (base.empty()) base = "x";
  for (std::size_t i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!used(c)) return c;
  }
}

// ===========================================================================
// Positions

const MemTerm& subterm_at(const MemTerm& t, const Position& p) {
  const MemTerm* cur = &t;
  for (auto i : p.path) {
    if (i >= cur->child_count()) throw InvalidPosition(p);
    cur = &cur->child(i);
  }
  return *cur;
}

const UntypedTerm& subterm_at(const UntypedTerm& t, const Position& p) {
  const UntypedTerm* cur = &t;
  for (auto i : p.path) {
    std::uint32_t n = cur->is_var() ? 0 : cur->is_lam() ? 1 : 2;
    if (i >= n) throw InvalidPosition(p);
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {

MemTerm replace_rec(const MemTerm& t, const Position& p, std::size_t k, const MemTerm& r) {
  if (k == p.path.size()) return r;
  std::uint32_t i = p.path[k];
  if (i >= t.child_count()) throw InvalidPosition(p);
  if (t.is_lam()) return MemTerm::lam_raw(t.name(), t.binder(), replace_rec(t.body(), p, k + 1, r));
  MemTerm h = t.child(0);
  const SetTerm& s = t.is_app() ? t.arg() : t.payload();
  std::vector<MemTerm> elems(s.begin(), s.end());
  if (i == 0)
    h = replace_rec(h, p, k + 1, r);
  else
    elems[i - 1] = replace_rec(elems[i - 1], p, k + 1, r);
  SetTerm ns = i == 0 ? s : SetTerm(std::move(elems));
  return t.is_app() ? MemTerm::app(std::move(h), std::move(ns))
                    : MemTerm::wrap(std::move(h), std::move(ns));
}

UntypedTerm replace_rec(const UntypedTerm& t, const Position& p, std::size_t k,
                        const UntypedTerm& r) {
  if (k == p.path.size()) return r;
  std::uint32_t i = p.path[k];
  if (t.is_var() || (t.is_lam() && i > 0) || i > 1) throw InvalidPosition(p);
  if (t.is_lam()) return UntypedTerm::lam_raw(t.name(), replace_rec(t.body(), p, k + 1, r));
  if (i == 0) return UntypedTerm::app(replace_rec(t.fun(), p, k + 1, r), t.arg());
  return UntypedTerm::app(t.fun(), replace_rec(t.arg(), p, k + 1, r));
}

template <class T>
void positions_rec(const T& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  std::uint32_t n;
  if constexpr (std::is_same_v<T, MemTerm>)
    n = t.child_count();
  else
    n = t.is_var() ? 0 : t.is_lam() ? 1 : 2;
  for (std::uint32_t i = 0; i < n; ++i) {
    cur.path.push_back(i);
    positions_rec(t.child(i), cur, out);
    cur.path.pop_back();
  }
}

}  // namespace

MemTerm replace_at(const MemTerm& t, const Position& p, const MemTerm& replacement) {
  return replace_rec(t, p, 0, replacement);
}

UntypedTerm replace_at(const UntypedTerm& t, const Position& p, const UntypedTerm& replacement) {
  return replace_rec(t, p, 0, replacement);
}

std::vector<Position> positions(const MemTerm& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  return out;
}

std::vector<Position> positions(const UntypedTerm& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  return out;
}

}  // namespace isect
