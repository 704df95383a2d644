#include "isect/typing.hpp"

#include "isect/errors.hpp"
#include "isect/print.hpp"

namespace isect {

TypingContext context_union(const TypingContext& a, const TypingContext& b) {
  TypingContext out = a;
  for (const auto& [x, s] : b) {
    auto [it, inserted] = out.emplace(x, s);
    if (!inserted) it->second = it->second.united(s);
  }
  return out;
}

bool context_subset(const TypingContext& a, const TypingContext& b) {
  for (const auto& [x, s] : a) {
    if (s.empty()) continue;
    auto it = b.find(x);
    if (it == b.end() || !s.is_subset_of(it->second)) return false;
  }
  return true;
}

std::string print(const TypingContext& ctx) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, s] : ctx) {
    if (!first) out += ", ";
    first = false;
    out += x + ": " + print(s);
  }
  return out + "}";
}

namespace {

// Position of an occurrence of bound index `depth` whose annotation is not in
// `binder`.
bool find_bad_bound(const MemTerm& t, std::uint32_t depth, const SetType& binder, Position& p) {
  if (t.loose() <= depth) return false;
  if (t.is_var()) return t.is_bound() && t.index() == depth && !binder.contains(t.annot());
  for (std::uint32_t i = 0; i < t.child_count(); ++i) {
    p.path.push_back(i);
    if (find_bad_bound(t.child(i), t.is_lam() ? depth + 1 : depth, binder, p)) return true;
    p.path.pop_back();
  }
  return false;
}

Type synth(const MemTerm& t, Position& p);

SetType synth_set(const SetTerm& s, Position& p, std::uint32_t offset) {
  std::vector<Type> ts;
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    p.path.push_back(i + offset);
    Type a = synth(s[i], p);
    for (std::uint32_t j = 0; j < ts.size(); ++j)
      if (ts[j] == a) throw NotTypable(p, "two elements of a set-term have type " + print(a));
    p.path.pop_back();
    ts.push_back(std::move(a));
  }
  return SetType(std::move(ts));
}

Type synth(const MemTerm& t, Position& p) {
  if (t.type()) return *t.type();
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return t.annot();
    case MemTerm::Kind::Lam: {
      p.path.push_back(0);
      Type b = synth(t.body(), p);
      p.path.pop_back();
      Position q = p.child(0);
      if (find_bad_bound(t.body(), 0, t.binder(), q))
        throw NotTypable(q, "annotation not in the binder " + print(t.binder()));
      return Type::arrow(t.binder(), b);
    }
    case MemTerm::Kind::App: {
      p.path.push_back(0);
      Type f = synth(t.fun(), p);
      p.path.pop_back();
      if (!f.is_arrow()) throw NotTypable(p, "function part has type " + print(f) + ", not an arrow");
      SetType a = synth_set(t.arg(), p, 1);
      if (!(a == f.domain()))
        throw NotTypable(p, "argument has type " + print(a) + " but the domain is " +
                                print(f.domain()));
      return f.codomain();
    }
    case MemTerm::Kind::Wrap: {
      p.path.push_back(0);
      Type h = synth(t.head(), p);
      p.path.pop_back();
      synth_set(t.payload(), p, 1);
      return h;
    }
  }
  throw InvariantViolation("unreachable term kind");
}

template <class F>
void each_free(const MemTerm& t, const F& f) {
  if (t.is_var()) {
    if (!t.is_bound()) f(t);
    return;
  }
  for (std::uint32_t i = 0; i < t.child_count(); ++i) each_free(t.child(i), f);
}

void audit(const TypingContext& ctx, const MemTerm& t) {
  each_free(t, [&](const MemTerm& v) {
    auto it = ctx.find(v.name());
    if (it == ctx.end() || !it->second.contains(v.annot()))
      throw UnboundOrWrongAnnotation(v.name(), print(v.annot()));
  });
}

}  // namespace

Type synthesize_type(const MemTerm& t) {
  if (t.type()) return *t.type();
  Position p;
  return synth(t, p);
}

SetType synthesize_type(const SetTerm& s) {
  if (auto st = s.type()) return *st;
  Position p;
  return synth_set(s, p, 0);
}

Type check(const TypingContext& ctx, const MemTerm& t) {
  Type a = synthesize_type(t);
  audit(ctx, t);
  return a;
}

SetType check(const TypingContext& ctx, const SetTerm& s) {
  SetType a = synthesize_type(s);
  for (const auto& e : s) audit(ctx, e);
  return a;
}

TypingContext minimal_context(const MemTerm& t) {
  synthesize_type(t);
  std::map<std::string, std::vector<Type>> raw;
  each_free(t, [&](const MemTerm& v) { raw[v.name()].push_back(v.annot()); });
  TypingContext out;
  for (auto& [x, ts] : raw) out.emplace(x, SetType(std::move(ts)));
  return out;
}

TypingContext minimal_context(const SetTerm& s) {
  synthesize_type(s);
  TypingContext out;
  for (const auto& e : s) out = context_union(out, minimal_context(e));
  return out;
}

bool sets_well_formed(const MemTerm& t) {
  if (t.is_var()) return true;
  if (t.is_lam()) return sets_well_formed(t.body());
  const SetTerm& s = t.is_app() ? t.arg() : t.payload();
  if (t.is_app() && s.empty()) return false;
  if (!s.type() && !s.empty()) return false;
  std::vector<MemTerm> copy(s.begin(), s.end());
  if (!(SetTerm(copy) == s)) return false;
  for (std::uint32_t i = 0; i < t.child_count(); ++i)
    if (!sets_well_formed(t.child(i))) return false;
  return true;
}

bool refines(const MemTerm& t, const UntypedTerm& m) {
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      if (!m.is_var() || t.is_bound() != m.is_bound()) return false;
      return t.is_bound() ? t.index() == m.index() : t.name() == m.name();
    case MemTerm::Kind::Lam:
      return m.is_lam() && refines(t.body(), m.body());
    case MemTerm::Kind::App:
      return m.is_app() && refines(t.fun(), m.fun()) && refines(t.arg(), m.arg());
    case MemTerm::Kind::Wrap:
      return false;
  }
  return false;
}

bool refines(const SetTerm& s, const UntypedTerm& m) {
  if (s.empty()) return false;
  for (const auto& e : s)
    if (!refines(e, m)) return false;
  return true;
}

namespace {

UntypedTerm erase_at(const MemTerm& t, Position& p) {
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return t.is_bound() ? UntypedTerm::bound(t.index()) : UntypedTerm::free(t.name());
    case MemTerm::Kind::Lam: {
      p.path.push_back(0);
      UntypedTerm b = erase_at(t.body(), p);
      p.path.pop_back();
      return UntypedTerm::lam_raw(t.name(), std::move(b));
    }
    case MemTerm::Kind::App: {
      p.path.push_back(0);
      UntypedTerm f = erase_at(t.fun(), p);
      p.path.pop_back();
      std::optional<UntypedTerm> a;
      for (std::uint32_t i = 0; i < t.arg().size(); ++i) {
        p.path.push_back(1 + i);
        UntypedTerm e = erase_at(t.arg()[i], p);
        p.path.pop_back();
        if (!a)
          a = std::move(e);
        else if (!(*a == e))
          throw NotUniform(p);
      }
      return UntypedTerm::app(std::move(f), std::move(*a));
    }
    case MemTerm::Kind::Wrap:
      throw NotUniform(p);
  }
  throw InvariantViolation("unreachable term kind");
}

}  // namespace

UntypedTerm erase(const MemTerm& t) {
  Position p;
  return erase_at(t, p);
}

bool is_uniform(const MemTerm& t) {
  try {
    erase(t);
    return true;
  } catch (const NotUniform&) {
    return false;
  }
}

}  // namespace isect
