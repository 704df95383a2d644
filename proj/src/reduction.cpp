#include "isect/reduction.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "isect/errors.hpp"
#include "isect/print.hpp"

namespace isect {

const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::Beta: return "beta";
    case Calculus::I: return "i";
    case Calculus::Im: return "im";
  }
  return "?";
}

const char* step_kind_name(Step::Kind k) {
  switch (k) {
    case Step::Kind::Beta: return "beta";
    case Step::Kind::I: return "i";
    case Step::Kind::Im: return "im";
    case Step::Kind::Forget: return "forget";
    case Step::Kind::Parallel: return "parallel";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Substitution

MemTerm substitute(const MemTerm& t, const std::string& x, const SetType& binder, const SetTerm& s,
                   const TypingContext& ctx) {
  SetType st = check(ctx, s);
  if (!(st == binder)) throw IllTyped("substituent has type " + print(st) + ", expected " + print(binder));
  return replace_free(t, x, [&s](const Type& a) { return s.find_typed(a); });
}

SetTerm substitute(const SetTerm& t, const std::string& x, const SetType& binder, const SetTerm& s,
                   const TypingContext& ctx) {
  std::vector<MemTerm> out;
  for (const auto& e : t) out.push_back(substitute(e, x, binder, s, ctx));
  return SetTerm(std::move(out));
}

// ---------------------------------------------------------------------------
// Redexes and single steps

namespace {

MemTerm instantiate_typed(const MemTerm& body, const SetTerm& arg) {
  try {
    return instantiate(body, arg);
  } catch (const MissingSubstituent& e) {
    throw IllTyped(std::string("ill-typed redex: ") + e.what());
  }
}

void collect_redexes(const MemTerm& t, Position& p, std::vector<Redex>& out) {
  if (t.is_app() && t.fun().is_wabs()) {
    auto [lam, list] = peel(t.fun());
    Redex r;
    r.position = p;
    r.binder_name = lam.name();
    r.binder = lam.binder();
    r.wrapper_count = list.size();
    r.degree = t.fun().type() ? t.fun().type()->height() : 0;
    out.push_back(std::move(r));
  }
  for (std::uint32_t i = 0; i < t.child_count(); ++i) {
    p.path.push_back(i);
    collect_redexes(t.child(i), p, out);
    p.path.pop_back();
  }
}

MemTerm contract(const MemTerm& redex, bool memory) {
  auto [lam, list] = peel(redex.fun());
  const SetTerm& arg = redex.arg();
  MemTerm body = instantiate_typed(lam.body(), arg);
  if (!memory) return body;
  return apply_wrappers(MemTerm::wrap(std::move(body), arg), list);
}

const MemTerm& redex_at(const MemTerm& t, const Position& p) {
  const MemTerm& r = subterm_at(t, p);
  if (!r.is_app() || !r.fun().is_wabs()) throw NotARedex(p);
  return r;
}

}  // namespace

std::vector<Redex> redexes(const MemTerm& t) {
  std::vector<Redex> out;
  Position p;
  collect_redexes(t, p, out);
  return out;
}

std::vector<Redex> i_redexes(const MemTerm& t) {
  std::vector<Redex> all = redexes(t);
  std::vector<Redex> out;
  for (auto& r : all)
    if (r.wrapper_count == 0) out.push_back(std::move(r));
  return out;
}

MemTerm step_i(const MemTerm& t, const Position& p) {
  const MemTerm& r = redex_at(t, p);
  if (!r.fun().is_lam()) throw NotARedex(p, "wrapped abstraction is not an i-redex");
  if (!r.type()) throw IllTyped("redex at " + to_string(p) + " is not typable");
  return replace_at(t, p, contract(r, false));
}

MemTerm step_im(const MemTerm& t, const Position& p) {
  const MemTerm& r = redex_at(t, p);
  if (!r.type()) throw IllTyped("redex at " + to_string(p) + " is not typable");
  return replace_at(t, p, contract(r, true));
}

MemTerm step(const MemTerm& t, const Position& p, Calculus c) {
  switch (c) {
    case Calculus::I: return step_i(t, p);
    case Calculus::Im: return step_im(t, p);
    case Calculus::Beta: break;
  }
  throw std::invalid_argument("beta steps act on untyped terms");
}

MemTerm corresponding_step(const MemTerm& t, const Position& p) {
  const MemTerm& r = redex_at(t, p);
  if (!r.fun().is_lam()) throw NotARedex(p, "wrapped abstraction is not an i-redex");
  return step_im(t, p);
}

std::vector<std::pair<Position, MemTerm>> one_step_reducts(const MemTerm& t, Calculus c) {
  std::vector<std::pair<Position, MemTerm>> out;
  for (const auto& r : c == Calculus::I ? i_redexes(t) : redexes(t))
    out.emplace_back(r.position, step(t, r.position, c));
  return out;
}

// ---------------------------------------------------------------------------
// Forgetful reduction

std::vector<std::pair<Position, MemTerm>> forgetful_reducts(const MemTerm& t) {
  std::vector<std::pair<Position, MemTerm>> out;
  if (t.wrapper_free()) return out;
  for (const auto& p : positions(t)) {
    const MemTerm& u = subterm_at(t, p);
    if (u.is_wrap()) out.emplace_back(p, replace_at(t, p, u.head()));
  }
  return out;
}

namespace {

bool forgets_set(const SetTerm& a, const SetTerm& b);

bool forgets(const MemTerm& a, const MemTerm& b) {
  if (a == b) return true;
  if (a.weight() < b.weight()) return false;
  if (a.is_wrap()) {
    if (b.is_wrap() && forgets(a.head(), b.head()) && forgets_set(a.payload(), b.payload()))
      return true;
    return forgets(a.head(), b);
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case MemTerm::Kind::Var:
      return false;
    case MemTerm::Kind::Lam:
      return a.binder() == b.binder() && forgets(a.body(), b.body());
    case MemTerm::Kind::App:
      return forgets(a.fun(), b.fun()) && forgets_set(a.arg(), b.arg());
    case MemTerm::Kind::Wrap:
      break;
  }
  return false;
}

bool forgets_set_from(const SetTerm& a, const SetTerm& b, std::size_t i, std::vector<bool>& used) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    if (a[i].type() && b[j].type() && !(*a[i].type() == *b[j].type())) continue;
    if (!forgets(a[i], b[j])) continue;
    used[j] = true;
    if (forgets_set_from(a, b, i + 1, used)) return true;
    used[j] = false;
  }
  return false;
}

bool forgets_set(const SetTerm& a, const SetTerm& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  return forgets_set_from(a, b, 0, used);
}

}  // namespace

bool forgets_to(const MemTerm& t, const MemTerm& s) { return forgets(t, s); }

// ---------------------------------------------------------------------------
// Complete development

SetTerm complete_development(const SetTerm& s, Calculus c) {
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(complete_development(e, c));
  return SetTerm(std::move(out));
}

MemTerm complete_development(const MemTerm& t, Calculus c) {
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return t;
    case MemTerm::Kind::Lam:
      return MemTerm::lam_raw(t.name(), t.binder(), complete_development(t.body(), c));
    case MemTerm::Kind::Wrap:
      return MemTerm::wrap(complete_development(t.head(), c), complete_development(t.payload(), c));
    case MemTerm::Kind::App: {
      SetTerm arg = complete_development(t.arg(), c);
      bool redex = c == Calculus::I ? t.fun().is_lam() : t.fun().is_wabs();
      if (!redex) return MemTerm::app(complete_development(t.fun(), c), std::move(arg));
      auto [lam, list] = peel(t.fun());
      MemTerm body = instantiate_typed(complete_development(lam.body(), c), arg);
      if (c == Calculus::I) return body;
      WrapperList devl;
      for (const auto& p : list) devl.push_back(complete_development(p, c));
      return apply_wrappers(MemTerm::wrap(std::move(body), std::move(arg)), devl);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Parallel reduction

namespace {

// One entry per binder enclosing the source subterm, innermost first. A kept
// binder is still present in the target; a contracted one maps occurrences
// to elements of `with`, which lives just outside that binder in the target.
struct EnvEntry {
  bool keep;
  SetTerm with;
};
using Env = std::vector<EnvEntry>;

std::uint32_t keeps_before(const Env& env, std::size_t i) {
  std::uint32_t k = 0;
  for (std::size_t j = 0; j < i && j < env.size(); ++j) k += env[j].keep;
  return k;
}

// Translates a source-world term into the target world.
MemTerm apply_env(const MemTerm& t, const Env& env);

SetTerm apply_env(const SetTerm& s, const Env& env) {
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(apply_env(e, env));
  return SetTerm(std::move(out));
}

MemTerm apply_env_at(const MemTerm& t, const Env& env, std::uint32_t depth) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case MemTerm::Kind::Var: {
      std::uint32_t j = t.index() - depth;
      if (j < env.size()) {
        if (env[j].keep) return MemTerm::bound(depth + keeps_before(env, j), t.annot());
        const MemTerm* s = env[j].with.find_typed(t.annot());
        if (!s) throw MissingSubstituent(print(t.annot()));
        return shift(*s, depth + keeps_before(env, j), 0);
      }
      return MemTerm::bound(j - static_cast<std::uint32_t>(env.size()) + keeps_before(env, env.size()) + depth,
                            t.annot());
    }
    case MemTerm::Kind::Lam:
      return MemTerm::lam_raw(t.name(), t.binder(), apply_env_at(t.body(), env, depth + 1));
    case MemTerm::Kind::App:
    case MemTerm::Kind::Wrap: {
      MemTerm h = apply_env_at(t.child(0), env, depth);
      std::vector<MemTerm> out;
      for (const auto& e : t.is_app() ? t.arg() : t.payload()) out.push_back(apply_env_at(e, env, depth));
      return t.is_app() ? MemTerm::app(std::move(h), SetTerm(std::move(out)))
                        : MemTerm::wrap(std::move(h), SetTerm(std::move(out)));
    }
  }
  return t;
}

MemTerm apply_env(const MemTerm& t, const Env& env) { return apply_env_at(t, env, 0); }

class ParReducts {
 public:
  ParReducts(Calculus c, std::size_t limit) : c_(c), limit_(limit) {}

  std::vector<MemTerm> of(const MemTerm& t) {
    std::vector<MemTerm> out;
    switch (t.kind()) {
      case MemTerm::Kind::Var:
        out.push_back(t);
        break;
      case MemTerm::Kind::Lam:
        for (auto& b : of(t.body())) out.push_back(MemTerm::lam_raw(t.name(), t.binder(), std::move(b)));
        break;
      case MemTerm::Kind::Wrap: {
        auto hs = of(t.head());
        auto ps = of(t.payload());
        for (const auto& h : hs)
          for (const auto& p : ps) push(out, MemTerm::wrap(h, p));
        break;
      }
      case MemTerm::Kind::App: {
        auto fs = of(t.fun());
        auto as = of(t.arg());
        for (const auto& f : fs)
          for (const auto& a : as) push(out, MemTerm::app(f, a));
        bool redex = c_ == Calculus::I ? t.fun().is_lam() : t.fun().is_wabs();
        if (redex) {
          auto [lam, list] = peel(t.fun());
          auto bodies = of(lam.body());
          std::vector<WrapperList> lists{{}};
          for (const auto& p : list) {
            std::vector<WrapperList> next;
            for (const auto& q : of(p))
              for (const auto& l : lists) {
                WrapperList e = l;
                e.push_back(q);
                next.push_back(std::move(e));
              }
            lists = std::move(next);
          }
          for (const auto& b : bodies)
            for (const auto& a : as) {
              MemTerm r = instantiate(b, a);
              if (c_ == Calculus::I) {
                push(out, r);
                continue;
              }
              for (const auto& l : lists) push(out, apply_wrappers(MemTerm::wrap(r, a), l));
            }
        }
        break;
      }
    }
    dedup(out);
    return out;
  }

  std::vector<SetTerm> of(const SetTerm& s) {
    std::vector<std::vector<MemTerm>> partial{{}};
    for (const auto& e : s) {
      std::vector<std::vector<MemTerm>> next;
      for (const auto& r : of(e))
        for (const auto& p : partial) {
          auto q = p;
          q.push_back(r);
          next.push_back(std::move(q));
          if (next.size() > limit_) throw SearchBudgetExceeded("too many parallel reducts");
        }
      partial = std::move(next);
    }
    std::vector<SetTerm> out;
    for (auto& p : partial) out.emplace_back(std::move(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void push(std::vector<MemTerm>& out, MemTerm t) {
    out.push_back(std::move(t));
    if (out.size() > limit_) throw SearchBudgetExceeded("too many parallel reducts");
  }
  static void dedup(std::vector<MemTerm>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  Calculus c_;
  std::size_t limit_;
};

class ParMatcher {
 public:
  ParMatcher(Calculus c, std::size_t limit) : c_(c), reducts_(c, limit) {}

  // Is there u' with u ⇒ u' and apply_env(u') = x?
  bool match(const MemTerm& u, const MemTerm& x, const Env& env) {
    switch (u.kind()) {
      case MemTerm::Kind::Var:
        try {
          return apply_env(u, env) == x;
        } catch (const MissingSubstituent&) {
          return false;
        }
      case MemTerm::Kind::Lam: {
        if (!x.is_lam() || !(x.binder() == u.binder())) return false;
        Env inner = env;
        inner.insert(inner.begin(), EnvEntry{true, {}});
        return match(u.body(), x.body(), inner);
      }
      case MemTerm::Kind::Wrap:
        return x.is_wrap() && match(u.head(), x.head(), env) && match_set(u.payload(), x.payload(), env);
      case MemTerm::Kind::App:
        if (x.is_app() && match(u.fun(), x.fun(), env) && match_set(u.arg(), x.arg(), env)) return true;
        return contracted(u, x, env);
    }
    return false;
  }

  bool match_set(const SetTerm& a, const SetTerm& b, const Env& env) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    return match_from(a, b, env, 0, used);
  }

 private:
  bool match_from(const SetTerm& a, const SetTerm& b, const Env& env, std::size_t i,
                  std::vector<bool>& used) {
    if (i == a.size()) return true;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (a[i].type() && b[j].type() && !(*a[i].type() == *b[j].type())) continue;
      if (!match(a[i], b[j], env)) continue;
      used[j] = true;
      if (match_from(a, b, env, i + 1, used)) return true;
      used[j] = false;
    }
    return false;
  }

  bool contracted(const MemTerm& u, const MemTerm& x, const Env& env) {
    if (c_ == Calculus::I) {
      if (!u.fun().is_lam()) return false;
      const MemTerm& body = u.fun().body();
      if (!occurs_bound(body, 0)) {
        Env inner = env;
        inner.insert(inner.begin(), EnvEntry{false, {}});
        return match(body, x, inner);
      }
      for (const auto& a : reducts_.of(u.arg())) {
        Env inner = env;
        try {
          inner.insert(inner.begin(), EnvEntry{false, apply_env(a, env)});
        } catch (const MissingSubstituent&) {
          continue;
        }
        if (match(body, x, inner)) return true;
      }
      return false;
    }
    if (!u.fun().is_wabs()) return false;
    auto [lam, list] = peel(u.fun());
    const MemTerm* cur = &x;
    for (std::size_t k = list.size(); k-- > 0;) {
      if (!cur->is_wrap() || !match_set(list[k], cur->payload(), env)) return false;
      cur = &cur->head();
    }
    if (!cur->is_wrap() || !match_set(u.arg(), cur->payload(), env)) return false;
    Env inner = env;
    inner.insert(inner.begin(), EnvEntry{false, cur->payload()});
    return match(lam.body(), cur->head(), inner);
  }

  Calculus c_;
  ParReducts reducts_;
};

}  // namespace

bool par_reduces(const MemTerm& t, const MemTerm& s, Calculus c, std::size_t limit) {
  ParMatcher m(c, limit);
  return m.match(t, s, {});
}

namespace {

MemTerm random_par(const MemTerm& t, Calculus c, std::mt19937_64& rng);

SetTerm random_par(const SetTerm& s, Calculus c, std::mt19937_64& rng) {
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(random_par(e, c, rng));
  return SetTerm(std::move(out));
}

MemTerm random_par(const MemTerm& t, Calculus c, std::mt19937_64& rng) {
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return t;
    case MemTerm::Kind::Lam:
      return MemTerm::lam_raw(t.name(), t.binder(), random_par(t.body(), c, rng));
    case MemTerm::Kind::Wrap:
      return MemTerm::wrap(random_par(t.head(), c, rng), random_par(t.payload(), c, rng));
    case MemTerm::Kind::App: {
      bool redex = c == Calculus::I ? t.fun().is_lam() : t.fun().is_wabs();
      if (redex && rng() % 2 == 0) {
        auto [lam, list] = peel(t.fun());
        MemTerm body = random_par(lam.body(), c, rng);
        SetTerm arg = random_par(t.arg(), c, rng);
        MemTerm r = instantiate(body, arg);
        if (c == Calculus::I) return r;
        WrapperList l;
        for (const auto& p : list) l.push_back(random_par(p, c, rng));
        return apply_wrappers(MemTerm::wrap(std::move(r), std::move(arg)), l);
      }
      MemTerm f = random_par(t.fun(), c, rng);
      return MemTerm::app(std::move(f), random_par(t.arg(), c, rng));
    }
  }
  return t;
}

}  // namespace

MemTerm random_par_reduct(const MemTerm& t, Calculus c, std::mt19937_64& rng) {
  return random_par(t, c, rng);
}

// ---------------------------------------------------------------------------
// β on untyped terms

UntypedTerm step_beta(const UntypedTerm& m, const Position& p) {
  const UntypedTerm& r = subterm_at(m, p);
  if (!r.is_app() || !r.fun().is_lam()) throw NotARedex(p);
  return replace_at(m, p, instantiate(r.fun().body(), r.arg()));
}

std::vector<Position> beta_redexes(const UntypedTerm& m) {
  std::vector<Position> out;
  for (const auto& p : positions(m)) {
    const UntypedTerm& r = subterm_at(m, p);
    if (r.is_app() && r.fun().is_lam()) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

void residuals_rec(const MemTerm& t, const Position& up, std::size_t k, Position& cur,
                   std::vector<Position>& out) {
  if (k == up.path.size()) {
    out.push_back(cur);
    return;
  }
  std::uint32_t i = up.path[k];
  if (t.is_lam() && i == 0) {
    cur.path.push_back(0);
    residuals_rec(t.body(), up, k + 1, cur, out);
    cur.path.pop_back();
  } else if (t.is_app() && i == 0) {
    cur.path.push_back(0);
    residuals_rec(t.fun(), up, k + 1, cur, out);
    cur.path.pop_back();
  } else if (t.is_app() && i == 1) {
    for (std::uint32_t j = 0; j < t.arg().size(); ++j) {
      cur.path.push_back(1 + j);
      residuals_rec(t.arg()[j], up, k + 1, cur, out);
      cur.path.pop_back();
    }
  } else {
    throw InvalidPosition(up);
  }
}

// Lambda hints are invisible to == and ordering, so one can tag residuals.
const std::string kMark = "\x01residual";

std::optional<Position> find_marked(const MemTerm& t, Position& p) {
  if (t.is_app() && t.fun().is_lam() && t.fun().name() == kMark) return p;
  for (std::uint32_t i = 0; i < t.child_count(); ++i) {
    p.path.push_back(i);
    if (auto r = find_marked(t.child(i), p)) return r;
    p.path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::vector<Position> residual_positions(const MemTerm& t, const UntypedTerm& m, const Position& p) {
  if (!refines(t, m)) throw InvalidPosition(p);
  std::vector<Position> out;
  Position cur;
  residuals_rec(t, p, 0, cur, out);
  return out;
}

Position erase_position(const MemTerm& t, const Position& p) {
  Position out;
  const MemTerm* cur = &t;
  for (auto i : p.path) {
    if (i >= cur->child_count() || cur->is_wrap()) throw InvalidPosition(p);
    out.path.push_back(cur->is_app() && i > 0 ? 1 : i);
    cur = &cur->child(i);
  }
  return out;
}

Simulation simulate_beta(const MemTerm& t, const UntypedTerm& m, const Position& p) {
  if (!t.wrapper_free()) throw std::invalid_argument("simulation needs a wrapper-free term");
  if (!refines(t, m)) throw std::invalid_argument("term does not refine the untyped term");
  const UntypedTerm& r = subterm_at(m, p);
  if (!r.is_app() || !r.fun().is_lam()) throw NotARedex(p, "no beta-redex");
  Simulation sim{step_beta(m, p), t, {}};
  for (const auto& q : residual_positions(t, m, p)) {
    const MemTerm& app = subterm_at(sim.s, q);
    const MemTerm& lam = app.fun();
    MemTerm marked = MemTerm::app(MemTerm::lam_raw(kMark, lam.binder(), lam.body()), app.arg());
    sim.s = replace_at(sim.s, q, marked);
  }
  while (true) {
    Position cur;
    auto q = find_marked(sim.s, cur);
    if (!q) break;
    MemTerm next = step_i(sim.s, *q);
    sim.steps.push_back({Step::Kind::I, *q, sim.s, next});
    sim.s = std::move(next);
  }
  if (!refines(sim.s, sim.n)) throw InvariantViolation("simulated term does not refine the contractum");
  return sim;
}

Projection project_step(const MemTerm& t, const MemTerm& s, const Position& p,
                        std::optional<std::size_t> budget) {
  UntypedTerm m = erase(t);
  Position up = erase_position(t, p);
  Projection out{step_beta(m, up), s, {}};
  if (refines(s, out.n)) return out;
  std::size_t limit = budget ? *budget : residual_positions(t, m, up).size() * t.size();

  struct Visit {
    MemTerm term;
    std::size_t parent;
    Position pos;
  };
  std::vector<Visit> nodes{{s, 0, {}}};
  std::unordered_set<MemTerm> seen{s};
  std::size_t expanded = 0;
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (expanded >= limit) break;
    ++expanded;
    MemTerm cur = nodes[head].term;
    for (auto& [q, next] : one_step_reducts(cur, Calculus::I)) {
      if (!seen.insert(next).second) continue;
      nodes.push_back({next, head, q});
      if (refines(next, out.n)) {
        std::vector<Step> rev;
        for (std::size_t k = nodes.size() - 1; k != 0; k = nodes[k].parent)
          rev.push_back({Step::Kind::I, nodes[k].pos, nodes[nodes[k].parent].term, nodes[k].term});
        out.steps.assign(rev.rbegin(), rev.rend());
        out.s = next;
        return out;
      }
    }
  }
  throw SearchBudgetExceeded("no reduct refining " + print(out.n) + " within " +
                             std::to_string(limit) + " expansions");
}

}  // namespace isect
