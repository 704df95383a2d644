#include "isect/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "isect/errors.hpp"
#include "isect/print.hpp"

namespace isect {

template <class T>
std::optional<std::size_t> ReductionGraph<T>::longest_path() const {
  std::vector<std::vector<std::size_t>> succ(nodes.size());
  for (const auto& e : edges) succ[e.from].push_back(e.to);
  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::uint8_t> color(nodes.size(), 0);
  std::vector<std::size_t> len(nodes.size(), 0);
  if (nodes.empty()) return 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  color[0] = 1;
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i < succ[v].size()) {
      std::size_t w = succ[v][i++];
      if (color[w] == 1) return std::nullopt;
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
      continue;
    }
    for (std::size_t w : succ[v]) len[v] = std::max(len[v], len[w] + 1);
    color[v] = 2;
    stack.pop_back();
  }
  return len[0];
}

template struct ReductionGraph<MemTerm>;
template struct ReductionGraph<UntypedTerm>;

namespace {

template <class T, class Succ>
ReductionGraph<T> bfs(const T& root, const Fuel& fuel, Succ successors) {
  ReductionGraph<T> g;
  std::unordered_map<T, std::size_t> index;
  std::vector<std::size_t> depth;
  std::deque<std::size_t> queue;
  g.nodes.push_back(root);
  g.expanded.push_back(false);
  depth.push_back(0);
  index.emplace(root, 0);
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (depth[v] >= fuel.max_depth) {
      g.truncated = true;
      continue;
    }
    bool complete = true;
    for (auto& [pos, next] : successors(g.nodes[v])) {
      auto it = index.find(next);
      std::size_t w;
      if (it != index.end()) {
        w = it->second;
      } else {
        if (g.nodes.size() >= fuel.max_nodes) {
          complete = false;
          continue;
        }
        w = g.nodes.size();
        index.emplace(next, w);
        g.nodes.push_back(std::move(next));
        g.expanded.push_back(false);
        depth.push_back(depth[v] + 1);
        queue.push_back(w);
      }
      g.edges.push_back({v, w, pos});
    }
    if (complete)
      g.expanded[v] = true;
    else
      g.truncated = true;
  }
  return g;
}

std::vector<std::pair<Position, UntypedTerm>> beta_reducts(const UntypedTerm& m) {
  std::vector<std::pair<Position, UntypedTerm>> out;
  for (const auto& p : beta_redexes(m)) out.emplace_back(p, step_beta(m, p));
  return out;
}

void require_typed_calculus(Calculus c) {
  if (c == Calculus::Beta) throw std::invalid_argument("annotated terms reduce under i or im");
}

template <class T>
std::size_t chain_of(const ReductionGraph<T>& g) {
  if (g.truncated) throw FuelExhausted("reduction graph exceeds fuel");
  auto n = g.longest_path();
  if (!n) throw CycleDetected("reduction graph has a cycle");
  return *n;
}

}  // namespace

MemGraph explore(const MemTerm& t, Calculus c, const Fuel& fuel) {
  require_typed_calculus(c);
  return bfs(t, fuel, [c](const MemTerm& u) { return one_step_reducts(u, c); });
}

BetaGraph explore(const UntypedTerm& m, const Fuel& fuel) { return bfs(m, fuel, beta_reducts); }

std::optional<Position> innermost_redex(const std::vector<Position>& ps) {
  // In preorder, redexes strictly inside p come right after p.
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (i + 1 == ps.size() || !ps[i].is_prefix_of(ps[i + 1]) || ps[i] == ps[i + 1]) return ps[i];
  return std::nullopt;
}

Normalization<MemTerm> normal_form(const MemTerm& t, Calculus c, const Fuel& fuel) {
  require_typed_calculus(c);
  Normalization<MemTerm> r{t, 0};
  for (;;) {
    std::vector<Position> ps;
    for (const auto& x : c == Calculus::I ? i_redexes(r.term) : redexes(r.term)) ps.push_back(x.position);
    auto p = innermost_redex(ps);
    if (!p) return r;
    if (r.steps >= fuel.max_depth) throw FuelExhausted("no normal form within fuel");
    r.term = step(r.term, *p, c);
    ++r.steps;
  }
}

Normalization<UntypedTerm> normal_form(const UntypedTerm& m, const Fuel& fuel) {
  Normalization<UntypedTerm> r{m, 0};
  for (;;) {
    auto p = innermost_redex(beta_redexes(r.term));
    if (!p) return r;
    if (r.steps >= fuel.max_depth) throw FuelExhausted("no normal form within fuel");
    r.term = step_beta(r.term, *p);
    ++r.steps;
  }
}

std::size_t longest_chain(const MemTerm& t, Calculus c, const Fuel& fuel) {
  return chain_of(explore(t, c, fuel));
}

std::size_t longest_chain(const UntypedTerm& m, const Fuel& fuel) { return chain_of(explore(m, fuel)); }

const char* sn_name(SN v) {
  switch (v) {
    case SN::Yes: return "yes";
    case SN::No: return "no";
    case SN::Unknown: return "unknown";
  }
  return "?";
}

SN is_sn(const UntypedTerm& m, const Fuel& fuel) {
  BetaGraph g = explore(m, fuel);
  // A cycle among explored edges is real even in a truncated graph.
  if (g.has_cycle()) return SN::No;
  return g.truncated ? SN::Unknown : SN::Yes;
}

MemTerm head_subject_expansion(const MemTerm& expanded, const MemTerm& body, const std::string& x,
                               const SetType& binder, const SetTerm& s,
                               const std::vector<SetTerm>& args, const TypingContext& ctx) {
  Type b = [&] {
    try {
      return check(ctx, expanded);
    } catch (const Error& e) {
      throw IllTyped(std::string("expanded term: ") + e.what());
    }
  }();
  MemTerm r = MemTerm::app(MemTerm::lam(x, binder, body), s);
  MemTerm reduct = substitute(body, x, binder, s, ctx);
  for (const auto& a : args) {
    r = MemTerm::app(std::move(r), a);
    reduct = MemTerm::app(std::move(reduct), a);
  }
  if (!(reduct == expanded)) throw IllTyped("body and substituents do not rebuild the expanded term");
  try {
    if (check(ctx, r) != b) throw IllTyped("expansion changes the type");
  } catch (const IllTyped&) {
    throw;
  } catch (const Error& e) {
    throw IllTyped(std::string("expansion: ") + e.what());
  }
  return r;
}

namespace {

class Inferrer {
 public:
  Inferrer(std::size_t budget, std::vector<std::string> taken) : budget_(budget), taken_(std::move(taken)) {}

  MemTerm infer(const UntypedTerm& m) {
    if (calls_++ >= budget_) throw NotSNWithinFuel("inference exceeds fuel");
    std::vector<const UntypedTerm*> spine;
    const UntypedTerm* h = &m;
    while (h->is_app()) {
      spine.push_back(&h->arg());
      h = &h->fun();
    }
    std::reverse(spine.begin(), spine.end());

    if (h->is_var()) {  // SN1
      if (h->is_bound()) throw InvariantViolation("open term in inference");
      std::vector<MemTerm> args;
      for (const auto* a : spine) args.push_back(infer(*a));
      Type ty = fresh_base();
      for (auto it = args.rbegin(); it != args.rend(); ++it) ty = Type::arrow(SetType{*it->type()}, ty);
      MemTerm r = MemTerm::free(h->name(), ty);
      for (auto& a : args) r = MemTerm::app(std::move(r), SetTerm::singleton(std::move(a)));
      return r;
    }
    if (spine.empty()) {  // SN2
      std::string x = fresh(h->name());
      MemTerm body = infer(open(h->body(), x));
      TypingContext g = minimal_context(body);
      auto it = g.find(x);
      SetType binder = it != g.end() ? it->second : SetType{fresh_base()};
      return MemTerm::lam(x, binder, body);
    }
    return sn3(*h, spine);
  }

 private:
  MemTerm sn3(const UntypedTerm& lam, const std::vector<const UntypedTerm*>& spine) {
    const UntypedTerm& p = lam.body();
    const UntypedTerm& n = *spine[0];
    std::string x = fresh(lam.name());

    UntypedTerm reduct = instantiate(p, n);
    for (std::size_t i = 1; i < spine.size(); ++i) reduct = UntypedTerm::app(reduct, *spine[i]);
    MemTerm expanded = infer(reduct);

    std::vector<SetTerm> rest;
    const MemTerm* head = &expanded;
    for (std::size_t i = 1; i < spine.size(); ++i) {
      rest.push_back(head->arg());
      head = &head->fun();
    }
    std::reverse(rest.begin(), rest.end());

    if (!occurs_bound(p, 0)) {
      MemTerm tn = infer(n);
      SetType binder{*tn.type()};
      SetTerm s = SetTerm::singleton(tn);
      TypingContext ctx = context_union(minimal_context(expanded), minimal_context(s));
      return head_subject_expansion(expanded, *head, x, binder, s, rest, ctx);
    }

    std::map<Type, MemTerm> copies;
    MemTerm body = abstract(*head, p, 0, x, copies);
    std::vector<Type> tys;
    std::vector<MemTerm> reps;
    for (auto& [ty, rep] : copies) {
      tys.push_back(ty);
      reps.push_back(rep);
    }
    SetType binder(tys);
    SetTerm s(reps);
    // Same-typed copies were unified, so the reduct is rebuilt from the representatives.
    expanded = substitute(body, x, binder, s, minimal_context(s));
    for (const auto& a : rest) expanded = MemTerm::app(std::move(expanded), a);
    TypingContext ctx = context_union(minimal_context(expanded), minimal_context(s));
    return head_subject_expansion(expanded, body, x, binder, s, rest, ctx);
  }

  // Walks t (a decoration of P{0 := N}) alongside P and replaces every copy
  // of N by x^A, recording one representative per type A.
  MemTerm abstract(const MemTerm& t, const UntypedTerm& p, std::uint32_t depth, const std::string& x,
                   std::map<Type, MemTerm>& copies) {
    if (p.is_var()) {
      if (!p.is_bound() || p.index() != depth) return t;
      const Type& ty = *t.type();
      auto it = copies.find(ty);
      if (it == copies.end() || t < it->second) copies.insert_or_assign(ty, t);
      return MemTerm::free(x, ty);
    }
    if (p.is_lam()) {
      if (!t.is_lam()) throw InvariantViolation("decoration does not follow the term");
      return MemTerm::lam_raw(t.name(), t.binder(), abstract(t.body(), p.body(), depth + 1, x, copies));
    }
    if (!t.is_app()) throw InvariantViolation("decoration does not follow the term");
    MemTerm f = abstract(t.fun(), p.fun(), depth, x, copies);
    std::vector<MemTerm> elems;
    for (const auto& e : t.arg()) elems.push_back(abstract(e, p.arg(), depth, x, copies));
    return MemTerm::app(std::move(f), SetTerm(std::move(elems)));
  }

  Type fresh_base() { return Type::base("b" + std::to_string(bases_++)); }

  std::string fresh(const std::string& hint) {
    std::string x = fresh_name(hint.empty() ? "x" : hint, taken_);
    taken_.push_back(x);
    return x;
  }

  std::size_t budget_;
  std::size_t calls_ = 0;
  unsigned bases_ = 0;
  std::vector<std::string> taken_;
};

}  // namespace

Inference infer_sn(const UntypedTerm& m, const Fuel& fuel) {
  SN v = is_sn(m, fuel);
  if (v != SN::Yes) throw NotSNWithinFuel(std::string("strong normalization is ") + sn_name(v) + " within fuel");
  Inferrer inf(fuel.max_nodes, free_names(m));
  MemTerm t = inf.infer(m);
  TypingContext ctx = minimal_context(t);
  Type a = check(ctx, t);
  if (!refines(t, m) || !t.wrapper_free())
    throw InvariantViolation("inferred term does not refine its input: " + print(t));
  return {t, ctx, a};
}

}  // namespace isect
