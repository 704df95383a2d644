#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "isect/curry.hpp"
#include "isect/terms.hpp"
#include "isect/types.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Untyped term with exactly `size` nodes; free variables come from `free`.
inline isect::UntypedTerm untyped(Rng& rng, std::size_t size, std::uint32_t depth,
                                  const std::vector<std::string>& free) {
  using isect::UntypedTerm;
  if (size <= 1) {
    if (depth > 0 && coin(rng, 0.75)) return UntypedTerm::bound(static_cast<std::uint32_t>(pick(rng, depth)));
    return UntypedTerm::free(free[pick(rng, free.size())]);
  }
  if (size == 2 || coin(rng, 0.3)) return UntypedTerm::lam_raw("x", untyped(rng, size - 1, depth + 1, free));
  std::size_t left = 1 + pick(rng, size - 2);
  std::size_t right = size - 1 - left;
  // Lean towards redexes.
  if (left >= 2 && coin(rng, 0.5))
    return UntypedTerm::app(UntypedTerm::lam_raw("x", untyped(rng, left - 1, depth + 1, free)),
                            untyped(rng, right, depth, free));
  return UntypedTerm::app(untyped(rng, left, depth, free), untyped(rng, right, depth, free));
}

inline isect::UntypedTerm untyped_upto(Rng& rng, std::size_t max_size) {
  return untyped(rng, 1 + pick(rng, max_size), 0, {"y", "z"});
}

inline isect::Type type(Rng& rng, unsigned depth) {
  static const char* bases[] = {"a", "b", "c"};
  if (depth == 0 || coin(rng, 0.5)) return isect::Type::base(bases[pick(rng, 3)]);
  std::vector<isect::Type> dom{type(rng, depth - 1)};
  if (coin(rng, 0.3)) dom.push_back(type(rng, depth - 1));
  return isect::Type::arrow(isect::SetType(dom), type(rng, depth - 1));
}

// Random Curry derivations, built independently of the decoration code.
// Free variables absorb whatever types their occurrences need; the shared
// context is filled in at the end.
class DerivationGen {
 public:
  using D = isect::CurryDerivation;
  using Rule = D::Rule;

  explicit DerivationGen(Rng& rng) : rng_(rng) {}

  D derivation(unsigned depth) {
    free_.clear();
    D d = typed(type(rng_, 2), depth, {});
    fill(d, {});
    return d;
  }

 private:
  struct Scope {
    std::string name;
    isect::SetType binder;
  };

  static isect::Type rename(const isect::Type& t, const std::map<std::string, std::string>& m) {
    if (t.is_base()) {
      auto it = m.find(t.name());
      return it == m.end() ? t : isect::Type::base(it->second);
    }
    return isect::Type::arrow(rename(t.domain(), m), rename(t.codomain(), m));
  }
  static isect::SetType rename(const isect::SetType& s, const std::map<std::string, std::string>& m) {
    std::vector<isect::Type> v;
    for (const auto& t : s) v.push_back(rename(t, m));
    return isect::SetType(v);
  }
  static void rename(D& d, const std::map<std::string, std::string>& m) {
    for (auto& [x, s] : d.ctx) s = rename(s, m);
    if (auto* t = std::get_if<isect::Type>(&d.type))
      *t = rename(*t, m);
    else
      d.type = rename(std::get<isect::SetType>(d.type), m);
    for (auto& p : d.premises) rename(p, m);
  }
  static void bases_of(const isect::Type& t, std::vector<std::string>& out) {
    if (t.is_base()) {
      out.push_back(t.name());
      return;
    }
    for (const auto& a : t.domain()) bases_of(a, out);
    bases_of(t.codomain(), out);
  }
  static void bases_of(const D& d, std::vector<std::string>& out) {
    if (auto* t = std::get_if<isect::Type>(&d.type)) bases_of(*t, out);
    for (const auto& p : d.premises) bases_of(p, out);
  }

  D var(const std::string& x, const isect::Type& t) {
    D d;
    d.rule = Rule::Var;
    d.term = isect::UntypedTerm::free(x);
    d.type = t;
    return d;
  }

  D typed(const isect::Type& t, unsigned depth, const std::vector<Scope>& scope) {
    std::vector<std::size_t> fit;
    for (std::size_t i = 0; i < scope.size(); ++i)
      if (scope[i].binder.contains(t)) fit.push_back(i);
    if (depth == 0 || coin(rng_, 0.2)) {
      if (!fit.empty() && coin(rng_, 0.8)) return var(scope[fit[pick(rng_, fit.size())]].name, t);
      static const char* fs[] = {"f", "g", "h"};
      return var(fs[pick(rng_, 3)], t);
    }
    if (t.is_arrow() && coin(rng_, 0.6)) {
      std::string x = "x" + std::to_string(bound_++);
      auto inner = scope;
      inner.push_back({x, t.domain()});
      D body = typed(t.codomain(), depth - 1, inner);
      D d;
      d.rule = Rule::Intro;
      d.term = isect::UntypedTerm::lam(x, body.term);
      d.type = t;
      d.premises.push_back(std::move(body));
      return d;
    }
    if (!fit.empty() && coin(rng_, 0.3)) return var(scope[fit[pick(rng_, fit.size())]].name, t);
    // Elimination: one argument derivation plus renamed copies at other types.
    D arg = typed(type(rng_, 1), depth - 1, scope);
    std::vector<D> copies{arg};
    // Renaming bases is only sound when no enclosing binder is referenced.
    bool closed = true;
    for (const auto& sc : scope)
      if (isect::occurs_free(arg.term, sc.name)) closed = false;
    std::size_t extra = closed ? pick(rng_, 3) : 0;
    for (std::size_t k = 0; k < extra; ++k) {
      std::vector<std::string> bs;
      bases_of(arg, bs);
      std::map<std::string, std::string> m;
      for (const auto& b : bs) m[b] = b + "_" + std::to_string(renames_);
      ++renames_;
      D c = arg;
      rename(c, m);
      copies.push_back(std::move(c));
    }
    std::vector<isect::Type> dom;
    for (const auto& c : copies) dom.push_back(std::get<isect::Type>(c.type));
    D many;
    many.rule = Rule::Many;
    many.term = arg.term;
    many.type = isect::SetType(dom);
    many.premises = std::move(copies);
    D fun = typed(isect::Type::arrow(isect::SetType(dom), t), depth - 1, scope);
    D d;
    d.rule = Rule::Elim;
    d.term = isect::UntypedTerm::app(fun.term, arg.term);
    d.type = t;
    d.premises.push_back(std::move(fun));
    d.premises.push_back(std::move(many));
    return d;
  }

  void collect_free(const D& d, const std::vector<std::string>& bound) {
    if (d.rule == Rule::Var) {
      const std::string& x = d.term.name();
      if (std::find(bound.begin(), bound.end(), x) == bound.end())
        free_[x] = free_[x].united(isect::SetType{std::get<isect::Type>(d.type)});
      return;
    }
    auto inner = bound;
    if (d.rule == Rule::Intro) inner.push_back(d.term.name());
    for (const auto& p : d.premises) collect_free(p, inner);
  }

  void assign(D& d, isect::TypingContext ctx) {
    d.ctx = ctx;
    if (d.rule == Rule::Intro) {
      const isect::Type& t = std::get<isect::Type>(d.type);
      ctx[d.term.name()] = t.domain();
    }
    for (auto& p : d.premises) assign(p, ctx);
  }

  void fill(D& d, const std::vector<std::string>& bound) {
    collect_free(d, bound);
    assign(d, free_);
  }

  Rng& rng_;
  unsigned bound_ = 0;
  unsigned renames_ = 0;
  isect::TypingContext free_;
};

}  // namespace gen
