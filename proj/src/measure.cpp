#include "isect/measure.hpp"

#include "isect/errors.hpp"
#include "isect/print.hpp"
#include "isect/reduction.hpp"

namespace isect {

std::size_t weight(const MemTerm& t) { return t.weight(); }
std::size_t weight(const SetTerm& s) { return s.weight(); }

namespace {

void require_typed(const MemTerm& t) {
  if (!t.type()) throw IllTyped("term is not typable: " + print(t));
}

MemTerm instantiate_typed(const MemTerm& body, const SetTerm& arg) {
  try {
    return instantiate(body, arg);
  } catch (const MissingSubstituent& e) {
    throw IllTyped(std::string("ill-typed redex: ") + e.what());
  }
}

}  // namespace

unsigned max_degree(const MemTerm& t) {
  require_typed(t);
  return t.max_degree();
}

unsigned max_degree(const SetTerm& s) {
  for (const auto& e : s) require_typed(e);
  return s.max_degree();
}

unsigned max_degree(const WrapperList& l) {
  unsigned d = 0;
  for (const auto& p : l) d = std::max(d, max_degree(p));
  return d;
}

DegreeProfile degree_profile(const MemTerm& t) {
  require_typed(t);
  DegreeProfile out;
  for (const auto& r : redexes(t)) {
    ++out.redexes_per_degree[r.degree];
    out.max_degree = std::max(out.max_degree, r.degree);
  }
  return out;
}

SetTerm simp(const SetTerm& s, unsigned d) {
  if (s.max_degree() < d) return s;
  std::vector<MemTerm> out;
  for (const auto& e : s) out.push_back(simp(e, d));
  return SetTerm(std::move(out));
}

WrapperList simp(const WrapperList& l, unsigned d) {
  WrapperList out;
  for (const auto& p : l) out.push_back(simp(p, d));
  return out;
}

MemTerm simp(const MemTerm& t, unsigned d) {
  if (t.max_degree() < d) return t;
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      return t;
    case MemTerm::Kind::Lam:
      return MemTerm::lam_raw(t.name(), t.binder(), simp(t.body(), d));
    case MemTerm::Kind::Wrap:
      return MemTerm::wrap(simp(t.head(), d), simp(t.payload(), d));
    case MemTerm::Kind::App: {
      SetTerm arg = simp(t.arg(), d);
      const MemTerm& f = t.fun();
      if (!(f.is_wabs() && f.type() && f.type()->height() == d))
        return MemTerm::app(simp(f, d), std::move(arg));
      auto [lam, list] = peel(f);
      MemTerm body = instantiate_typed(simp(lam.body(), d), arg);
      return apply_wrappers(MemTerm::wrap(std::move(body), std::move(arg)), simp(list, d));
    }
  }
  return t;
}

MemTerm simp_full(const MemTerm& t) {
  MemTerm cur = t;
  for (unsigned d = max_degree(t); d >= 1; --d) cur = simp(cur, d);
  return cur;
}

std::size_t W(const MemTerm& t) {
  if (!t.wrapper_free()) throw IllTyped("the measure is defined on wrapper-free terms");
  return simp_full(t).weight();
}

MeasureReport measure_report(const MemTerm& t) {
  if (!t.wrapper_free()) throw IllTyped("the measure is defined on wrapper-free terms");
  MeasureReport r{t, max_degree(t), {}, t, 0};
  MemTerm cur = t;
  for (unsigned d = r.max_degree; d >= 1; --d) {
    cur = simp(cur, d);
    unsigned m = max_degree(cur);
    if (m >= d)
      throw InvariantViolation("simplification of degree " + std::to_string(d) +
                               " left a redex of degree " + std::to_string(m));
    r.stages.push_back({d, cur, m});
  }
  r.normal_form = cur;
  r.w = cur.weight();
  return r;
}

}  // namespace isect
