#include "isect/curry.hpp"

#include <algorithm>
#include <json.hpp>

#include "isect/errors.hpp"
#include "isect/parse.hpp"
#include "isect/print.hpp"

namespace isect {

using Rule = CurryDerivation::Rule;

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Var: return "var";
    case Rule::Many: return "many";
    case Rule::Intro: return "intro";
    case Rule::Elim: return "elim";
  }
  return "?";
}

namespace {

using Path = std::vector<std::size_t>;

[[noreturn]] void bad(const Path& p, Rule r, const std::string& why) {
  throw InvalidDerivation(p, rule_name(r), why);
}

const Type* as_type(const TypeOrSet& t) { return std::get_if<Type>(&t); }
const SetType* as_set(const TypeOrSet& t) { return std::get_if<SetType>(&t); }

// The variable bound by an intro node: the single key the premise adds.
std::string intro_variable(const CurryDerivation& d, const Path& p) {
  const TypingContext& outer = d.ctx;
  const TypingContext& inner = d.premises[0].ctx;
  std::optional<std::string> x;
  for (const auto& [name, s] : inner) {
    auto it = outer.find(name);
    if (it == outer.end()) {
      if (x) bad(p, d.rule, "premise context adds more than one variable");
      x = name;
    } else if (!(it->second == s)) {
      bad(p, d.rule, "premise context changes the type of " + name);
    }
  }
  for (const auto& [name, s] : outer)
    if (!inner.count(name)) bad(p, d.rule, "premise context drops " + name);
  if (!x) bad(p, d.rule, "premise context does not add the bound variable");
  return *x;
}

void check_node(const CurryDerivation& d, Path& p) {
  for (const auto& [x, s] : d.ctx)
    if (s.empty()) bad(p, d.rule, "context maps " + x + " to the empty set");
  switch (d.rule) {
    case Rule::Var: {
      const Type* b = as_type(d.type);
      if (!b) bad(p, d.rule, "conclusion type must be a single type");
      if (!d.premises.empty()) bad(p, d.rule, "var nodes have no premises");
      if (!d.term.is_free()) bad(p, d.rule, "subject is not a variable");
      auto it = d.ctx.find(d.term.name());
      if (it == d.ctx.end()) bad(p, d.rule, d.term.name() + " is not in the context");
      if (!it->second.contains(*b)) bad(p, d.rule, print(*b) + " is not in " + print(it->second));
      if (d.select && !(*d.select == *b)) bad(p, d.rule, "selected type differs from the conclusion");
      break;
    }
    case Rule::Many: {
      const SetType* s = as_set(d.type);
      if (!s) bad(p, d.rule, "conclusion type must be a set of types");
      if (d.premises.empty()) bad(p, d.rule, "empty many nodes are not accepted");
      std::vector<Type> seen;
      for (const auto& q : d.premises) {
        const Type* a = as_type(q.type);
        if (!a) bad(p, d.rule, "premise type must be a single type");
        if (std::find(seen.begin(), seen.end(), *a) != seen.end())
          bad(p, d.rule, "two premises have type " + print(*a));
        seen.push_back(*a);
        if (!(q.ctx == d.ctx)) bad(p, d.rule, "premise context differs");
        if (!(q.term == d.term)) bad(p, d.rule, "premise subject differs");
      }
      if (!(SetType(seen) == *s)) bad(p, d.rule, "premise types do not form the conclusion set");
      break;
    }
    case Rule::Intro: {
      const Type* t = as_type(d.type);
      if (!t || !t->is_arrow()) bad(p, d.rule, "conclusion type must be an arrow");
      if (!d.term.is_lam()) bad(p, d.rule, "subject is not an abstraction");
      if (d.premises.size() != 1) bad(p, d.rule, "intro nodes have one premise");
      const CurryDerivation& q = d.premises[0];
      std::string x = intro_variable(d, p);
      if (occurs_free(d.term, x)) bad(p, d.rule, x + " is free in the abstraction");
      if (!(q.ctx.at(x) == t->domain())) bad(p, d.rule, "binder type differs from the arrow domain");
      const Type* b = as_type(q.type);
      if (!b || !(*b == t->codomain())) bad(p, d.rule, "premise type differs from the codomain");
      if (!(q.term == open(d.term.body(), x))) bad(p, d.rule, "premise subject is not the body");
      break;
    }
    case Rule::Elim: {
      const Type* b = as_type(d.type);
      if (!b) bad(p, d.rule, "conclusion type must be a single type");
      if (!d.term.is_app()) bad(p, d.rule, "subject is not an application");
      if (d.premises.size() != 2) bad(p, d.rule, "elim nodes have two premises");
      const CurryDerivation& f = d.premises[0];
      const CurryDerivation& a = d.premises[1];
      const Type* ft = as_type(f.type);
      if (!ft || !ft->is_arrow()) bad(p, d.rule, "function premise must have an arrow type");
      if (!(ft->codomain() == *b)) bad(p, d.rule, "codomain differs from the conclusion");
      if (a.rule != Rule::Many) bad(p, d.rule, "argument premise must be a many node");
      const SetType* at = as_set(a.type);
      if (!at || at->empty()) bad(p, d.rule, "argument set-type must be non-empty");
      if (!(*at == ft->domain())) bad(p, d.rule, "argument types differ from the arrow domain");
      if (!(f.ctx == d.ctx) || !(a.ctx == d.ctx)) bad(p, d.rule, "premise context differs");
      if (!(f.term == d.term.fun())) bad(p, d.rule, "function premise subject differs");
      if (!(a.term == d.term.arg())) bad(p, d.rule, "argument premise subject differs");
      break;
    }
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    p.push_back(i);
    check_node(d.premises[i], p);
    p.pop_back();
  }
}

MemTerm decorate_term(const CurryDerivation& d);

SetTerm decorate_many(const CurryDerivation& d) {
  std::vector<MemTerm> elems;
  for (const auto& q : d.premises) elems.push_back(decorate_term(q));
  return SetTerm(std::move(elems));
}

MemTerm decorate_term(const CurryDerivation& d) {
  switch (d.rule) {
    case Rule::Var:
      return MemTerm::free(d.term.name(), std::get<Type>(d.type));
    case Rule::Intro: {
      Path none;
      std::string x = intro_variable(d, none);
      return MemTerm::lam(x, d.premises[0].ctx.at(x), decorate_term(d.premises[0]));
    }
    case Rule::Elim:
      return MemTerm::app(decorate_term(d.premises[0]), decorate_many(d.premises[1]));
    case Rule::Many:
      break;
  }
  throw InvariantViolation("many node decorated as a term");
}

CurryDerivation many_node(const TypingContext& ctx, const SetTerm& s);

CurryDerivation derive(const TypingContext& ctx, const MemTerm& t) {
  CurryDerivation d;
  d.ctx = ctx;
  switch (t.kind()) {
    case MemTerm::Kind::Var:
      d.rule = Rule::Var;
      d.term = UntypedTerm::free(t.name());
      d.type = t.annot();
      d.select = t.annot();
      return d;
    case MemTerm::Kind::Lam: {
      std::vector<std::string> taken = free_names(t);
      for (const auto& [x, s] : ctx) taken.push_back(x);
      std::string x = fresh_name(t.name(), taken);
      TypingContext inner = ctx;
      inner.emplace(x, t.binder());
      CurryDerivation body = derive(inner, open(t.body(), x));
      d.rule = Rule::Intro;
      d.type = Type::arrow(t.binder(), std::get<Type>(body.type));
      d.term = UntypedTerm::lam(x, body.term);
      d.premises.push_back(std::move(body));
      return d;
    }
    case MemTerm::Kind::App: {
      CurryDerivation f = derive(ctx, t.fun());
      CurryDerivation a = many_node(ctx, t.arg());
      d.rule = Rule::Elim;
      d.type = std::get<Type>(f.type).codomain();
      d.term = UntypedTerm::app(f.term, a.term);
      d.premises.push_back(std::move(f));
      d.premises.push_back(std::move(a));
      return d;
    }
    case MemTerm::Kind::Wrap:
      break;
  }
  throw NotUniform(Position{});
}

CurryDerivation many_node(const TypingContext& ctx, const SetTerm& s) {
  CurryDerivation d;
  d.rule = Rule::Many;
  d.ctx = ctx;
  std::vector<Type> ts;
  for (const auto& e : s) {
    d.premises.push_back(derive(ctx, e));
    ts.push_back(std::get<Type>(d.premises.back().type));
  }
  std::sort(d.premises.begin(), d.premises.end(), [](const auto& a, const auto& b) {
    return std::get<Type>(a.type) < std::get<Type>(b.type);
  });
  d.term = d.premises.front().term;
  d.type = SetType(std::move(ts));
  return d;
}

}  // namespace

CurryJudgement check_curry(const CurryDerivation& d) {
  Path p;
  check_node(d, p);
  return {d.ctx, d.term, d.type};
}

MemTerm decorate(const CurryDerivation& d) {
  check_curry(d);
  if (d.rule == Rule::Many)
    throw InvalidDerivation({}, "many", "root judges a set-type; use decorate_set");
  return decorate_term(d);
}

SetTerm decorate_set(const CurryDerivation& d) {
  check_curry(d);
  if (d.rule != Rule::Many) return SetTerm::singleton(decorate_term(d));
  return decorate_many(d);
}

CurryDerivation erase_derivation(const TypingContext& ctx, const MemTerm& t) {
  check(ctx, t);
  erase(t);
  return derive(ctx, t);
}

bool same_derivation(const CurryDerivation& a, const CurryDerivation& b) {
  if (a.rule != b.rule || !(a.ctx == b.ctx) || !(a.term == b.term) || !(a.type == b.type))
    return false;
  if (a.premises.size() != b.premises.size()) return false;
  if (a.rule == Rule::Var) return true;
  if (a.rule != Rule::Many) {
    for (std::size_t i = 0; i < a.premises.size(); ++i)
      if (!same_derivation(a.premises[i], b.premises[i])) return false;
    return true;
  }
  for (const auto& q : a.premises) {
    auto it = std::find_if(b.premises.begin(), b.premises.end(),
                           [&](const CurryDerivation& r) { return r.type == q.type; });
    if (it == b.premises.end() || !same_derivation(q, *it)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using ojson = nlohmann::ordered_json;

ojson to_json(const CurryDerivation& d) {
  ojson j;
  j["rule"] = rule_name(d.rule);
  ojson ctx = ojson::object();
  for (const auto& [x, s] : d.ctx) {
    ojson ts = ojson::array();
    for (const auto& t : s) ts.push_back(print(t));
    ctx[x] = ts;
  }
  j["ctx"] = ctx;
  j["term"] = print(d.term);
  if (const Type* t = as_type(d.type)) {
    j["type"] = print(*t);
  } else {
    ojson ts = ojson::array();
    for (const auto& t : *as_set(d.type)) ts.push_back(print(t));
    j["type"] = ts;
  }
  ojson ps = ojson::array();
  for (const auto& q : d.premises) ps.push_back(to_json(q));
  j["premises"] = ps;
  if (d.select) j["select"] = print(*d.select);
  return j;
}

CurryDerivation from_json(const ojson& j, Path& p) {
  auto fail = [&](const std::string& why) -> void {
    throw InvalidDerivation(p, j.is_object() && j.contains("rule") && j["rule"].is_string()
                                   ? j["rule"].get<std::string>()
                                   : "?",
                            why);
  };
  if (!j.is_object()) fail("node is not an object");
  CurryDerivation d;
  if (!j.contains("rule") || !j["rule"].is_string()) fail("missing rule");
  std::string r = j["rule"];
  if (r == "var")
    d.rule = Rule::Var;
  else if (r == "many")
    d.rule = Rule::Many;
  else if (r == "intro")
    d.rule = Rule::Intro;
  else if (r == "elim")
    d.rule = Rule::Elim;
  else
    fail("unknown rule");
  if (j.contains("ctx")) {
    if (!j["ctx"].is_object()) fail("ctx is not an object");
    for (const auto& [x, ts] : j["ctx"].items()) {
      if (!ts.is_array()) fail("ctx entry is not an array");
      std::vector<Type> v;
      for (const auto& t : ts) {
        if (!t.is_string()) fail("type is not a string");
        v.push_back(parse_type(t.get<std::string>()));
      }
      d.ctx[x] = SetType(std::move(v));
    }
  }
  if (!j.contains("term") || !j["term"].is_string()) fail("missing term");
  d.term = parse_untyped(j["term"].get<std::string>());
  if (!j.contains("type")) fail("missing type");
  if (j["type"].is_string()) {
    d.type = parse_type(j["type"].get<std::string>());
  } else if (j["type"].is_array()) {
    std::vector<Type> v;
    for (const auto& t : j["type"]) {
      if (!t.is_string()) fail("type is not a string");
      v.push_back(parse_type(t.get<std::string>()));
    }
    d.type = SetType(std::move(v));
  } else {
    fail("type is neither a string nor an array");
  }
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) fail("premises is not an array");
    for (std::size_t i = 0; i < j["premises"].size(); ++i) {
      p.push_back(i);
      d.premises.push_back(from_json(j["premises"][i], p));
      p.pop_back();
    }
  }
  if (j.contains("select")) {
    if (!j["select"].is_string()) fail("select is not a string");
    d.select = parse_type(j["select"].get<std::string>());
  }
  return d;
}

}  // namespace

std::string derivation_to_json(const CurryDerivation& d, int indent) {
  return to_json(d).dump(indent);
}

CurryDerivation derivation_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 1, static_cast<int>(e.byte));
  }
  Path p;
  return from_json(j, p);
}

}  // namespace isect
