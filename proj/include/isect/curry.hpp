#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isect/terms.hpp"
#include "isect/typing.hpp"

namespace isect {

using TypeOrSet = std::variant<Type, SetType>;

// Explicit derivation tree of the Curry-style system. Judgements are
// ctx ⊢ term : type, with a set-type for `many` nodes.
struct CurryDerivation {
  enum class Rule { Var, Many, Intro, Elim };

  Rule rule = Rule::Var;
  TypingContext ctx;
  UntypedTerm term = UntypedTerm::free("_");
  TypeOrSet type = Type::base("_");
  std::vector<CurryDerivation> premises;
  std::optional<Type> select;  // var nodes
};

struct CurryJudgement {
  TypingContext ctx;
  UntypedTerm term;
  TypeOrSet type;
};

const char* rule_name(CurryDerivation::Rule r);

// Throws InvalidDerivation naming the first offending node (preorder).
CurryJudgement check_curry(const CurryDerivation& d);

// Church-style term encoding the derivation. Throws InvalidDerivation.
MemTerm decorate(const CurryDerivation& d);
SetTerm decorate_set(const CurryDerivation& d);

// Derivation of ctx ⊢ erase(t) : type(t) read off a uniform term that checks
// under ctx. Binders keep their hint unless it clashes with ctx or with a
// free variable. Throws NotTypable, UnboundOrWrongAnnotation, NotUniform.
CurryDerivation erase_derivation(const TypingContext& ctx, const MemTerm& t);

// Equality up to the order of premises of `many` nodes and α on terms.
bool same_derivation(const CurryDerivation& a, const CurryDerivation& b);

std::string derivation_to_json(const CurryDerivation& d, int indent = 2);
// Throws ParseError (bad term/type text) or InvalidDerivation (bad shape).
CurryDerivation derivation_from_json(const std::string& text);

}  // namespace isect
