#pragma once

#include <map>
#include <string>

#include "isect/terms.hpp"
#include "isect/types.hpp"

namespace isect {

// Variable -> non-empty set-type. Variables outside the map have the empty
// set-type.
using TypingContext = std::map<std::string, SetType>;

TypingContext context_union(const TypingContext& a, const TypingContext& b);
bool context_subset(const TypingContext& a, const TypingContext& b);
std::string print(const TypingContext& ctx);

// Unique type fixed by the annotations; throws NotTypable.
Type synthesize_type(const MemTerm& t);
// Throws NotTypable when elements share a type (or are untypable).
SetType synthesize_type(const SetTerm& s);

// synthesize_type plus: every free occurrence x^B has B in ctx(x).
// Throws NotTypable or UnboundOrWrongAnnotation.
Type check(const TypingContext& ctx, const MemTerm& t);
SetType check(const TypingContext& ctx, const SetTerm& s);

TypingContext minimal_context(const MemTerm& t);
TypingContext minimal_context(const SetTerm& s);

// Every set-term inside t is non-empty where required and its elements have
// pairwise distinct synthesized types.
bool sets_well_formed(const MemTerm& t);

// Refinement t ⊑ M (wrapper-free terms only).
bool refines(const MemTerm& t, const UntypedTerm& m);
bool refines(const SetTerm& s, const UntypedTerm& m);
bool is_uniform(const MemTerm& t);
// Throws NotUniform.
UntypedTerm erase(const MemTerm& t);

}  // namespace isect
