#pragma once

#include <map>
#include <vector>

#include "isect/terms.hpp"
#include "isect/types.hpp"

namespace isect {

inline unsigned height(const Type& a) { return a.height(); }
inline unsigned height(const SetType& a) { return a.height(); }

std::size_t weight(const MemTerm& t);
std::size_t weight(const SetTerm& s);

struct DegreeProfile {
  unsigned max_degree = 0;
  std::map<unsigned, std::size_t> redexes_per_degree;
};

// The three throw IllTyped on untypable input.
unsigned max_degree(const MemTerm& t);
unsigned max_degree(const SetTerm& s);
unsigned max_degree(const WrapperList& l);
DegreeProfile degree_profile(const MemTerm& t);

// Simplification of degree d >= 1: contracts, in one parallel pass, every
// redex whose w-abstraction has type height d.
MemTerm simp(const MemTerm& t, unsigned d);
SetTerm simp(const SetTerm& s, unsigned d);
WrapperList simp(const WrapperList& l, unsigned d);

// simp_1(... simp_D(t)) with D = max_degree(t).
MemTerm simp_full(const MemTerm& t);

// weight(simp_full(t)) for a wrapper-free typable t.
std::size_t W(const MemTerm& t);

struct MeasureStage {
  unsigned degree;  // the degree just simplified
  MemTerm term;
  unsigned max_degree;
};

struct MeasureReport {
  MemTerm term;
  unsigned max_degree = 0;
  std::vector<MeasureStage> stages;
  MemTerm normal_form;
  std::size_t w = 0;
};

// Throws InvariantViolation if a stage still has a redex of degree >= the
// one just simplified.
MeasureReport measure_report(const MemTerm& t);

}  // namespace isect
