#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "isect/terms.hpp"
#include "isect/typing.hpp"

namespace isect {

enum class Calculus { Beta, I, Im };
const char* calculus_name(Calculus c);

// An applied w-abstraction (\x:binder. body) L s.
struct Redex {
  Position position;
  std::string binder_name;
  SetType binder;
  std::size_t wrapper_count = 0;
  // Height of the w-abstraction's type.
  unsigned degree = 0;
};

struct Step {
  enum class Kind { Beta, I, Im, Forget, Parallel };
  Kind kind;
  Position position;
  MemTerm source;
  MemTerm target;
};
const char* step_kind_name(Step::Kind k);

// t{x^ā := s̄}. Checks s̄ against ā under ctx first (IllTyped on mismatch);
// throws MissingSubstituent when an occurrence of x has no substituent.
MemTerm substitute(const MemTerm& t, const std::string& x, const SetType& binder, const SetTerm& s,
                   const TypingContext& ctx);
SetTerm substitute(const SetTerm& t, const std::string& x, const SetType& binder, const SetTerm& s,
                   const TypingContext& ctx);

// Every applied w-abstraction, in Position order. I-redexes are the ones
// with wrapper_count 0.
std::vector<Redex> redexes(const MemTerm& t);
std::vector<Redex> i_redexes(const MemTerm& t);

// Throw NotARedex or IllTyped.
MemTerm step_i(const MemTerm& t, const Position& p);
MemTerm step_im(const MemTerm& t, const Position& p);
MemTerm step(const MemTerm& t, const Position& p, Calculus c);
// The im-step contracting the same redex as an i-step of a wrapper-free term.
MemTerm corresponding_step(const MemTerm& t, const Position& p);

// All one-step reducts in Position order.
std::vector<std::pair<Position, MemTerm>> one_step_reducts(const MemTerm& t, Calculus c);

// Drop one wrapper anywhere.
std::vector<std::pair<Position, MemTerm>> forgetful_reducts(const MemTerm& t);
// t ▷* s.
bool forgets_to(const MemTerm& t, const MemTerm& s);

MemTerm complete_development(const MemTerm& t, Calculus c);
SetTerm complete_development(const SetTerm& s, Calculus c);
// Decides t ⇒ s. Throws SearchBudgetExceeded if an argument has more
// parallel reducts than `limit`.
bool par_reduces(const MemTerm& t, const MemTerm& s, Calculus c, std::size_t limit = 100000);
// A parallel reduct picking contraction at each redex with probability 1/2.
MemTerm random_par_reduct(const MemTerm& t, Calculus c, std::mt19937_64& rng);

// β-contraction of an untyped term at a redex position.
UntypedTerm step_beta(const UntypedTerm& m, const Position& p);
std::vector<Position> beta_redexes(const UntypedTerm& m);

// Positions of t whose subterms refine the subterm of M at p.
std::vector<Position> residual_positions(const MemTerm& t, const UntypedTerm& m, const Position& p);
// Untyped position of a position of a wrapper-free term.
Position erase_position(const MemTerm& t, const Position& p);

struct Simulation {
  UntypedTerm n;
  MemTerm s;
  std::vector<Step> steps;
};
// Contracts, one at a time, every residual in t of the β-redex of M at p.
Simulation simulate_beta(const MemTerm& t, const UntypedTerm& m, const Position& p);

struct Projection {
  UntypedTerm n;
  MemTerm s;
  std::vector<Step> steps;  // from the stepped term to s
};
// Given s = step_i(t, p), finds N (contraction of erase(t)) and a reduct of
// s refining N by breadth-first search; budget counts expanded terms and
// defaults to (number of residual copies) × size(t).
Projection project_step(const MemTerm& t, const MemTerm& s, const Position& p,
                        std::optional<std::size_t> budget = std::nullopt);

}  // namespace isect
