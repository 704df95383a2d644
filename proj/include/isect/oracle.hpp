#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isect/reduction.hpp"
#include "isect/terms.hpp"
#include "isect/typing.hpp"

namespace isect {

struct Fuel {
  std::size_t max_nodes = 10000;
  std::size_t max_depth = 10000;
};

// Breadth-first reduction graph. Node 0 is the root; nodes are distinct up to α.
template <class T>
struct ReductionGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Position position;
  };
  std::vector<T> nodes;
  std::vector<Edge> edges;
  std::vector<bool> expanded;
  bool truncated = false;

  std::size_t node_count() const { return nodes.size(); }
  // Longest path from the root, or nullopt if a cycle is reachable.
  std::optional<std::size_t> longest_path() const;
  bool has_cycle() const { return !longest_path(); }
};

using MemGraph = ReductionGraph<MemTerm>;
using BetaGraph = ReductionGraph<UntypedTerm>;

// Calculus must be I or Im.
MemGraph explore(const MemTerm& t, Calculus c, const Fuel& fuel = {});
BetaGraph explore(const UntypedTerm& m, const Fuel& fuel = {});

template <class T>
struct Normalization {
  T term;
  std::size_t steps = 0;
};

// Leftmost-innermost; throws FuelExhausted after fuel.max_depth steps.
Normalization<MemTerm> normal_form(const MemTerm& t, Calculus c, const Fuel& fuel = {});
Normalization<UntypedTerm> normal_form(const UntypedTerm& m, const Fuel& fuel = {});
// Innermost-leftmost redex position, if any.
std::optional<Position> innermost_redex(const std::vector<Position>& redex_positions);

// Throws FuelExhausted on truncation and CycleDetected on a cycle.
std::size_t longest_chain(const MemTerm& t, Calculus c, const Fuel& fuel = {});
std::size_t longest_chain(const UntypedTerm& m, const Fuel& fuel = {});

enum class SN { Yes, No, Unknown };
const char* sn_name(SN v);
SN is_sn(const UntypedTerm& m, const Fuel& fuel = {});

// Rebuilds (\x:binder. body) s args from the body t (x free), checking that
// it has the same type under ctx as expanded = t{x := s} args.
MemTerm head_subject_expansion(const MemTerm& expanded, const MemTerm& body, const std::string& x,
                               const SetType& binder, const SetTerm& s,
                               const std::vector<SetTerm>& args, const TypingContext& ctx);

struct Inference {
  MemTerm term;
  TypingContext ctx;
  Type type;
};
// Wrapper-free decoration of a strongly normalizing term with fresh bases
// b0, b1, ...; throws NotSNWithinFuel.
Inference infer_sn(const UntypedTerm& m, const Fuel& fuel = {});

}  // namespace isect
