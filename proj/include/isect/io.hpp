#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isect/measure.hpp"
#include "isect/oracle.hpp"
#include "isect/reduction.hpp"

namespace isect {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const Position& p);
Position position_from_json(const Json& j);
Json to_json(const Step& s);
Json to_json(const MeasureReport& r);

struct Trace {
  MemTerm initial;
  Calculus calculus;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::vector<Step> steps;
};
Json to_json(const Trace& t);

Json simulation_json(const MemTerm& t, const UntypedTerm& m, const Position& p, const Simulation& s);

Json graph_json(const MemGraph& g, Calculus c);
Json graph_json(const BetaGraph& g);
std::string graph_dot(const MemGraph& g);
std::string graph_dot(const BetaGraph& g);

}  // namespace isect
