#include "isect/io.hpp"

#include <sstream>

#include "isect/errors.hpp"
#include "isect/print.hpp"

namespace isect {

Json to_json(const Position& p) { return Json(p.path); }

Position position_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("position must be an array", 1, 1);
  Position p;
  for (const auto& e : j) {
    if (!e.is_number_unsigned()) throw ParseError("position entries must be naturals", 1, 1);
    p.path.push_back(e.get<std::uint32_t>());
  }
  return p;
}

Json to_json(const Step& s) {
  return Json{{"kind", step_kind_name(s.kind)}, {"position", to_json(s.position)}, {"result", print(s.target)}};
}

Json to_json(const MeasureReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"afterDegree", s.degree}, {"term", print(s.term)}, {"maxDegree", s.max_degree}});
  return Json{{"formatVersion", kFormatVersion}, {"term", print(r.term)},   {"maxDegree", r.max_degree},
              {"stages", stages},                {"normalForm", print(r.normal_form)}, {"W", r.w}};
}

Json to_json(const Trace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  const MemTerm& last = t.steps.empty() ? t.initial : t.steps.back().target;
  Json j{{"formatVersion", kFormatVersion}, {"calculus", calculus_name(t.calculus)}, {"strategy", t.strategy}};
  if (t.seed) j["seed"] = *t.seed;
  j["source"] = print(t.initial);
  j["steps"] = steps;
  j["final"] = print(last);
  j["normal"] = (t.calculus == Calculus::I ? i_redexes(last) : redexes(last)).empty();
  return j;
}

Json simulation_json(const MemTerm& t, const UntypedTerm& m, const Position& p, const Simulation& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps) steps.push_back(to_json(st));
  return Json{{"formatVersion", kFormatVersion},
              {"source", print(t)},
              {"untyped", print(m)},
              {"position", to_json(p)},
              {"contracted", print(s.n)},
              {"steps", steps},
              {"result", print(s.s)}};
}

namespace {

template <class G>
Json graph_json_common(const G& g, const char* calculus) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    nodes.push_back({{"id", i}, {"term", print(g.nodes[i])}, {"expanded", static_cast<bool>(g.expanded[i])}});
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"position", to_json(e.position)}});
  Json j{{"formatVersion", kFormatVersion}, {"calculus", calculus}, {"root", 0},
         {"truncated", g.truncated},       {"nodes", nodes},        {"edges", edges}};
  auto lp = g.longest_path();
  j["stats"] = {{"nodeCount", g.nodes.size()}, {"edgeCount", g.edges.size()}};
  j["stats"]["longestPath"] = lp ? Json(*lp) : Json(nullptr);
  return j;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

template <class G>
std::string graph_dot_common(const G& g) {
  std::ostringstream os;
  os << "digraph reductions {\n  node [shape=box, fontname=monospace];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << dot_escape(print(g.nodes[i])) << "\"";
    if (i == 0) os << ", penwidth=2";
    if (!g.expanded[i]) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : g.edges)
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << to_string(e.position) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace

Json graph_json(const MemGraph& g, Calculus c) { return graph_json_common(g, calculus_name(c)); }
Json graph_json(const BetaGraph& g) { return graph_json_common(g, calculus_name(Calculus::Beta)); }
std::string graph_dot(const MemGraph& g) { return graph_dot_common(g); }
std::string graph_dot(const BetaGraph& g) { return graph_dot_common(g); }

}  // namespace isect
