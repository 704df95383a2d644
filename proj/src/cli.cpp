#include "isect/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "isect/curry.hpp"
#include "isect/errors.hpp"
#include "isect/io.hpp"
#include "isect/measure.hpp"
#include "isect/oracle.hpp"
#include "isect/parse.hpp"
#include "isect/print.hpp"
#include "isect/reduction.hpp"
#include "isect/typing.hpp"

namespace isect {

namespace {

class InputError : public Error {
 public:
  using Error::Error;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Calculus typed_calculus(const std::string& name) { return name == "i" ? Calculus::I : Calculus::Im; }

Fuel fuel_of(std::size_t n) { return Fuel{n, n}; }

std::string dump(const Json& j) { return j.dump(2); }

struct Options {
  std::string file;
  std::string second;
  std::string calculus = "im";
  std::string strategy = "leftmost";
  std::string format = "json";
  std::string pos;
  std::size_t steps = 1000;
  std::size_t fuel = 10000;
  std::uint64_t seed = 0;
};

int cmd_check(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  TypingContext ctx = minimal_context(t);
  out << "type: " << print(check(ctx, t)) << "\n";
  out << "context: " << print(ctx) << "\n";
  return kOk;
}

int cmd_erase(const Options& o, std::ostream& out) {
  out << print(erase(parse_term(slurp(o.file)))) << "\n";
  return kOk;
}

int cmd_decorate(const Options& o, std::ostream& out) {
  CurryDerivation d = derivation_from_json(slurp(o.file));
  CurryJudgement j = check_curry(d);
  MemTerm t = decorate(d);
  out << print(t) << "\n";
  (void)j;
  return kOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  synthesize_type(t);
  Calculus c = typed_calculus(o.calculus);
  Trace tr{t, c, o.strategy, std::nullopt, {}};
  std::mt19937_64 rng(o.seed);
  if (o.strategy == "random") tr.seed = o.seed;
  MemTerm cur = t;
  for (std::size_t i = 0; i < o.steps; ++i) {
    auto rs = c == Calculus::I ? i_redexes(cur) : redexes(cur);
    if (rs.empty()) break;
    std::size_t k = 0;
    if (o.strategy == "random") k = std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng);
    MemTerm next = step(cur, rs[k].position, c);
    tr.steps.push_back({c == Calculus::I ? Step::Kind::I : Step::Kind::Im, rs[k].position, cur, next});
    cur = std::move(next);
  }
  out << dump(to_json(tr)) << "\n";
  return kOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  synthesize_type(t);
  auto nf = normal_form(t, typed_calculus(o.calculus), fuel_of(o.fuel));
  out << print(nf.term) << "\n";
  out << "steps: " << nf.steps << "\n";
  return kOk;
}

int cmd_measure(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  synthesize_type(t);
  if (!t.wrapper_free()) throw IllTyped("the measure is defined on wrapper-free terms");
  out << dump(to_json(measure_report(t))) << "\n";
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  UntypedTerm m = parse_untyped(slurp(o.second));
  synthesize_type(t);
  Position p = parse_position(o.pos);
  Simulation s = simulate_beta(t, m, p);
  out << dump(simulation_json(t, m, p, s)) << "\n";
  return kOk;
}

int cmd_chains(const Options& o, std::ostream& out) {
  MemTerm t = parse_term(slurp(o.file));
  synthesize_type(t);
  if (!t.wrapper_free()) throw IllTyped("the measure is defined on wrapper-free terms");
  std::size_t n = longest_chain(t, Calculus::I, fuel_of(o.fuel));
  std::size_t w = W(t);
  out << dump(Json{{"formatVersion", kFormatVersion},
                   {"term", print(t)},
                   {"longestChain", n},
                   {"W", w},
                   {"verdict", n <= w ? "chain <= W" : "chain > W"}})
      << "\n";
  if (n > w) throw InvariantViolation("longest chain exceeds W");
  return kOk;
}

int cmd_infer(const Options& o, std::ostream& out) {
  UntypedTerm m = parse_untyped(slurp(o.file));
  Inference r = infer_sn(m, fuel_of(o.fuel));
  out << "term: " << print(r.term) << "\n";
  out << "context: " << print(r.ctx) << "\n";
  out << "type: " << print(r.type) << "\n";
  return kOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  std::string text = slurp(o.file);
  Fuel f = fuel_of(o.fuel);
  bool dot = o.format == "dot";
  if (o.calculus == "beta") {
    BetaGraph g = explore(parse_untyped(text), f);
    out << (dot ? graph_dot(g) : dump(graph_json(g)) + "\n");
  } else {
    MemTerm t = parse_term(text);
    synthesize_type(t);
    Calculus c = typed_calculus(o.calculus);
    MemGraph g = explore(t, c, f);
    out << (dot ? graph_dot(g) : dump(graph_json(g, c)) + "\n");
  }
  return kOk;
}

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InputError*>(&e) ||
      dynamic_cast<const InvalidPosition*>(&e) || dynamic_cast<const NotARedex*>(&e))
    return kParseFailure;
  if (dynamic_cast<const NotUniform*>(&e)) return kNotUniform;
  if (dynamic_cast<const FuelExhausted*>(&e) || dynamic_cast<const NotSNWithinFuel*>(&e) ||
      dynamic_cast<const CycleDetected*>(&e) || dynamic_cast<const SearchBudgetExceeded*>(&e))
    return kFuelFailure;
  if (dynamic_cast<const InvariantViolation*>(&e)) return kInvariantFailure;
  if (dynamic_cast<const NotTypable*>(&e) || dynamic_cast<const UnboundOrWrongAnnotation*>(&e) ||
      dynamic_cast<const IllTyped*>(&e) || dynamic_cast<const MissingSubstituent*>(&e) ||
      dynamic_cast<const InvalidDerivation*>(&e))
    return kTypeFailure;
  return kInvariantFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Intersection types, memory calculus and the W-measure", "isect"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "input file, - for stdin")->required(); };
  auto calc_opt = [&](CLI::App* sub) {
    sub->add_option("--calculus", o.calculus, "i or im")->check(CLI::IsMember({"i", "im"}));
  };
  auto fuel_opt = [&](CLI::App* sub) { sub->add_option("--fuel", o.fuel, "node and depth budget"); };

  auto* check_cmd = app.add_subcommand("check", "synthesize the type and minimal context of a term");
  file_arg(check_cmd);
  handlers["check"] = cmd_check;

  auto* erase_cmd = app.add_subcommand("erase", "erase a uniform term to an untyped term");
  file_arg(erase_cmd);
  handlers["erase"] = cmd_erase;

  auto* decorate_cmd = app.add_subcommand("decorate", "annotated term of a Curry derivation (JSON)");
  file_arg(decorate_cmd);
  handlers["decorate"] = cmd_decorate;

  auto* reduce_cmd = app.add_subcommand("reduce", "reduction trace as JSON");
  file_arg(reduce_cmd);
  calc_opt(reduce_cmd);
  reduce_cmd->add_option("--strategy", o.strategy, "leftmost or random")
      ->check(CLI::IsMember({"leftmost", "random"}));
  reduce_cmd->add_option("--steps", o.steps, "maximum number of steps");
  reduce_cmd->add_option("--seed", o.seed, "seed for the random strategy");
  handlers["reduce"] = cmd_reduce;

  auto* normalize_cmd = app.add_subcommand("normalize", "normal form and step count");
  file_arg(normalize_cmd);
  calc_opt(normalize_cmd);
  fuel_opt(normalize_cmd);
  handlers["normalize"] = cmd_normalize;

  auto* measure_cmd = app.add_subcommand("measure", "simplification stages and W as JSON");
  file_arg(measure_cmd);
  handlers["measure"] = cmd_measure;

  auto* simulate_cmd = app.add_subcommand("simulate", "simulate a beta step on a refining term");
  simulate_cmd->add_option("term", o.file, "annotated term file")->required();
  simulate_cmd->add_option("lambda", o.second, "untyped term file")->required();
  simulate_cmd->add_option("--pos", o.pos, "redex position, e.g. 0,1")->required();
  handlers["simulate"] = cmd_simulate;

  auto* chains_cmd = app.add_subcommand("chains", "longest i-chain against W");
  file_arg(chains_cmd);
  fuel_opt(chains_cmd);
  handlers["chains"] = cmd_chains;

  auto* infer_cmd = app.add_subcommand("infer-sn", "decorate a strongly normalizing untyped term");
  file_arg(infer_cmd);
  fuel_opt(infer_cmd);
  handlers["infer-sn"] = cmd_infer;

  auto* graph_cmd = app.add_subcommand("graph", "reduction graph as DOT or JSON");
  file_arg(graph_cmd);
  graph_cmd->add_option("--calculus", o.calculus, "beta, i or im")->check(CLI::IsMember({"beta", "i", "im"}));
  fuel_opt(graph_cmd);
  graph_cmd->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  handlers["graph"] = cmd_graph;

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseFailure;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_of(e);
  }
}

}  // namespace isect
