// Acceptance run: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "isect/curry.hpp"
#include "isect/errors.hpp"
#include "isect/measure.hpp"
#include "isect/oracle.hpp"
#include "isect/parse.hpp"
#include "isect/print.hpp"
#include "isect/reduction.hpp"
#include "isect/typing.hpp"
#include "support/corpus.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/worked_terms.hpp"

using namespace isect;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Tally {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first;

  void expect(bool cond, const std::function<std::string()>& what) {
    ++checks;
    if (cond) return;
    if (violations++ == 0) first = what();
  }
  Outcome outcome(const std::string& extra = "") const {
    std::ostringstream os;
    os << checks << " checks, " << violations << " violations";
    if (!extra.empty()) os << ", " << extra;
    if (violations) os << "; first: " << first;
    return {violations == 0, os.str()};
  }
};

MemTerm term(const std::string& s) { return parse_term(s); }

const Fuel kBig{100000, 100000};

std::optional<Position> replay(const MemTerm& from, const MemTerm& redex, const MemTerm& to) {
  for (const auto& r : redexes(from))
    if (subterm_at(from, r.position) == redex && step_im(from, r.position) == to) return r.position;
  return std::nullopt;
}

Outcome golden_wrappers() {
  Tally t;
  for (auto [src, nf] : {std::pair{worked::kWrapEx1, worked::kWrapEx1Nf}, std::pair{worked::kWrapEx2, worked::kWrapEx2Nf}}) {
    MemTerm n = normal_form(term(src), Calculus::Im, kBig).term;
    t.expect(n == term(nf), [&] { return print(n) + " != " + nf; });
    t.expect(oracle::weight(n) == 2, [&] { return "weight of " + print(n); });
    t.expect(weight(n) == 2, [&] { return "library weight of " + print(n); });
    t.expect(simp_full(term(src)) == term(nf), [&] { return "simp_full of " + src; });
  }
  return t.outcome();
}

Outcome golden_figure() {
  Tally t;
  std::vector<MemTerm> ends;
  for (const auto& path : {worked::left_path(), worked::right_path()}) {
    for (const auto& r : path)
      t.expect(replay(term(r.from), term(r.redex), term(r.to)).has_value(),
               [&] { return "cannot replay " + r.from + " -> " + r.to; });
    ends.push_back(term(path.back().to));
  }
  MemTerm start = term(worked::kStart);
  MemTerm nf = normal_form(start, Calculus::Im, kBig).term;
  t.expect(ends[0] == ends[1], [] { return "paths end at different terms"; });
  t.expect(ends[0] == nf, [&] { return "oracle normal form " + print(nf); });
  t.expect(simp_full(start) == nf, [] { return "simp_full differs from the normal form"; });
  std::size_t w = W(start);
  t.expect(w == oracle::weight(nf), [&] { return "W = " + std::to_string(w); });
  return t.outcome("W(start) = " + std::to_string(w));
}

Outcome measure_decrease(const std::vector<corpus::Entry>& c) {
  Tally t;
  for (const auto& e : c) {
    std::size_t w = W(e.term);
    for (const auto& r : i_redexes(e.term)) {
      MemTerm s = step_i(e.term, r.position);
      std::size_t ws = W(s);
      t.expect(w > ws, [&] {
        return print(e.term) + " at " + to_string(r.position) + ": " + std::to_string(w) + " -> " + std::to_string(ws);
      });
    }
  }
  return t.outcome(std::to_string(c.size()) + " terms");
}

Outcome normal_form_agreement(const std::vector<corpus::Entry>& c) {
  Tally t;
  for (const auto& e : c) {
    MemTerm s = simp_full(e.term);
    t.expect(redexes(s).empty(), [&] { return "redex left in simp_full of " + print(e.term); });
    MemTerm n = normal_form(e.term, Calculus::Im, kBig).term;
    t.expect(s == n, [&] { return print(e.term) + ": " + print(s) + " vs " + print(n); });
  }
  return t.outcome();
}

Outcome degree_lemmas(const std::vector<corpus::Entry>& c) {
  Tally t;
  for (const auto& e : c) {
    MemTerm u = e.term;
    for (unsigned d = oracle::max_degree(u); d >= 1; --d) {
      if (oracle::max_degree(u) > d) continue;
      MemTerm v = simp(u, d);
      t.expect(oracle::max_degree(v) < d, [&] { return "simp_" + std::to_string(d) + " of " + print(u); });
      u = v;
    }
  }
  // Substitution bound, on redexes of corpus terms and of their im-reducts.
  std::size_t instances = 0;
  for (std::size_t round = 0; instances < 500 && round < 2; ++round) {
    for (const auto& e : c) {
      std::vector<MemTerm> pool{e.term};
      if (round == 1) {
        MemGraph g = explore(e.term, Calculus::Im, Fuel{200, 200});
        pool = g.nodes;
      }
      for (const auto& u : pool) {
        for (const auto& r : redexes(u)) {
          const MemTerm& red = subterm_at(u, r.position);
          if (red.loose() != 0) continue;
          MemTerm core = peel(red.fun()).first;
          std::string x = fresh_name("x", free_names(red));
          MemTerm body = open(core.body(), x);
          const SetTerm& s = red.arg();
          unsigned d = 1 + std::max({oracle::max_degree(body), oracle::max_degree(s), core.binder().height()});
          MemTerm out = substitute(body, x, core.binder(), s, minimal_context(s));
          t.expect(oracle::max_degree(out) < d, [&] { return "substitution in " + print(red); });
          ++instances;
        }
      }
      if (instances >= 500) break;
    }
  }
  t.expect(instances >= 500, [&] { return "only " + std::to_string(instances) + " substitution instances"; });
  return t.outcome(std::to_string(instances) + " substitution instances");
}

Outcome chain_bound(const std::vector<corpus::Entry>& c) {
  Tally t;
  std::size_t within = 0;
  for (const auto& e : c) {
    MemGraph g = explore(e.term, Calculus::I, Fuel{10000, 10000});
    if (g.truncated) continue;
    ++within;
    auto n = g.longest_path();
    t.expect(n.has_value(), [&] { return "cycle from " + print(e.term); });
    if (n) t.expect(*n <= W(e.term), [&] { return print(e.term) + ": chain " + std::to_string(*n); });
  }
  return t.outcome(std::to_string(within) + " graphs within the node cap");
}

Outcome subject_reduction(const std::vector<corpus::Entry>& c) {
  Tally t;
  for (const auto& e : c) {
    Type a = synthesize_type(e.term);
    for (Calculus k : {Calculus::I, Calculus::Im}) {
      for (const auto& [p, u] : one_step_reducts(e.term, k)) {
        t.expect(synthesize_type(u) == a, [&] { return "type changes at " + to_string(p) + " in " + print(e.term); });
        t.expect(sets_well_formed(u), [&] { return "bad set after step at " + to_string(p) + " in " + print(e.term); });
        if (k == Calculus::I) t.expect(u.wrapper_free(), [&] { return "i-step created a wrapper"; });
      }
    }
  }
  return t.outcome();
}

Outcome confluence(const std::vector<corpus::Entry>& c) {
  Tally t;
  for (const auto& e : c) {
    for (Calculus k : {Calculus::I, Calculus::Im}) {
      auto rs = one_step_reducts(e.term, k);
      if (rs.size() < 2) continue;
      MemTerm first = normal_form(rs[0].second, k, kBig).term;
      for (std::size_t i = 1; i < rs.size(); ++i) {
        MemTerm n = normal_form(rs[i].second, k, kBig).term;
        t.expect(n == first, [&] { return "reducts of " + print(e.term) + " do not join"; });
      }
    }
  }
  gen::Rng rng(7);
  std::size_t samples = 0;
  for (std::size_t i = 0; samples < 100; i = (i + 1) % c.size()) {
    const MemTerm& u = c[i].term;
    if (redexes(u).empty()) continue;
    for (Calculus k : {Calculus::I, Calculus::Im}) {
      MemTerm v = random_par_reduct(u, k, rng);
      MemTerm comp = complete_development(u, k);
      t.expect(par_reduces(u, v, k), [&] { return "sampled reduct is not a parallel reduct"; });
      t.expect(par_reduces(v, comp, k), [&] { return print(v) + " does not reach the complete development"; });
    }
    ++samples;
  }
  return t.outcome(std::to_string(samples) + " parallel samples per calculus");
}

Outcome correspondence() {
  Tally t;
  gen::Rng rng(11);
  gen::DerivationGen g(rng);
  std::size_t nontrivial = 0;
  for (int i = 0; i < 100; ++i) {
    CurryDerivation d = g.derivation(5);
    try {
      CurryJudgement j = check_curry(d);
      MemTerm m = decorate(d);
      Type a = check(j.ctx, m);
      t.expect(a == std::get<Type>(j.type), [&] { return "decoration changes the type: " + print(m); });
      t.expect(refines(m, j.term) && erase(m) == j.term, [&] { return "erase does not invert " + print(m); });
      CurryDerivation back = erase_derivation(j.ctx, m);
      t.expect(same_derivation(back, d), [&] { return "derivation does not round-trip: " + print(j.term); });
      t.expect(same_derivation(derivation_from_json(derivation_to_json(d)), d),
               [&] { return "JSON round trip of " + print(j.term); });
      if (d.rule != CurryDerivation::Rule::Var) ++nontrivial;
    } catch (const Error& e) {
      t.expect(false, [&] { return std::string(e.what()); });
    }
  }
  return t.outcome(std::to_string(nontrivial) + " non-leaf derivations");
}

Outcome simulation(const std::vector<corpus::Entry>& c) {
  Tally t;
  std::size_t sims = 0;
  for (const auto& e : c) {
    for (const auto& p : beta_redexes(e.source)) {
      if (sims >= 100) break;
      ++sims;
      try {
        Simulation s = simulate_beta(e.term, e.source, p);
        t.expect(s.n == step_beta(e.source, p), [&] { return "wrong contractum"; });
        t.expect(!s.steps.empty(), [&] { return "no steps for " + print(e.term); });
        MemTerm cur = e.term;
        for (const auto& st : s.steps) {
          t.expect(st.source == cur && step_i(cur, st.position) == st.target, [&] { return "bad simulation step"; });
          cur = st.target;
        }
        t.expect(cur == s.s && refines(s.s, s.n), [&] { return print(s.s) + " does not refine " + print(s.n); });
      } catch (const Error& ex) {
        t.expect(false, [&] { return std::string(ex.what()) + " simulating " + print(e.term); });
      }
    }
  }
  std::size_t projections = 0;
  for (const auto& e : c) {
    for (const auto& r : i_redexes(e.term)) {
      if (projections >= 100) break;
      ++projections;
      try {
        MemTerm s = step_i(e.term, r.position);
        Projection pr = project_step(e.term, s, r.position);
        t.expect(pr.n == step_beta(erase(e.term), erase_position(e.term, r.position)),
                 [&] { return "wrong projected contractum"; });
        MemTerm cur = s;
        for (const auto& st : pr.steps) {
          t.expect(st.source == cur && step_i(cur, st.position) == st.target, [&] { return "bad completing step"; });
          cur = st.target;
        }
        t.expect(cur == pr.s && refines(pr.s, pr.n), [&] { return "projection does not refine"; });
      } catch (const Error& ex) {
        t.expect(false, [&] { return std::string(ex.what()) + " projecting " + print(e.term); });
      }
    }
  }
  t.expect(sims == 100 && projections == 100, [&] {
    return "only " + std::to_string(sims) + " simulations and " + std::to_string(projections) + " projections";
  });
  return t.outcome(std::to_string(sims) + " simulations, " + std::to_string(projections) + " projections");
}

Outcome sn_characterization() {
  Tally t;
  gen::Rng rng(3);
  std::set<UntypedTerm> seen;
  Fuel f{2000, 200};
  std::size_t tries = 0;
  while (seen.size() < 100 && tries++ < 100000) {
    UntypedTerm m = gen::untyped_upto(rng, 12);
    if (is_sn(m, f) != SN::Yes || !seen.insert(m).second) continue;
    try {
      Inference r = infer_sn(m, f);
      t.expect(check(r.ctx, r.term) == r.type, [&] { return "re-check fails for " + print(m); });
      t.expect(erase(r.term) == m, [&] { return "erasure differs for " + print(m); });
    } catch (const Error& e) {
      t.expect(false, [&] { return std::string(e.what()) + " on " + print(m); });
    }
  }
  t.expect(seen.size() == 100, [] { return "too few SN terms"; });
  for (const char* bad : {"(\\x. x x) (\\x. x x)", "(\\x. x x) (\\x. x x) y", "(\\x. y) ((\\x. x x) (\\x. x x))"}) {
    bool failed = false;
    try {
      infer_sn(parse_untyped(bad), Fuel{10000, 10000});
    } catch (const NotSNWithinFuel&) {
      failed = true;
    }
    t.expect(failed, [&] { return std::string("inferred a type for ") + bad; });
  }
  return t.outcome(std::to_string(seen.size()) + " SN terms");
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  std::vector<corpus::Entry> c = corpus::build();
  double build_s = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << "corpus: " << c.size() << " terms (" << std::fixed << std::setprecision(2) << build_s << "s)\n";

  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "golden wrapper examples", 1, golden_wrappers},
      {2, "golden figure", 1, golden_figure},
      {3, "measure decrease", 60, [&] { return measure_decrease(c); }},
      {4, "normal-form agreement", 0, [&] { return normal_form_agreement(c); }},
      {5, "degree lemmas", 0, [&] { return degree_lemmas(c); }},
      {6, "chain bound", 0, [&] { return chain_bound(c); }},
      {7, "subject reduction and set distinctness", 0, [&] { return subject_reduction(c); }},
      {8, "confluence and diamond", 0, [&] { return confluence(c); }},
      {9, "correspondence round trip", 0, correspondence},
      {10, "simulation and projection", 0, [&] { return simulation(c); }},
      {11, "SN characterization", 0, sn_characterization},
  };
  bool all_ok = c.size() >= 200;
  if (!all_ok) std::cout << "corpus smaller than 200 terms\n";
  for (const auto& k : all) {
    auto s = Clock::now();
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - s).count();
    if (k.limit_s > 0 && secs >= k.limit_s) {
      o.ok = false;
      o.detail += "; over the time limit";
    }
    all_ok = all_ok && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << k.id << "  " << k.name << "  ("
              << std::setprecision(3) << secs << "s)  " << o.detail << "\n";
  }
  std::cout << (all_ok ? "all criteria pass" : "some criteria fail") << "\n";
  return all_ok ? 0 : 1;
}
