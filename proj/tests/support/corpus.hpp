#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isect/errors.hpp"
#include "isect/oracle.hpp"
#include "isect/parse.hpp"
#include "isect/typing.hpp"
#include "support/generators.hpp"
#include "support/worked_terms.hpp"

namespace corpus {

struct Entry {
  std::string origin;
  isect::MemTerm term;
  // The untyped term it decorates.
  isect::UntypedTerm source;
};

struct Options {
  std::size_t target = 250;
  std::size_t max_size = 12;
  std::uint64_t seed = 20240611;
  isect::Fuel sn_fuel{2000, 200};
  // Decorations beyond this many nodes are skipped to bound runtime.
  std::size_t max_term_size = 300;
};

inline std::vector<Entry> worked_entries() {
  std::vector<Entry> out;
  for (const auto& [name, text] : std::vector<std::pair<std::string, std::string>>{
           {"figure start", worked::kStart},
           {"wrapper example 1", worked::kWrapEx1},
           {"wrapper example 2", worked::kWrapEx2},
           {"self application", worked::kSelfApp},
           {"identity redex", "(\\x:{a}.x^a){y^a}"},
           {"I^A I^a", worked::kA_a},
           {"I^{A^A} I^A", worked::kAA_A},
       }) {
    isect::MemTerm t = isect::parse_term(text);
    out.push_back({name, t, isect::erase(t)});
  }
  return out;
}

inline std::vector<Entry> build(const Options& o = {}) {
  std::vector<Entry> out = worked_entries();
  std::set<isect::MemTerm> seen;
  for (const auto& e : out) seen.insert(e.term);
  gen::Rng rng(o.seed);
  std::size_t attempts = 0;
  while (out.size() < o.target && attempts < 200 * o.target) {
    ++attempts;
    isect::UntypedTerm m = gen::untyped_upto(rng, o.max_size);
    // Normal forms exercise nothing.
    if (isect::beta_redexes(m).empty()) continue;
    if (isect::is_sn(m, o.sn_fuel) != isect::SN::Yes) continue;
    try {
      isect::Inference r = isect::infer_sn(m, o.sn_fuel);
      if (r.term.size() > o.max_term_size || !seen.insert(r.term).second) continue;
      out.push_back({"random #" + std::to_string(attempts), r.term, m});
    } catch (const isect::NotSNWithinFuel&) {
    }
  }
  return out;
}

}  // namespace corpus
