#pragma once

#include <algorithm>

#include "isect/terms.hpp"
#include "isect/typing.hpp"

// Independent recomputations used to cross-check the library.
namespace oracle {

inline std::size_t weight(const isect::MemTerm& t) {
  std::size_t n = 0;
  for (const auto& p : isect::positions(t))
    if (isect::subterm_at(t, p).is_wrap()) ++n;
  return n;
}

// Max height over applied w-abstractions, typing each function part from
// scratch.
inline unsigned max_degree(const isect::MemTerm& t) {
  unsigned d = 0;
  for (const auto& p : isect::positions(t)) {
    const isect::MemTerm& u = isect::subterm_at(t, p);
    if (!u.is_app()) continue;
    const isect::MemTerm* f = &u.fun();
    while (f->is_wrap()) f = &f->head();
    if (!f->is_lam()) continue;
    d = std::max(d, isect::synthesize_type(u.fun()).height());
  }
  return d;
}

inline unsigned max_degree(const isect::SetTerm& s) {
  unsigned d = 0;
  for (const auto& e : s) d = std::max(d, oracle::max_degree(e));
  return d;
}

}  // namespace oracle
