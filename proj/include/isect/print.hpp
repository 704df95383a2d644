#pragma once

#include <string>

#include "isect/terms.hpp"
#include "isect/types.hpp"

namespace isect {

std::string print(const Type& t);
// Always braced: "{a, b -> c}".
std::string print(const SetType& s);
std::string print(const UntypedTerm& t);
std::string print(const MemTerm& t);
// Always braced.
std::string print(const SetTerm& s);

}  // namespace isect
