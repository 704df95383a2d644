#pragma once

#include <string_view>

#include "isect/terms.hpp"
#include "isect/types.hpp"

namespace isect {

// All parsers throw ParseError and require the whole input to be consumed.
Type parse_type(std::string_view text);
// "{a, b}" or a bare type (singleton); "{}" gives the empty set.
SetType parse_set_type(std::string_view text);
UntypedTerm parse_untyped(std::string_view text);
MemTerm parse_term(std::string_view text);
// "{t1, ..., tn}" or a bare term (singleton).
SetTerm parse_set_term(std::string_view text);

}  // namespace isect
