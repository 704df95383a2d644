#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "isect/errors.hpp"
#include "isect/parse.hpp"
#include "isect/print.hpp"

using namespace isect;

namespace {

Type ty(const char* s) { return parse_type(s); }
MemTerm term(const char* s) { return parse_term(s); }

}  // namespace

TEST_CASE("set types are canonical") {
  CHECK(SetType{ty("a"), ty("a")} == SetType{ty("a")});
  CHECK(SetType{ty("b"), ty("a")} == SetType{ty("a"), ty("b")});
  CHECK(SetType{ty("b"), ty("a")}[0] == ty("a"));
  SetType once{ty("a -> a"), ty("b"), ty("a")};
  CHECK(canonicalize(std::vector<Type>(once.begin(), once.end())) == once);
  CHECK(print(once) == "{a, b, a -> a}");
}

TEST_CASE("set terms drop alpha duplicates") {
  SetTerm s{term("x^a"), term("x^b"), term("x^a")};
  CHECK(s.size() == 2);
  CHECK(print(s) == "{x^a, x^b}");
  SetTerm l{term("\\x:{a}. x^a"), term("\\y:{a}. y^a")};
  CHECK(l.size() == 1);
}

TEST_CASE("type grammar") {
  Type t = ty("{a,b}->c");
  REQUIRE(t.is_arrow());
  CHECK(t.domain() == SetType{ty("a"), ty("b")});
  CHECK(t.codomain() == ty("c"));
  CHECK(ty("a -> b -> c") == ty("a -> (b -> c)"));
  CHECK_FALSE(ty("(a -> b) -> c") == ty("a -> b -> c"));
  CHECK(print(ty("{a} -> a")) == "a -> a");
  CHECK(print(ty("(a -> a) -> a")) == "(a -> a) -> a");
  CHECK(print(ty("{a -> a, a} -> a -> a")) == "{a, a -> a} -> a -> a");
  CHECK_THROWS_AS(parse_type("{} -> a"), ParseError);
  CHECK_THROWS_AS(parse_type("a ->"), ParseError);
}

TEST_CASE("type heights") {
  CHECK(ty("a").height() == 0);
  CHECK(ty("{a} -> a").height() == 1);
  CHECK(ty("{{a}->a, a} -> ({a}->a)").height() == 2);
  CHECK(SetType{}.height() == 0);
}

TEST_CASE("parse annotated terms") {
  MemTerm id = term("\\x:{a}. x^a");
  REQUIRE(id.is_lam());
  CHECK(id.binder() == SetType{ty("a")});
  CHECK(id.body().is_bound());
  CHECK(id.body().index() == 0);

  MemTerm self = term("\\x:{{a,b}->c, a, b}. x^({a,b}->c) {x^a, x^b}");
  REQUIRE(self.is_lam());
  CHECK(self.binder().size() == 3);
  REQUIRE(self.body().is_app());
  CHECK(self.body().arg().size() == 2);

  MemTerm w = term("y^b [z^a [w^b]]");
  REQUIRE(w.is_wrap());
  CHECK(w.head() == MemTerm::free("y", ty("b")));
  REQUIRE(w.payload().size() == 1);
  const MemTerm& inner = w.payload()[0];
  REQUIRE(inner.is_wrap());
  CHECK(inner.head() == MemTerm::free("z", ty("a")));
  CHECK(inner.payload()[0] == MemTerm::free("w", ty("b")));
  CHECK(w.weight() == 2);
}

TEST_CASE("wrappers bind tighter than application") {
  MemTerm t = term("f^(a -> b) x^a [p^c]");
  REQUIRE(t.is_app());
  CHECK(t.arg()[0].is_wrap());
  MemTerm u = term("(f^(a -> b) x^a) [p^c]");
  CHECK(u.is_wrap());
  MemTerm v = term("(\\x:{a}. x^a) [u^c] {y^a}");
  REQUIRE(v.is_app());
  CHECK(v.fun().is_wrap());
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_term("\\x:{a}.\n  x^");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_term("x"), ParseError);
  CHECK_THROWS_AS(parse_term("f^(a->b) {}"), ParseError);
  CHECK_THROWS_AS(parse_term("\\x:{}. y^a"), ParseError);
  CHECK_THROWS_AS(parse_untyped("(x"), ParseError);
}

TEST_CASE("alpha equality") {
  CHECK(term("\\x:{a}.x^a") == term("\\y:{a}.y^a"));
  CHECK_FALSE(term("\\x:{a}.x^a") == term("\\x:{b}.x^b"));
  CHECK(term("x^a") == term("x^a"));
  CHECK_FALSE(term("x^a") == term("x^b"));
  CHECK(parse_untyped("\\x. \\y. x y") == parse_untyped("\\u. \\v. u v"));
  CHECK_FALSE(parse_untyped("\\x. \\y. x y") == parse_untyped("\\x. \\y. y x"));
}

TEST_CASE("printing") {
  CHECK(print(term("x^a")) == "x^a");
  CHECK(print(term("x^(a->a)")) == "x^(a -> a)");
  CHECK(print(term("f^(a->a) {y^a}")) == "f^(a -> a) y^a");
  CHECK(print(term("f^(a->a) {g^(b->a) y^b}")) == "f^(a -> a) {g^(b -> a) y^b}");
  CHECK(print(term("(\\x:{a}.x^a){y^a}")) == "(\\x:{a}. x^a) y^a");
  CHECK(print(term("y^b [z^a [w^b]]")) == "y^b [z^a [w^b]]");
  CHECK(print(term("z^a [w^b] [z^a]")) == "z^a [w^b] [z^a]");
  // A bound name that collides with a free one is renamed.
  CHECK(print(term("\\x:{a}. y^(a->a) x^a")) == "\\x:{a}. y^(a -> a) x^a");
  MemTerm capture = MemTerm::lam_raw("y", SetType{ty("a")},
                                     MemTerm::app(MemTerm::free("y", ty("a -> a")),
                                                  SetTerm{MemTerm::bound(0, ty("a"))}));
  CHECK(print(capture) == "\\y1:{a}. y^(a -> a) y1^a");
  CHECK(parse_term(print(capture)) == capture);
  CHECK(print(parse_untyped("(\\x. x x) (\\x. x x)")) == "(\\x. x x) (\\x. x x)");
  CHECK(print(parse_untyped("f (g x) \\y. y")) == "f (g x) (\\y. y)");
}

TEST_CASE("parse and print round trip on fixed terms") {
  const char* terms[] = {
      "(\\x:{a}.y^b){(\\x:{b}.z^a) w^b}",
      "((\\x:{a}.\\y:{b}.x^a) z^a) w^b",
      "\\x:{{a,b}->c, a, b}. x^({a,b}->c) {x^a, x^b}",
      "((\\x:{a}.x^a)[u^c]) {y^a}",
      "\\x:{a}. \\x:{b}. x^b [x^b]",
      "(f^({a, b} -> c) {\\x:{a}. x^a, y^b}) [q^d, r^e]",
  };
  for (const char* s : terms) {
    MemTerm t = term(s);
    CAPTURE(s);
    CHECK(parse_term(print(t)) == t);
    CHECK(print(parse_term(print(t))) == print(t));
  }
}

TEST_CASE("round trip on random untyped terms") {
  std::mt19937_64 rng(7);
  std::function<UntypedTerm(int, int)> gen = [&](int depth, int binders) -> UntypedTerm {
    int c = static_cast<int>(rng() % 3);
    if (depth == 0 || c == 0) {
      if (binders > 0 && rng() % 2) return UntypedTerm::bound(static_cast<std::uint32_t>(rng() % binders));
      return UntypedTerm::free(std::string(1, static_cast<char>('a' + rng() % 3)));
    }
    if (c == 1) return UntypedTerm::lam_raw(rng() % 2 ? "a" : "x", gen(depth - 1, binders + 1));
    return UntypedTerm::app(gen(depth - 1, binders), gen(depth - 1, binders));
  };
  for (int i = 0; i < 300; ++i) {
    UntypedTerm t = gen(5, 0);
    CAPTURE(print(t));
    CHECK(parse_untyped(print(t)) == t);
  }
}

TEST_CASE("positions follow preorder") {
  MemTerm t = term("(\\x:{a}. x^a) {y^a}");
  auto ps = positions(t);
  REQUIRE(ps.size() == 4);
  CHECK(ps[0] == Position{});
  CHECK(ps[1] == Position{0});
  CHECK(ps[2] == Position{0, 0});
  CHECK(ps[3] == Position{1});
  CHECK(std::is_sorted(ps.begin(), ps.end()));
  CHECK(subterm_at(t, {1}) == term("y^a"));
  CHECK_THROWS_AS(subterm_at(t, {2}), InvalidPosition);
  CHECK(replace_at(t, {1}, term("z^a")) == term("(\\x:{a}. x^a) z^a"));
  CHECK(parse_position("0,2,1") == Position{0, 2, 1});
  CHECK(parse_position("[]") == Position{});
  CHECK(to_string(Position{1, 0}) == "[1,0]");
}

TEST_CASE("shift and instantiate") {
  MemTerm k = term("\\x:{a}. \\y:{b}. x^a");
  MemTerm inner = k.body();  // \y. #1
  CHECK(inner.loose() == 1);
  MemTerm r = instantiate(k.body(), SetTerm{term("z^a")});
  CHECK(r == term("\\y:{b}. z^a"));
  MemTerm open_body = open(k.body(), "q");
  CHECK(open_body == term("\\y:{b}. q^a"));
  CHECK(close(open_body, "q") == k.body());
  CHECK_THROWS_AS(instantiate(k.body(), SetTerm{term("z^b")}), MissingSubstituent);
}

TEST_CASE("wrapper lists") {
  MemTerm core = term("x^a");
  WrapperList l{SetTerm{term("p^b")}, SetTerm{term("q^c")}};
  MemTerm t = apply_wrappers(core, l);
  CHECK(t == term("x^a [p^b] [q^c]"));
  auto [c, back] = peel(t);
  CHECK(c == core);
  CHECK(back == l);
  CHECK(apply_wrappers(core, {}) == core);
}
