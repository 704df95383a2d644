#include "isect/parse.hpp"

#include <cctype>
#include <vector>

#include "isect/errors.hpp"

namespace isect {
namespace {

enum class Tok { Ident, Lambda, Dot, Colon, Caret, LBrace, RBrace, LParen, RParen, LBrack, RBrack, Comma, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '\\': k = Tok::Lambda; break;
      case '.': k = Tok::Dot; break;
      case ':': k = Tok::Colon; break;
      case '^': k = Tok::Caret; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Tok::End ? " (end of input)" : ", found '" + t.text + "'"),
                     t.line, t.col);
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return next();
  }
  void finish() {
    if (!at(Tok::End)) fail("trailing input");
  }

  // ---- types
  Type type() {
    if (at(Tok::LBrace)) {
      SetType dom = braced_types();
      expect(Tok::Arrow, "'->' after a set of types");
      if (dom.empty()) fail("empty arrow domain");
      return Type::arrow(std::move(dom), type());
    }
    Type a = type_atom();
    if (at(Tok::Arrow)) {
      next();
      return Type::arrow(SetType::singleton(std::move(a)), type());
    }
    return a;
  }

  Type type_atom() {
    if (at(Tok::Ident)) return Type::base(next().text);
    if (at(Tok::LParen)) {
      next();
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  SetType braced_types() {
    expect(Tok::LBrace, "'{'");
    std::vector<Type> ts;
    if (!at(Tok::RBrace)) {
      ts.push_back(type());
      while (at(Tok::Comma)) {
        next();
        ts.push_back(type());
      }
    }
    expect(Tok::RBrace, "'}'");
    return SetType(std::move(ts));
  }

  SetType set_type() {
    if (at(Tok::LBrace)) {
      SetType s = braced_types();
      if (!at(Tok::Arrow)) return s;
      next();
      if (s.empty()) fail("empty arrow domain");
      return SetType::singleton(Type::arrow(std::move(s), type()));
    }
    return SetType::singleton(type());
  }

  // ---- untyped terms
  UntypedTerm uterm() {
    if (at(Tok::Lambda)) {
      next();
      std::string x = expect(Tok::Ident, "variable").text;
      expect(Tok::Dot, "'.'");
      scope_.push_back(x);
      UntypedTerm body = uterm();
      scope_.pop_back();
      return UntypedTerm::lam_raw(x, std::move(body));
    }
    UntypedTerm f = uatom();
    while (true) {
      if (at(Tok::Ident) || at(Tok::LParen)) {
        f = UntypedTerm::app(std::move(f), uatom());
      } else if (at(Tok::Lambda)) {
        f = UntypedTerm::app(std::move(f), uterm());
        break;
      } else {
        break;
      }
    }
    return f;
  }

  UntypedTerm uatom() {
    if (at(Tok::Ident)) {
      std::string x = next().text;
      if (auto i = lookup(x)) return UntypedTerm::bound(*i);
      return UntypedTerm::free(x);
    }
    if (at(Tok::LParen)) {
      next();
      UntypedTerm t = uterm();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a term");
  }

  // ---- annotated terms
  MemTerm aterm() {
    if (at(Tok::Lambda)) {
      const Token& lt = next();
      std::string x = expect(Tok::Ident, "variable").text;
      expect(Tok::Colon, "':' after the bound variable");
      SetType binder = set_type();
      if (binder.empty()) throw ParseError("empty binder type", lt.line, lt.col);
      expect(Tok::Dot, "'.'");
      scope_.push_back(x);
      MemTerm body = aterm();
      scope_.pop_back();
      return MemTerm::lam_raw(x, std::move(binder), std::move(body));
    }
    MemTerm f = postfix();
    while (true) {
      if (at(Tok::LBrace)) {
        const Token& bt = peek();
        SetTerm arg = braced_terms();
        if (arg.empty()) throw ParseError("empty application argument", bt.line, bt.col);
        f = MemTerm::app(std::move(f), std::move(arg));
      } else if (at(Tok::Ident) || at(Tok::LParen)) {
        f = MemTerm::app(std::move(f), SetTerm::singleton(postfix()));
      } else if (at(Tok::Lambda)) {
        f = MemTerm::app(std::move(f), SetTerm::singleton(aterm()));
        break;
      } else {
        break;
      }
    }
    return f;
  }

  MemTerm postfix() {
    MemTerm t = atom();
    while (at(Tok::LBrack)) {
      next();
      std::vector<MemTerm> items;
      if (!at(Tok::RBrack)) items = term_list();
      expect(Tok::RBrack, "']'");
      t = MemTerm::wrap(std::move(t), SetTerm(std::move(items)));
    }
    return t;
  }

  MemTerm atom() {
    if (at(Tok::Ident)) {
      std::string x = next().text;
      expect(Tok::Caret, "'^' annotation on a variable");
      Type a = type_atom();
      if (auto i = lookup(x)) return MemTerm::bound(*i, std::move(a));
      return MemTerm::free(x, std::move(a));
    }
    if (at(Tok::LParen)) {
      next();
      MemTerm t = aterm();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a term");
  }

  std::vector<MemTerm> term_list() {
    std::vector<MemTerm> items{aterm()};
    while (at(Tok::Comma)) {
      next();
      items.push_back(aterm());
    }
    return items;
  }

  SetTerm braced_terms() {
    expect(Tok::LBrace, "'{'");
    std::vector<MemTerm> items;
    if (!at(Tok::RBrace)) items = term_list();
    expect(Tok::RBrace, "'}'");
    return SetTerm(std::move(items));
  }

  SetTerm set_term() {
    if (at(Tok::LBrace)) return braced_terms();
    return SetTerm::singleton(aterm());
  }

 private:
  std::optional<std::uint32_t> lookup(const std::string& x) const {
    for (std::size_t k = scope_.size(); k-- > 0;)
      if (scope_[k] == x) return static_cast<std::uint32_t>(scope_.size() - 1 - k);
    return std::nullopt;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Type parse_type(std::string_view text) {
  Parser p(text);
  Type t = p.type();
  p.finish();
  return t;
}

SetType parse_set_type(std::string_view text) {
  Parser p(text);
  SetType s = p.set_type();
  p.finish();
  return s;
}

UntypedTerm parse_untyped(std::string_view text) {
  Parser p(text);
  UntypedTerm t = p.uterm();
  p.finish();
  return t;
}

MemTerm parse_term(std::string_view text) {
  Parser p(text);
  MemTerm t = p.aterm();
  p.finish();
  return t;
}

SetTerm parse_set_term(std::string_view text) {
  Parser p(text);
  SetTerm s = p.set_term();
  p.finish();
  return s;
}

}  // namespace isect
