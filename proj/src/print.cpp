#include "isect/print.hpp"

#include <vector>

namespace isect {
namespace {

std::string print_annot(const Type& t) {
  return t.is_base() ? t.name() : "(" + print(t) + ")";
}

// Bound names are chosen against the free names of the whole term and the
// names already in scope, so printing never captures.
class TermPrinter {
 public:
  explicit TermPrinter(std::vector<std::string> taken) : taken_(std::move(taken)) {}

  std::string term(const MemTerm& t) {
    switch (t.kind()) {
      case MemTerm::Kind::Var:
        return var_name(t) + "^" + print_annot(t.annot());
      case MemTerm::Kind::Lam: {
        std::string x = bind(t.name());
        std::string out = "\\" + x + ":" + print(t.binder()) + ". " + term(t.body());
        unbind();
        return out;
      }
      case MemTerm::Kind::App: {
        std::string f = t.fun().is_lam() ? "(" + term(t.fun()) + ")" : term(t.fun());
        return f + " " + argument(t.arg());
      }
      case MemTerm::Kind::Wrap: {
        const MemTerm& h = t.head();
        std::string head = h.is_app() || h.is_lam() ? "(" + term(h) + ")" : term(h);
        return head + " [" + elements(t.payload()) + "]";
      }
    }
    return {};
  }

  std::string set(const SetTerm& s) { return "{" + elements(s) + "}"; }

 private:
  std::string argument(const SetTerm& s) {
    if (s.size() == 1 && (s[0].is_var() || s[0].is_wrap())) return term(s[0]);
    return set(s);
  }

  std::string elements(const SetTerm& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ", ";
      out += term(s[i]);
    }
    return out;
  }

  std::string var_name(const MemTerm& v) {
    if (!v.is_bound()) return v.name();
    if (v.index() >= scope_.size()) return "#" + std::to_string(v.index());
    return scope_[scope_.size() - 1 - v.index()];
  }

  std::string bind(const std::string& hint) {
    std::vector<std::string> taken = taken_;
    taken.insert(taken.end(), scope_.begin(), scope_.end());
    scope_.push_back(fresh_name(hint, taken));
    return scope_.back();
  }
  void unbind() { scope_.pop_back(); }

  std::vector<std::string> taken_;
  std::vector<std::string> scope_;
};

class UntypedPrinter {
 public:
  explicit UntypedPrinter(std::vector<std::string> taken) : taken_(std::move(taken)) {}

  std::string term(const UntypedTerm& t) {
    switch (t.kind()) {
      case UntypedTerm::Kind::Var:
        if (!t.is_bound()) return t.name();
        if (t.index() >= scope_.size()) return "#" + std::to_string(t.index());
        return scope_[scope_.size() - 1 - t.index()];
      case UntypedTerm::Kind::Lam: {
        std::vector<std::string> taken = taken_;
        taken.insert(taken.end(), scope_.begin(), scope_.end());
        scope_.push_back(fresh_name(t.name(), taken));
        std::string out = "\\" + scope_.back() + ". " + term(t.body());
        scope_.pop_back();
        return out;
      }
      case UntypedTerm::Kind::App: {
        std::string f = t.fun().is_lam() ? "(" + term(t.fun()) + ")" : term(t.fun());
        std::string a = t.arg().is_var() ? term(t.arg()) : "(" + term(t.arg()) + ")";
        return f + " " + a;
      }
    }
    return {};
  }

 private:
  std::vector<std::string> taken_;
  std::vector<std::string> scope_;
};

}  // namespace

std::string print(const Type& t) {
  if (t.is_base()) return t.name();
  const SetType& d = t.domain();
  std::string dom;
  if (d.size() == 1)
    dom = d[0].is_arrow() ? "(" + print(d[0]) + ")" : d[0].name();
  else
    dom = print(d);
  return dom + " -> " + print(t.codomain());
}

std::string print(const SetType& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += print(s[i]);
  }
  return out + "}";
}

std::string print(const UntypedTerm& t) { return UntypedPrinter(free_names(t)).term(t); }

std::string print(const MemTerm& t) { return TermPrinter(free_names(t)).term(t); }

std::string print(const SetTerm& s) {
  std::vector<std::string> taken;
  for (const auto& e : s) {
    auto f = free_names(e);
    taken.insert(taken.end(), f.begin(), f.end());
  }
  return TermPrinter(std::move(taken)).set(s);
}

}  // namespace isect
