#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "isect/position.hpp"

namespace isect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

class NotTypable : public Error {
 public:
  NotTypable(Position pos, std::string why)
      : Error("not typable at " + to_string(pos) + ": " + why),
        position(std::move(pos)),
        reason(std::move(why)) {}
  Position position;
  std::string reason;
};

class UnboundOrWrongAnnotation : public Error {
 public:
  UnboundOrWrongAnnotation(std::string var, std::string annotation)
      : Error("occurrence " + var + "^" + annotation + " not allowed by the context"),
        variable(std::move(var)),
        annotation(std::move(annotation)) {}
  std::string variable;
  std::string annotation;
};

class InvalidDerivation : public Error {
 public:
  InvalidDerivation(std::vector<std::size_t> path, std::string rule_name, std::string why)
      : Error("invalid " + rule_name + " node at " + path_string(path) + ": " + why),
        node_path(std::move(path)),
        rule(std::move(rule_name)),
        reason(std::move(why)) {}
  std::vector<std::size_t> node_path;
  std::string rule;
  std::string reason;

 private:
  static std::string path_string(const std::vector<std::size_t>& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
  }
};

class NotUniform : public Error {
 public:
  explicit NotUniform(Position pos)
      : Error("term is not uniform at " + to_string(pos)), position(std::move(pos)) {}
  Position position;
};

class MissingSubstituent : public Error {
 public:
  explicit MissingSubstituent(std::string type_text)
      : Error("no substituent of type " + type_text), type(std::move(type_text)) {}
  std::string type;
};

class NotARedex : public Error {
 public:
  explicit NotARedex(Position pos, const std::string& why = "no redex here")
      : Error(why + " at " + to_string(pos)), position(std::move(pos)) {}
  Position position;
};

class InvalidPosition : public Error {
 public:
  explicit InvalidPosition(Position pos)
      : Error("position " + to_string(pos) + " does not resolve"), position(std::move(pos)) {}
  Position position;
};

class IllTyped : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class FuelExhausted : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class NotSNWithinFuel : public Error {
 public:
  using Error::Error;
};

// Raised when an internal post-condition fails. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace isect
