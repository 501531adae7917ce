#pragma once

// The problem-file language:
//
//   # comment
//   ring Z/12;            # Z | Z/<N> | F2[y]/y^<r> | Z_(<p>)
//   vars Y X;             # first listed is lex-greatest
//   rank 2;               # optional, default 1
//   g1 = [Y^2 - X + 3, 0];
//   g2 = [4*X^2 - 4, 6*X];
//
// Polynomials use + - * ^ / and parentheses.  Division is allowed only by
// constants that are units of the ring.  Over F2[y]/y^r the name y denotes
// the nilpotent generator.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bezout/errors.hpp"
#include "bezout/poly.hpp"

namespace bezout {

class ParseError : public UsageError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : UsageError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

struct ProblemFile {
  Ring ring = Ring::integers();
  std::vector<std::string> vars;
  std::size_t rank = 1;
  OrderPtr order;  // TOP over lex, first variable greatest
  std::vector<std::pair<std::string, ModuleVector>> generators;

  std::vector<ModuleVector> vectors() const;
};

ProblemFile parse_problem(std::string_view text);
Ring parse_ring(std::string_view spec);

// A single vector literal in the given ambient, under the default order.
ModuleVector parse_vector(std::string_view text, const Ring& ring, const std::vector<std::string>& vars,
                          std::size_t rank);
ModuleVector parse_vector(std::string_view text, const ProblemFile& problem);

}  // namespace bezout
