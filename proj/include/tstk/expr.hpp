#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "tstk/fields.hpp"

namespace tstk {

class ParseError : public DomainError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : DomainError(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

class EvalError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Value plus first partials with respect to x0 .. x5.
struct Jet {
  cplx v = 0.0;
  std::array<cplx, kMaxDim> d{};
};

// Scalar field expression, see docs/expressions.md for the grammar.
class FieldExpr {
 public:
  struct Node;

  static FieldExpr parse(std::string_view source);

  cplx eval(std::span<const double> x) const { return eval_jet(x).v; }
  Jet eval_jet(std::span<const double> x) const;
  // Values and exact first partials on every grid point.
  ScalarField evaluate(const TorusGrid& grid) const;
  std::string to_string() const;
  // Highest coordinate index referenced, -1 if none.
  int max_coordinate() const;

 private:
  std::shared_ptr<const Node> root_;
};

}  // namespace tstk
