#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qobjsim/common/json.hpp"

namespace qobjsim::ham {

/// Subsystem index attached to an operator, channel or variable: either a
/// literal or the bound variable of an enclosing SUM.
using Index = std::variant<int, std::string>;

enum class OperatorKind { X, Y, Z, Sp, Sm, O, Lower, Raise, Number };

const char* to_string(OperatorKind k);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Const {
    double value;
  };
  struct Var {
    std::string base;            // "v" for v{i}, "wb" for a bare name
    std::optional<Index> index;  // resolved name is base + index when present
  };
  struct ChannelRef {
    char kind;  // 'D', 'U' or 'M'
    Index index;
  };
  struct Operator {
    OperatorKind kind;
    // Bare ladder operators (the §6-style bus terms) carry no index and
    // resolve to the unique oscillator subsystem at evaluation time.
    std::optional<Index> subsystem;
  };
  struct Product {
    std::vector<ExprPtr> factors;
  };
  struct Sum {
    std::vector<ExprPtr> terms;
  };
  struct SumMacro {
    std::string var;
    std::variant<int, std::string> lo;
    std::variant<int, std::string> hi;  // "N" reads as n_qubits - 1
    ExprPtr body;
  };
  struct Nonlinear {
    std::string fn;  // cos, sin, sqrt, abs, exp
    std::vector<ExprPtr> args;
  };
  struct Negate {
    ExprPtr arg;
  };

  using Node = std::variant<Const, Var, ChannelRef, Operator, Product, Sum, SumMacro,
                            Nonlinear, Negate>;
  Node node;
};

ExprPtr make_expr(Expr::Node node);

/// Debug dump of the tree.
Json expr_to_json(const ExprPtr& e);

/// Parse failure with the column it happened at and what was expected there.
class DslError : public std::runtime_error {
public:
  DslError(size_t column, std::string expected, std::string detail)
      : std::runtime_error("column " + std::to_string(column) + ": " + detail +
                           " (expected " + expected + ")"),
        column_(column),
        expected_(std::move(expected)) {}

  size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

private:
  size_t column_;
  std::string expected_;
};

/// Parse one h_str term string.
ExprPtr parse_hstr_term(const std::string& term);

/// Parse a full h_str list; the failing term's position is prefixed to the
/// error text.
std::vector<ExprPtr> parse_hstr(const std::vector<std::string>& terms);

}  // namespace qobjsim::ham
