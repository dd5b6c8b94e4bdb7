#ifndef NASHDELTA_EXPR_HPP
#define NASHDELTA_EXPR_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nashdelta {

enum class VarId { s1, s2 };
enum class BinaryOp { add, sub, mul, div };
enum class FuncId { min, max, abs };

struct ExprNode;
using ExprHandle = std::shared_ptr<const ExprNode>;

/// One node of a parsed value-function expression. Nodes are immutable and
/// shared; a whole tree can be copied by copying the root handle.
struct ExprNode {
  struct Constant {
    double value;
  };
  struct Variable {
    VarId id;
  };
  struct Negate {
    ExprHandle operand;
  };
  struct Binary {
    BinaryOp op;
    ExprHandle lhs;
    ExprHandle rhs;
  };
  struct Power {
    ExprHandle base;
    long long exponent;  // integer-literal exponents only
  };
  struct Call {
    FuncId func;
    std::vector<ExprHandle> args;  // min/max take 2, abs takes 1
  };

  std::variant<Constant, Variable, Negate, Binary, Power, Call> node;
};

/// Raised when an expression string cannot be parsed. `offset()` is the
/// 0-based character position the parser was looking at.
class ParseError : public std::runtime_error {
 public:
  enum class Code { syntax, unknown_identifier, bad_arity };

  ParseError(Code code, std::size_t offset, const std::string& message)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  Code code() const { return code_; }
  std::size_t offset() const { return offset_; }

 private:
  Code code_;
  std::size_t offset_;
};

/// Raised when evaluation divides by zero at a concrete point.
class EvalError : public std::runtime_error {
 public:
  EvalError(double s1, double s2, const std::string& message)
      : std::runtime_error(message), s1_(s1), s2_(s2) {}

  double s1() const { return s1_; }
  double s2() const { return s2_; }

 private:
  double s1_;
  double s2_;
};

/// Arithmetic expression over the outcome variables s1 and s2.
///
/// Grammar (whitespace insignificant, UTF-8):
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := base ("^" integer)?
///   base   := number | "s1" | "s2" | "(" expr ")" | "-" base
///           | ident "(" expr ("," expr)* ")"     with ident in {min, max, abs}
class ValueExpr {
 public:
  ValueExpr() = default;

  static ValueExpr parse(std::string_view text);

  double eval(double s1, double s2) const;

  /// Canonical text form; parsing it back yields a structurally identical
  /// tree.
  std::string unparse() const;

  bool structurally_equal(const ValueExpr& other) const;

  // Programmatic builders.
  static ValueExpr constant(double value);
  static ValueExpr variable(VarId id);
  static ValueExpr negate(ValueExpr operand);
  static ValueExpr binary(BinaryOp op, ValueExpr lhs, ValueExpr rhs);
  static ValueExpr power(ValueExpr base, long long exponent);
  static ValueExpr call(FuncId func, std::vector<ValueExpr> args);

  bool valid() const { return root_ != nullptr; }
  const ExprHandle& root() const { return root_; }

 private:
  explicit ValueExpr(ExprHandle root) : root_(std::move(root)) {}

  ExprHandle root_;
};

ValueExpr parse_value_expr(std::string_view text);
double eval_value_expr(const ValueExpr& expr, double s1, double s2);

/// Affine view c0 + c1*s1 + c2*s2 of an expression. Available only when the
/// tree is structurally affine: no div, pow, min, max or abs nodes, and no
/// product of two variable-bearing subtrees.
struct AffineForm {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double eval(double s1, double s2) const { return c0 + c1 * s1 + c2 * s2; }
};

std::optional<AffineForm> affine_form(const ValueExpr& expr);

}  // namespace nashdelta

#endif
