#include "nashdelta/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace nashdelta {

namespace {

ExprHandle make_node(ExprNode::Constant c) {
  return std::make_shared<const ExprNode>(ExprNode{c});
}
ExprHandle make_node(ExprNode::Variable v) {
  return std::make_shared<const ExprNode>(ExprNode{v});
}
ExprHandle make_node(ExprNode::Negate n) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(n)});
}
ExprHandle make_node(ExprNode::Binary b) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(b)});
}
ExprHandle make_node(ExprNode::Power p) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(p)});
}
ExprHandle make_node(ExprNode::Call c) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(c)});
}

struct Token {
  enum class Kind {
    number,
    ident,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    comma,
    end
  };
  Kind kind = Kind::end;
  std::size_t offset = 0;
  double number = 0.0;
  std::string text{};
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      return {Token::Kind::end, start};
    }
    char c = text_[pos_];
    switch (c) {
      case '+': ++pos_; return {Token::Kind::plus, start};
      case '-': ++pos_; return {Token::Kind::minus, start};
      case '*': ++pos_; return {Token::Kind::star, start};
      case '/': ++pos_; return {Token::Kind::slash, start};
      case '^': ++pos_; return {Token::Kind::caret, start};
      case '(': ++pos_; return {Token::Kind::lparen, start};
      case ')': ++pos_; return {Token::Kind::rparen, start};
      case ',': ++pos_; return {Token::Kind::comma, start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lex_number(start);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) ||
              text_[end] == '_')) {
        ++end;
      }
      Token t{Token::Kind::ident, start};
      t.text = std::string(text_.substr(start, end - start));
      pos_ = end;
      return t;
    }
    throw ParseError(ParseError::Code::syntax, start,
                     "unexpected character '" + std::string(1, c) +
                         "' at offset " + std::to_string(start));
  }

 private:
  Token lex_number(std::size_t start) {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) ||
            text_[end] == '.')) {
      ++end;
    }
    // optional exponent part
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) {
        ++exp;
      }
      if (exp < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        ++exp;
        while (exp < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[exp]))) {
          ++exp;
        }
        end = exp;
      }
    }
    std::string_view body = text_.substr(start, end - start);
    double value = 0.0;
    auto res = std::from_chars(body.data(), body.data() + body.size(), value);
    if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
      throw ParseError(ParseError::Code::syntax, start,
                       "malformed number at offset " + std::to_string(start));
    }
    Token t{Token::Kind::number, start};
    t.number = value;
    pos_ = end;
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  ExprHandle parse() {
    ExprHandle e = parse_expr();
    if (current_.kind != Token::Kind::end) {
      throw ParseError(ParseError::Code::syntax, current_.offset,
                       "unexpected trailing input at offset " +
                           std::to_string(current_.offset));
    }
    return e;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  ExprHandle parse_expr() {
    ExprHandle lhs = parse_term();
    while (current_.kind == Token::Kind::plus ||
           current_.kind == Token::Kind::minus) {
      BinaryOp op = current_.kind == Token::Kind::plus ? BinaryOp::add
                                                       : BinaryOp::sub;
      advance();
      ExprHandle rhs = parse_term();
      lhs = make_node(ExprNode::Binary{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprHandle parse_term() {
    ExprHandle lhs = parse_factor();
    while (current_.kind == Token::Kind::star ||
           current_.kind == Token::Kind::slash) {
      BinaryOp op = current_.kind == Token::Kind::star ? BinaryOp::mul
                                                       : BinaryOp::div;
      advance();
      ExprHandle rhs = parse_factor();
      lhs = make_node(ExprNode::Binary{op, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprHandle parse_factor() {
    ExprHandle base = parse_base();
    if (current_.kind == Token::Kind::caret) {
      advance();
      long long exponent = parse_integer_exponent();
      base = make_node(ExprNode::Power{std::move(base), exponent});
    }
    return base;
  }

  long long parse_integer_exponent() {
    bool negative = false;
    if (current_.kind == Token::Kind::minus) {
      negative = true;
      advance();
    }
    if (current_.kind != Token::Kind::number) {
      throw ParseError(ParseError::Code::syntax, current_.offset,
                       "expected integer exponent at offset " +
                           std::to_string(current_.offset));
    }
    double v = current_.number;
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw ParseError(ParseError::Code::syntax, current_.offset,
                       "exponent must be an integer literal at offset " +
                           std::to_string(current_.offset));
    }
    advance();
    long long e = static_cast<long long>(v);
    return negative ? -e : e;
  }

  ExprHandle parse_base() {
    switch (current_.kind) {
      case Token::Kind::number: {
        double v = current_.number;
        advance();
        return make_node(ExprNode::Constant{v});
      }
      case Token::Kind::minus: {
        advance();
        ExprHandle inner = parse_base();
        return make_node(ExprNode::Negate{std::move(inner)});
      }
      case Token::Kind::lparen: {
        advance();
        ExprHandle e = parse_expr();
        expect(Token::Kind::rparen, "')'");
        return e;
      }
      case Token::Kind::ident:
        return parse_ident();
      default:
        throw ParseError(ParseError::Code::syntax, current_.offset,
                         "expected number, variable, '(' or function at "
                         "offset " +
                             std::to_string(current_.offset));
    }
  }

  ExprHandle parse_ident() {
    std::string name = current_.text;
    std::size_t offset = current_.offset;
    advance();
    if (name == "s1") return make_node(ExprNode::Variable{VarId::s1});
    if (name == "s2") return make_node(ExprNode::Variable{VarId::s2});

    FuncId func;
    std::size_t arity;
    if (name == "min") {
      func = FuncId::min;
      arity = 2;
    } else if (name == "max") {
      func = FuncId::max;
      arity = 2;
    } else if (name == "abs") {
      func = FuncId::abs;
      arity = 1;
    } else {
      throw ParseError(ParseError::Code::unknown_identifier, offset,
                       "unknown identifier \"" + name + "\" at offset " +
                           std::to_string(offset));
    }
    expect(Token::Kind::lparen, "'('");
    std::vector<ExprHandle> args;
    args.push_back(parse_expr());
    while (current_.kind == Token::Kind::comma) {
      advance();
      args.push_back(parse_expr());
    }
    expect(Token::Kind::rparen, "')'");
    if (args.size() != arity) {
      throw ParseError(ParseError::Code::bad_arity, offset,
                       "function \"" + name + "\" takes " +
                           std::to_string(arity) + " argument(s), got " +
                           std::to_string(args.size()));
    }
    return make_node(ExprNode::Call{func, std::move(args)});
  }

  void expect(Token::Kind kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(ParseError::Code::syntax, current_.offset,
                       std::string("expected ") + what + " at offset " +
                           std::to_string(current_.offset));
    }
    advance();
  }

  Lexer lexer_;
  Token current_{Token::Kind::end, 0};
};

double eval_node(const ExprNode& node, double s1, double s2);

double integer_power(double base, long long exponent, double s1, double s2) {
  if (exponent < 0) {
    if (base == 0.0) {
      throw EvalError(s1, s2, "division by zero: 0 raised to a negative power");
    }
    return 1.0 / integer_power(base, -exponent, s1, s2);
  }
  double result = 1.0;
  double acc = base;
  long long e = exponent;
  while (e > 0) {
    if (e & 1) result *= acc;
    acc *= acc;
    e >>= 1;
  }
  return result;
}

double eval_node(const ExprNode& node, double s1, double s2) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExprNode::Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, ExprNode::Variable>) {
          return n.id == VarId::s1 ? s1 : s2;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return -eval_node(*n.operand, s1, s2);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          double lhs = eval_node(*n.lhs, s1, s2);
          double rhs = eval_node(*n.rhs, s1, s2);
          switch (n.op) {
            case BinaryOp::add: return lhs + rhs;
            case BinaryOp::sub: return lhs - rhs;
            case BinaryOp::mul: return lhs * rhs;
            case BinaryOp::div:
              if (rhs == 0.0) {
                std::ostringstream msg;
                msg << "division by zero at (s1, s2) = (" << s1 << ", " << s2
                    << ")";
                throw EvalError(s1, s2, msg.str());
              }
              return lhs / rhs;
          }
          return 0.0;  // unreachable
        } else if constexpr (std::is_same_v<T, ExprNode::Power>) {
          return integer_power(eval_node(*n.base, s1, s2), n.exponent, s1, s2);
        } else {
          static_assert(std::is_same_v<T, ExprNode::Call>);
          switch (n.func) {
            case FuncId::min:
              return std::min(eval_node(*n.args[0], s1, s2),
                              eval_node(*n.args[1], s1, s2));
            case FuncId::max:
              return std::max(eval_node(*n.args[0], s1, s2),
                              eval_node(*n.args[1], s1, s2));
            case FuncId::abs:
              return std::abs(eval_node(*n.args[0], s1, s2));
          }
          return 0.0;  // unreachable
        }
      },
      node.node);
}

std::string format_constant(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Precedence levels used by the printer: 0 additive, 1 multiplicative,
// 2 power, 3 atom.
int node_precedence(const ExprNode& node) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          return (n.op == BinaryOp::add || n.op == BinaryOp::sub) ? 0 : 1;
        } else if constexpr (std::is_same_v<T, ExprNode::Power>) {
          return 2;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return 2;  // prints as a "-" prefixed base
        } else {
          return 3;
        }
      },
      node.node);
}

void print_node(const ExprNode& node, std::string& out);

void print_child(const ExprNode& child, int min_precedence, std::string& out) {
  if (node_precedence(child) < min_precedence) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

void print_node(const ExprNode& node, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExprNode::Constant>) {
          out += format_constant(n.value);
        } else if constexpr (std::is_same_v<T, ExprNode::Variable>) {
          out += n.id == VarId::s1 ? "s1" : "s2";
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          out += '-';
          // The operand of unary minus must itself be a base: an atom or
          // another negation. A power operand in particular needs parens,
          // since "-x^2" reads as (-x)^2.
          const bool operand_is_base =
              node_precedence(*n.operand) == 3 ||
              std::holds_alternative<ExprNode::Negate>(n.operand->node);
          if (operand_is_base) {
            print_node(*n.operand, out);
          } else {
            out += '(';
            print_node(*n.operand, out);
            out += ')';
          }
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          const bool additive = n.op == BinaryOp::add || n.op == BinaryOp::sub;
          const int prec = additive ? 0 : 1;
          print_child(*n.lhs, prec, out);
          switch (n.op) {
            case BinaryOp::add: out += " + "; break;
            case BinaryOp::sub: out += " - "; break;
            case BinaryOp::mul: out += " * "; break;
            case BinaryOp::div: out += " / "; break;
          }
          // left associativity: the right operand needs one level more
          print_child(*n.rhs, prec + 1, out);
        } else if constexpr (std::is_same_v<T, ExprNode::Power>) {
          print_child(*n.base, 3, out);
          out += '^';
          out += std::to_string(n.exponent);
        } else {
          static_assert(std::is_same_v<T, ExprNode::Call>);
          switch (n.func) {
            case FuncId::min: out += "min("; break;
            case FuncId::max: out += "max("; break;
            case FuncId::abs: out += "abs("; break;
          }
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i > 0) out += ", ";
            print_node(*n.args[i], out);
          }
          out += ')';
        }
      },
      node.node);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, ExprNode::Constant>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, ExprNode::Variable>) {
          return lhs.id == rhs.id;
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          return nodes_equal(*lhs.operand, *rhs.operand);
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          return lhs.op == rhs.op && nodes_equal(*lhs.lhs, *rhs.lhs) &&
                 nodes_equal(*lhs.rhs, *rhs.rhs);
        } else if constexpr (std::is_same_v<T, ExprNode::Power>) {
          return lhs.exponent == rhs.exponent &&
                 nodes_equal(*lhs.base, *rhs.base);
        } else {
          static_assert(std::is_same_v<T, ExprNode::Call>);
          if (lhs.func != rhs.func || lhs.args.size() != rhs.args.size()) {
            return false;
          }
          for (std::size_t i = 0; i < lhs.args.size(); ++i) {
            if (!nodes_equal(*lhs.args[i], *rhs.args[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

std::optional<AffineForm> affine_of(const ExprNode& node) {
  return std::visit(
      [](const auto& n) -> std::optional<AffineForm> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ExprNode::Constant>) {
          return AffineForm{n.value, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, ExprNode::Variable>) {
          return n.id == VarId::s1 ? AffineForm{0.0, 1.0, 0.0}
                                   : AffineForm{0.0, 0.0, 1.0};
        } else if constexpr (std::is_same_v<T, ExprNode::Negate>) {
          auto a = affine_of(*n.operand);
          if (!a) return std::nullopt;
          return AffineForm{-a->c0, -a->c1, -a->c2};
        } else if constexpr (std::is_same_v<T, ExprNode::Binary>) {
          if (n.op == BinaryOp::div) return std::nullopt;
          auto a = affine_of(*n.lhs);
          auto b = affine_of(*n.rhs);
          if (!a || !b) return std::nullopt;
          switch (n.op) {
            case BinaryOp::add:
              return AffineForm{a->c0 + b->c0, a->c1 + b->c1, a->c2 + b->c2};
            case BinaryOp::sub:
              return AffineForm{a->c0 - b->c0, a->c1 - b->c1, a->c2 - b->c2};
            case BinaryOp::mul: {
              const bool a_const = a->c1 == 0.0 && a->c2 == 0.0;
              const bool b_const = b->c1 == 0.0 && b->c2 == 0.0;
              if (a_const) {
                return AffineForm{a->c0 * b->c0, a->c0 * b->c1, a->c0 * b->c2};
              }
              if (b_const) {
                return AffineForm{b->c0 * a->c0, b->c0 * a->c1, b->c0 * a->c2};
              }
              return std::nullopt;  // variable * variable
            }
            default:
              return std::nullopt;
          }
        } else {
          // Power, Call: structurally non-affine.
          return std::nullopt;
        }
      },
      node.node);
}

}  // namespace

ValueExpr ValueExpr::parse(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
    ++i;
  }
  if (i == text.size()) {
    throw ParseError(ParseError::Code::syntax, 0, "empty expression");
  }
  Parser parser(text);
  return ValueExpr(parser.parse());
}

double ValueExpr::eval(double s1, double s2) const {
  if (!root_) throw std::logic_error("eval on empty ValueExpr");
  return eval_node(*root_, s1, s2);
}

std::string ValueExpr::unparse() const {
  if (!root_) throw std::logic_error("unparse on empty ValueExpr");
  std::string out;
  print_node(*root_, out);
  return out;
}

bool ValueExpr::structurally_equal(const ValueExpr& other) const {
  if (!root_ || !other.root_) return root_ == other.root_;
  return nodes_equal(*root_, *other.root_);
}

ValueExpr ValueExpr::constant(double value) {
  return ValueExpr(make_node(ExprNode::Constant{value}));
}

ValueExpr ValueExpr::variable(VarId id) {
  return ValueExpr(make_node(ExprNode::Variable{id}));
}

ValueExpr ValueExpr::negate(ValueExpr operand) {
  if (!operand.valid()) throw std::invalid_argument("negate: empty operand");
  return ValueExpr(make_node(ExprNode::Negate{operand.root_}));
}

ValueExpr ValueExpr::binary(BinaryOp op, ValueExpr lhs, ValueExpr rhs) {
  if (!lhs.valid() || !rhs.valid()) {
    throw std::invalid_argument("binary: empty operand");
  }
  return ValueExpr(make_node(ExprNode::Binary{op, lhs.root_, rhs.root_}));
}

ValueExpr ValueExpr::power(ValueExpr base, long long exponent) {
  if (!base.valid()) throw std::invalid_argument("power: empty base");
  return ValueExpr(make_node(ExprNode::Power{base.root_, exponent}));
}

ValueExpr ValueExpr::call(FuncId func, std::vector<ValueExpr> args) {
  const std::size_t arity = func == FuncId::abs ? 1 : 2;
  if (args.size() != arity) {
    throw std::invalid_argument("call: wrong function arity");
  }
  std::vector<ExprHandle> handles;
  handles.reserve(args.size());
  for (auto& a : args) {
    if (!a.valid()) throw std::invalid_argument("call: empty argument");
    handles.push_back(a.root_);
  }
  return ValueExpr(make_node(ExprNode::Call{func, std::move(handles)}));
}

ValueExpr parse_value_expr(std::string_view text) {
  return ValueExpr::parse(text);
}

double eval_value_expr(const ValueExpr& expr, double s1, double s2) {
  return expr.eval(s1, s2);
}

std::optional<AffineForm> affine_form(const ValueExpr& expr) {
  if (!expr.valid()) return std::nullopt;
  return affine_of(*expr.root());
}

}  // namespace nashdelta
