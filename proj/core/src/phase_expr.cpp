#include "wavemom/phase_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "wavemom/errors.hpp"

namespace wavemom {
namespace detail {

enum class Var { Px, Py, Pz, Pperp, PhiP };

struct Node {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Sqrt, Atan2 };
  Kind kind;
  double number = 0;
  Var var = Var::Px;
  int exponent = 0;
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Number;
  n->number = v;
  return n;
}
NodePtr make_var(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  n->var = v;
  return n;
}
NodePtr make_unary(Node::Kind k, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return n;
}
NodePtr make_binary(Node::Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
NodePtr make_pow(NodePtr base, int e) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Pow;
  n->a = std::move(base);
  n->exponent = e;
  return n;
}

//==============================================================================
// Tokenizer / recursive-descent parser. Total on any input: every failure is
// a SyntaxError carrying the byte offset.

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Type type;
  std::size_t offset;
  double number = 0;
  std::string ident;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) { advance(); }
  const Token &peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::Type::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
    case '+': tok_.type = Token::Type::Plus; ++pos_; return;
    case '-': tok_.type = Token::Type::Minus; ++pos_; return;
    case '*': tok_.type = Token::Type::Star; ++pos_; return;
    case '/': tok_.type = Token::Type::Slash; ++pos_; return;
    case '^': tok_.type = Token::Type::Caret; ++pos_; return;
    case '(': tok_.type = Token::Type::LParen; ++pos_; return;
    case ')': tok_.type = Token::Type::RParen; ++pos_; return;
    case ',': tok_.type = Token::Type::Comma; ++pos_; return;
    default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char *begin = src_.c_str() + pos_;
      char *end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin || !std::isfinite(v))
        throw SyntaxError(pos_, "number", "invalid numeric literal at offset " + std::to_string(pos_));
      tok_.type = Token::Type::Number;
      tok_.number = v;
      pos_ += static_cast<std::size_t>(end - begin);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t e = pos_;
      while (e < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[e])) || src_[e] == '_'))
        ++e;
      tok_.type = Token::Type::Ident;
      tok_.ident = src_.substr(pos_, e - pos_);
      pos_ = e;
      return;
    }
    throw SyntaxError(pos_, "token", std::string("unexpected character '") + c +
                                         "' at offset " + std::to_string(pos_));
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
public:
  Parser(const std::string &src, const std::map<std::string, double> &params)
      : lex_(src), params_(params) {}

  NodePtr parse() {
    NodePtr e = expression();
    if (lex_.peek().type != Token::Type::End)
      fail("end of input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &expected) {
    const auto &t = lex_.peek();
    throw SyntaxError(t.offset, expected,
                      "expected " + expected + " at offset " + std::to_string(t.offset));
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      const auto t = lex_.peek().type;
      if (t == Token::Type::Plus) {
        lex_.take();
        e = make_binary(Node::Kind::Add, e, term());
      } else if (t == Token::Type::Minus) {
        lex_.take();
        e = make_binary(Node::Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  NodePtr term() {
    NodePtr e = factor();
    for (;;) {
      const auto t = lex_.peek().type;
      if (t == Token::Type::Star) {
        lex_.take();
        e = make_binary(Node::Kind::Mul, e, factor());
      } else if (t == Token::Type::Slash) {
        lex_.take();
        e = make_binary(Node::Kind::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  NodePtr factor() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      NodePtr operand = factor();
      // fold into the literal so printed negative numbers round-trip exactly
      if (operand->kind == Node::Kind::Number)
        return make_number(-operand->number);
      return make_unary(Node::Kind::Neg, operand);
    }
    if (lex_.peek().type == Token::Type::Plus) {
      lex_.take();
      return factor();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (lex_.peek().type != Token::Type::Caret)
      return base;
    lex_.take();
    // Integer exponents only: keeps differentiation closed-form and avoids
    // branch cuts.
    bool neg = false;
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      neg = true;
    }
    if (lex_.peek().type != Token::Type::Number)
      fail("integer exponent");
    const Token t = lex_.take();
    const double v = t.number;
    if (v != std::floor(v) || std::fabs(v) > 64)
      throw SyntaxError(t.offset, "integer exponent",
                        "exponent must be an integer in [-64, 64], at offset " +
                            std::to_string(t.offset));
    return make_pow(base, static_cast<int>(neg ? -v : v));
  }

  NodePtr atom() {
    const Token t = lex_.peek();
    switch (t.type) {
    case Token::Type::Number:
      lex_.take();
      return make_number(t.number);
    case Token::Type::LParen: {
      lex_.take();
      NodePtr e = expression();
      if (lex_.peek().type != Token::Type::RParen)
        fail("')'");
      lex_.take();
      return e;
    }
    case Token::Type::Ident: {
      lex_.take();
      const std::string &name = t.ident;
      if (name == "p_x") return make_var(Var::Px);
      if (name == "p_y") return make_var(Var::Py);
      if (name == "p_z") return make_var(Var::Pz);
      if (name == "p_perp") return make_var(Var::Pperp);
      if (name == "phi_p") return make_var(Var::PhiP);
      if (name == "sin" || name == "cos" || name == "sqrt" || name == "atan2") {
        if (lex_.peek().type != Token::Type::LParen)
          fail("'(' after function name");
        lex_.take();
        NodePtr a = expression();
        if (name == "atan2") {
          if (lex_.peek().type != Token::Type::Comma)
            fail("',' between atan2 arguments");
          lex_.take();
          NodePtr b = expression();
          if (lex_.peek().type != Token::Type::RParen)
            fail("')'");
          lex_.take();
          return make_binary(Node::Kind::Atan2, a, b);
        }
        if (lex_.peek().type != Token::Type::RParen)
          fail("')'");
        lex_.take();
        if (name == "sin") return make_unary(Node::Kind::Sin, a);
        if (name == "cos") return make_unary(Node::Kind::Cos, a);
        return make_unary(Node::Kind::Sqrt, a);
      }
      // Anything else is a parameter, folded to its numeric value here.
      auto it = params_.find(name);
      if (it == params_.end())
        throw UnboundParameter(name);
      return make_number(it->second);
    }
    default:
      fail("expression");
    }
  }

  Lexer lex_;
  const std::map<std::string, double> &params_;
};

//==============================================================================
// Forward-mode dual number over a fixed 3-dimensional tangent.

struct Dual {
  double v = 0, gx = 0, gy = 0, gz = 0;
};

Dual operator+(const Dual &a, const Dual &b) {
  return {a.v + b.v, a.gx + b.gx, a.gy + b.gy, a.gz + b.gz};
}
Dual operator-(const Dual &a, const Dual &b) {
  return {a.v - b.v, a.gx - b.gx, a.gy - b.gy, a.gz - b.gz};
}
Dual operator-(const Dual &a) { return {-a.v, -a.gx, -a.gy, -a.gz}; }
Dual operator*(const Dual &a, const Dual &b) {
  return {a.v * b.v, a.gx * b.v + a.v * b.gx, a.gy * b.v + a.v * b.gy,
          a.gz * b.v + a.v * b.gz};
}
Dual operator/(const Dual &a, const Dual &b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.gx - q * b.gx) * inv, (a.gy - q * b.gy) * inv,
          (a.gz - q * b.gz) * inv};
}

Dual eval_node(const Node &n, const Vec3 &p) {
  using K = Node::Kind;
  switch (n.kind) {
  case K::Number:
    return {n.number, 0, 0, 0};
  case K::Variable: {
    switch (n.var) {
    case Var::Px: return {p.x, 1, 0, 0};
    case Var::Py: return {p.y, 0, 1, 0};
    case Var::Pz: return {p.z, 0, 0, 1};
    case Var::Pperp: {
      const double r = std::hypot(p.x, p.y);
      if (r < 1e-300)
        throw SingularPoint("p_perp gradient at the vortex axis");
      return {r, p.x / r, p.y / r, 0};
    }
    case Var::PhiP: {
      const double r2 = p.x * p.x + p.y * p.y;
      if (r2 < 1e-300)
        throw SingularPoint("phi_p is undefined at p_perp = 0");
      return {std::atan2(p.y, p.x), -p.y / r2, p.x / r2, 0};
    }
    }
    break;
  }
  case K::Add: return eval_node(*n.a, p) + eval_node(*n.b, p);
  case K::Sub: return eval_node(*n.a, p) - eval_node(*n.b, p);
  case K::Mul: return eval_node(*n.a, p) * eval_node(*n.b, p);
  case K::Div: {
    const Dual b = eval_node(*n.b, p);
    if (b.v == 0.0)
      throw SingularPoint("division by zero in phase expression");
    return eval_node(*n.a, p) / b;
  }
  case K::Neg: return -eval_node(*n.a, p);
  case K::Pow: {
    const Dual a = eval_node(*n.a, p);
    const int e = n.exponent;
    if (e == 0)
      return {1, 0, 0, 0};
    if (a.v == 0.0 && e < 0)
      throw SingularPoint("negative power of zero in phase expression");
    const double vpow = std::pow(a.v, e);
    const double dpow = e * std::pow(a.v, e - 1);
    return {vpow, dpow * a.gx, dpow * a.gy, dpow * a.gz};
  }
  case K::Sin: {
    const Dual a = eval_node(*n.a, p);
    const double c = std::cos(a.v);
    return {std::sin(a.v), c * a.gx, c * a.gy, c * a.gz};
  }
  case K::Cos: {
    const Dual a = eval_node(*n.a, p);
    const double s = -std::sin(a.v);
    return {std::cos(a.v), s * a.gx, s * a.gy, s * a.gz};
  }
  case K::Sqrt: {
    const Dual a = eval_node(*n.a, p);
    if (a.v < 0)
      throw SingularPoint("sqrt of a negative value in phase expression");
    const bool wants_grad = a.gx != 0 || a.gy != 0 || a.gz != 0;
    if (a.v == 0 && wants_grad)
      throw SingularPoint("sqrt gradient at zero");
    const double r = std::sqrt(a.v);
    const double d = wants_grad ? 0.5 / r : 0.0;
    return {r, d * a.gx, d * a.gy, d * a.gz};
  }
  case K::Atan2: {
    const Dual a = eval_node(*n.a, p); // y
    const Dual b = eval_node(*n.b, p); // x
    const double den = a.v * a.v + b.v * b.v;
    if (den < 1e-300)
      throw SingularPoint("atan2(0,0) in phase expression");
    return {std::atan2(a.v, b.v), (b.v * a.gx - a.v * b.gx) / den,
            (b.v * a.gy - a.v * b.gy) / den, (b.v * a.gz - a.v * b.gz) / den};
  }
  }
  throw Error("corrupt phase AST");
}

//==============================================================================
// Printer: precedence-aware, emits parseable text that round-trips to an
// equal AST. Numbers are printed with 17 significant digits.

int precedence(Node::Kind k) {
  using K = Node::Kind;
  switch (k) {
  case K::Add: case K::Sub: return 1;
  case K::Mul: case K::Div: return 2;
  case K::Neg: return 3;
  case K::Pow: return 4;
  default: return 5;
  }
}

void print_node(const Node &n, std::string &out, int parent_prec) {
  using K = Node::Kind;
  // a negative literal prints as a unary minus, so it binds like one
  const bool negative_literal =
      n.kind == K::Number && std::signbit(n.number);
  const int prec = negative_literal ? precedence(K::Neg) : precedence(n.kind);
  const bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (n.kind) {
  case K::Number: {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", n.number);
    out += buf;
    break;
  }
  case K::Variable:
    switch (n.var) {
    case Var::Px: out += "p_x"; break;
    case Var::Py: out += "p_y"; break;
    case Var::Pz: out += "p_z"; break;
    case Var::Pperp: out += "p_perp"; break;
    case Var::PhiP: out += "phi_p"; break;
    }
    break;
  case K::Add:
    print_node(*n.a, out, prec); out += " + "; print_node(*n.b, out, prec + 1);
    break;
  case K::Sub:
    print_node(*n.a, out, prec); out += " - "; print_node(*n.b, out, prec + 1);
    break;
  case K::Mul:
    print_node(*n.a, out, prec); out += "*"; print_node(*n.b, out, prec + 1);
    break;
  case K::Div:
    print_node(*n.a, out, prec); out += "/"; print_node(*n.b, out, prec + 1);
    break;
  case K::Neg:
    out += '-'; print_node(*n.a, out, prec + 1);
    break;
  case K::Pow:
    print_node(*n.a, out, prec + 1);
    out += '^';
    if (n.exponent < 0) {
      out += '-';
      out += std::to_string(-n.exponent);
    } else {
      out += std::to_string(n.exponent);
    }
    break;
  case K::Sin: out += "sin("; print_node(*n.a, out, 0); out += ')'; break;
  case K::Cos: out += "cos("; print_node(*n.a, out, 0); out += ')'; break;
  case K::Sqrt: out += "sqrt("; print_node(*n.a, out, 0); out += ')'; break;
  case K::Atan2:
    out += "atan2(";
    print_node(*n.a, out, 0);
    out += ", ";
    print_node(*n.b, out, 0);
    out += ')';
    break;
  }
  if (parens) out += ')';
}

bool node_equal(const Node *a, const Node *b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  using K = Node::Kind;
  switch (a->kind) {
  case K::Number: return a->number == b->number;
  case K::Variable: return a->var == b->var;
  case K::Pow: return a->exponent == b->exponent && node_equal(a->a.get(), b->a.get());
  default:
    return node_equal(a->a.get(), b->a.get()) && node_equal(a->b.get(), b->b.get());
  }
}

//==============================================================================
// Singularity scan.

bool contains_var(const Node *n, Var v) {
  if (!n) return false;
  if (n->kind == Node::Kind::Variable) return n->var == v;
  return contains_var(n->a.get(), v) || contains_var(n->b.get(), v);
}

// p_perp or phi_p in a denominator (divisor subtree or negative power).
bool singular_denominator(const Node *n) {
  if (!n) return false;
  if (n->kind == Node::Kind::Div &&
      (contains_var(n->b.get(), Var::Pperp) || contains_var(n->b.get(), Var::PhiP)))
    return true;
  if (n->kind == Node::Kind::Pow && n->exponent < 0 &&
      (contains_var(n->a.get(), Var::Pperp) || contains_var(n->a.get(), Var::PhiP)))
    return true;
  return singular_denominator(n->a.get()) || singular_denominator(n->b.get());
}

// Flatten nested Add/Sub/Neg into signed additive terms.
void collect_terms(const NodePtr &n, double sign,
                   std::vector<std::pair<NodePtr, double>> &terms) {
  switch (n->kind) {
  case Node::Kind::Add:
    collect_terms(n->a, sign, terms);
    collect_terms(n->b, sign, terms);
    return;
  case Node::Kind::Sub:
    collect_terms(n->a, sign, terms);
    collect_terms(n->b, -sign, terms);
    return;
  case Node::Kind::Neg:
    collect_terms(n->a, -sign, terms);
    return;
  default:
    terms.emplace_back(n, sign);
  }
}

// Matches phi_p, c*phi_p, phi_p*c; returns the coefficient.
bool match_vortex_term(const Node *n, double &coef) {
  if (n->kind == Node::Kind::Variable && n->var == Var::PhiP) {
    coef = 1.0;
    return true;
  }
  if (n->kind == Node::Kind::Mul) {
    const Node *a = n->a.get(), *b = n->b.get();
    if (a->kind == Node::Kind::Number && b->kind == Node::Kind::Variable &&
        b->var == Var::PhiP) {
      coef = a->number;
      return true;
    }
    if (b->kind == Node::Kind::Number && a->kind == Node::Kind::Variable &&
        a->var == Var::PhiP) {
      coef = b->number;
      return true;
    }
  }
  return false;
}

} // namespace
} // namespace detail

//==============================================================================

PhaseExpr PhaseExpr::parse(const std::string &source,
                           const std::map<std::string, double> &params) {
  if (source.empty())
    throw SyntaxError(0, "expression", "empty phase expression");
  detail::Parser parser(source, params);
  return PhaseExpr(parser.parse());
}

PhaseGradient PhaseExpr::eval_grad(const Vec3 &p) const {
  if (!root_)
    return {};
  const detail::Dual d = detail::eval_node(*root_, p);
  if (!std::isfinite(d.v) || !std::isfinite(d.gx) || !std::isfinite(d.gy) ||
      !std::isfinite(d.gz))
    throw SingularPoint("phase evaluation produced a non-finite value");
  return {d.v, Vec3{d.gx, d.gy, d.gz}};
}

double PhaseExpr::eval(const Vec3 &p) const { return eval_grad(p).value; }

SingularityClass PhaseExpr::classify() const {
  using detail::Node;
  if (!root_)
    return {SingularityClass::Kind::Smooth, 0};

  std::vector<std::pair<detail::NodePtr, double>> terms;
  detail::collect_terms(root_, 1.0, terms);

  double vortex_coef = 0;
  bool has_vortex_term = false;
  for (const auto &[term, sign] : terms) {
    double c = 0;
    if (detail::match_vortex_term(term.get(), c)) {
      vortex_coef += sign * c;
      has_vortex_term = true;
    } else if (detail::contains_var(term.get(), detail::Var::PhiP)) {
      return {SingularityClass::Kind::Unknown, 0}; // phi_p in a non-linear context
    }
  }

  if (has_vortex_term) {
    const double r = std::round(vortex_coef);
    if (std::fabs(vortex_coef - r) > 1e-9 * std::max(1.0, std::fabs(vortex_coef)))
      return {SingularityClass::Kind::Unknown, 0};
    return {SingularityClass::Kind::Vortex, static_cast<int>(r)};
  }
  if (detail::singular_denominator(root_.get()))
    return {SingularityClass::Kind::Unknown, 0};
  return {SingularityClass::Kind::Smooth, 0};
}

std::string PhaseExpr::print() const {
  if (!root_)
    return "0";
  std::string out;
  detail::print_node(*root_, out, 0);
  return out;
}

bool equal(const PhaseExpr &a, const PhaseExpr &b) {
  return detail::node_equal(a.root_.get(), b.root_.get());
}

} // namespace wavemom
