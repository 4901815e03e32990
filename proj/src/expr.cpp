#include "dualform/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace dualform {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, double v) {
  return e->kind == Expr::Kind::Constant && e->constant == v;
}

}  // namespace

ExprPtr ex_const(double v) {
  Expr e;
  e.kind = Expr::Kind::Constant;
  e.constant = v;
  return make(e);
}

ExprPtr ex_param(int index) {
  Expr e;
  e.kind = Expr::Kind::Param;
  e.param = index;
  return make(e);
}

ExprPtr ex_add(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  Expr e;
  e.kind = Expr::Kind::Add;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(e);
}

ExprPtr ex_sub(ExprPtr a, ExprPtr b) {
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return ex_neg(std::move(b));
  Expr e;
  e.kind = Expr::Kind::Sub;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(e);
}

ExprPtr ex_mul(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0) || is_const(b, 0)) return ex_const(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  Expr e;
  e.kind = Expr::Kind::Mul;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(e);
}

ExprPtr ex_div(ExprPtr a, ExprPtr b) {
  if (is_const(a, 0)) return ex_const(0);
  if (is_const(b, 1)) return a;
  Expr e;
  e.kind = Expr::Kind::Div;
  e.a = std::move(a);
  e.b = std::move(b);
  return make(e);
}

ExprPtr ex_pow(ExprPtr a, int n) {
  if (n == 1) return a;
  Expr e;
  e.kind = Expr::Kind::Pow;
  e.exponent = n;
  e.a = std::move(a);
  return make(e);
}

ExprPtr ex_unary(UnaryFn fn, ExprPtr a) {
  if (fn == UnaryFn::Neg && a->kind == Expr::Kind::Constant) return ex_const(-a->constant);
  Expr e;
  e.kind = Expr::Kind::Unary;
  e.fn = fn;
  e.a = std::move(a);
  return make(e);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Constant:
      return a->constant == b->constant;
    case Expr::Kind::Param:
      return a->param == b->param;
    case Expr::Kind::Pow:
      return a->exponent == b->exponent && expr_equal(a->a, b->a);
    case Expr::Kind::Unary:
      return a->fn == b->fn && expr_equal(a->a, b->a);
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  double number = 0;
  std::string ident;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && skip_one()) {
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = text_[pos_];
    // U+2212 (minus sign) is accepted as a synonym for '-'.
    if (pos_ + 2 < text_.size() + 1 && (unsigned char)c == 0xE2 && pos_ + 2 < text_.size() &&
        (unsigned char)text_[pos_ + 1] == 0x88 && (unsigned char)text_[pos_ + 2] == 0x92) {
      tok_.kind = Tok::Minus;
      bump(3);
      return;
    }
    switch (c) {
      case '+': tok_.kind = Tok::Plus; bump(1); return;
      case '-': tok_.kind = Tok::Minus; bump(1); return;
      case '*': tok_.kind = Tok::Star; bump(1); return;
      case '/': tok_.kind = Tok::Slash; bump(1); return;
      case '^': tok_.kind = Tok::Caret; bump(1); return;
      case '(': tok_.kind = Tok::LParen; bump(1); return;
      case ')': tok_.kind = Tok::RParen; bump(1); return;
      case ',': tok_.kind = Tok::Comma; bump(1); return;
      default: break;
    }
    if (std::isdigit((unsigned char)c) || (c == '.' && pos_ + 1 < text_.size() &&
                                           std::isdigit((unsigned char)text_[pos_ + 1]))) {
      size_t end = pos_;
      while (end < text_.size() && (std::isdigit((unsigned char)text_[end]) || text_[end] == '.'))
        ++end;
      if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
        size_t e = end + 1;
        if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
        if (e < text_.size() && std::isdigit((unsigned char)text_[e])) {
          while (e < text_.size() && std::isdigit((unsigned char)text_[e])) ++e;
          end = e;
        }
      }
      tok_.kind = Tok::Number;
      tok_.number = std::strtod(text_.substr(pos_, end - pos_).c_str(), nullptr);
      bump(end - pos_);
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum((unsigned char)text_[end]) || text_[end] == '_'))
        ++end;
      tok_.kind = Tok::Ident;
      tok_.ident = text_.substr(pos_, end - pos_);
      bump(end - pos_);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  bool skip_one() {
    const char c = text_[pos_];
    if (c == ' ' || c == '\t' || c == '\r') {
      bump(1);
      return true;
    }
    if (c == '\n') {
      ++pos_;
      ++line_;
      col_ = 1;
      return true;
    }
    return false;
  }

  void bump(size_t n) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

const std::map<std::string, UnaryFn>& function_table() {
  static const std::map<std::string, UnaryFn> t = {{"sin", UnaryFn::Sin},
                                                   {"cos", UnaryFn::Cos},
                                                   {"sinh", UnaryFn::Sinh},
                                                   {"cosh", UnaryFn::Cosh},
                                                   {"sqrt", UnaryFn::Sqrt}};
  return t;
}

class Parser {
 public:
  Parser(const std::string& text, std::vector<std::string> declared, bool collect)
      : lex_(text), params_(std::move(declared)), collect_(collect) {}

  ParsedMap patch() {
    expect(Tok::LParen, "expected '(' to open the coordinate tuple");
    ParsedMap out;
    out.coords.push_back(expr());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.next();
      out.coords.push_back(expr());
    }
    expect(Tok::RParen, "expected ')' or ',' in coordinate tuple");
    expect(Tok::End, "trailing input after coordinate tuple");
    out.params = params_;
    return out;
  }

  ExprPtr single() {
    ExprPtr e = expr();
    expect(Tok::End, "trailing input after expression");
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr e = term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Tok op = lex_.next().kind;
      ExprPtr rhs = term();
      e = op == Tok::Plus ? ex_add(e, rhs) : ex_sub(e, rhs);
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      Tok op = lex_.next().kind;
      ExprPtr rhs = factor();
      e = op == Tok::Star ? ex_mul(e, rhs) : ex_div(e, rhs);
    }
    return e;
  }

  ExprPtr factor() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.next();
      neg = true;
    }
    ExprPtr e = atom(neg);
    if (lex_.peek().kind == Tok::Caret) {
      lex_.next();
      int sign = 1;
      if (lex_.peek().kind == Tok::Minus) {
        lex_.next();
        sign = -1;
      }
      Token t = lex_.peek();
      if (t.kind != Tok::Number || t.number != std::floor(t.number))
        throw ParseError("exponent must be an integer", t.line, t.col);
      lex_.next();
      e = ex_pow(e, sign * static_cast<int>(t.number));
    }
    return e;
  }

  // A leading minus folds into numeric literals so that printed constants
  // round-trip to the identical tree.
  ExprPtr atom(bool neg) {
    Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        lex_.next();
        return ex_const(neg ? -t.number : t.number);
      case Tok::LParen: {
        lex_.next();
        ExprPtr e = expr();
        expect(Tok::RParen, "unbalanced parenthesis");
        return neg ? ex_neg(e) : e;
      }
      case Tok::Ident: {
        lex_.next();
        auto fn = function_table().find(t.ident);
        if (fn != function_table().end()) {
          expect(Tok::LParen, "expected '(' after function name");
          if (lex_.peek().kind == Tok::RParen)
            throw ParseError("function '" + t.ident + "' takes exactly one argument",
                             lex_.peek().line, lex_.peek().col);
          ExprPtr arg = expr();
          if (lex_.peek().kind == Tok::Comma)
            throw ParseError("function '" + t.ident + "' takes exactly one argument",
                             lex_.peek().line, lex_.peek().col);
          expect(Tok::RParen, "expected ')' after function argument");
          ExprPtr e = ex_unary(fn->second, arg);
          return neg ? ex_neg(e) : e;
        }
        ExprPtr e = ex_param(param_index(t));
        return neg ? ex_neg(e) : e;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.line, t.col);
      default:
        throw ParseError("expected a number, parameter or function", t.line, t.col);
    }
  }

  int param_index(const Token& t) {
    for (size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == t.ident) return static_cast<int>(i);
    if (!collect_)
      throw ParseError("unknown identifier '" + t.ident + "'", t.line, t.col);
    params_.push_back(t.ident);
    return static_cast<int>(params_.size()) - 1;
  }

  void expect(Tok kind, const char* msg) {
    const Token& t = lex_.peek();
    if (t.kind != kind) throw ParseError(msg, t.line, t.col);
    lex_.next();
  }

  Lexer lex_;
  std::vector<std::string> params_;
  bool collect_;
};

}  // namespace

ParsedMap parse_patch(const std::string& text, const std::vector<std::string>& declared) {
  Parser p(text, declared, declared.empty());
  return p.patch();
}

ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& params) {
  Parser p(text, params, params.empty());
  return p.single();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Larger binds tighter. Matches the grammar: +,- at 1; *,/ at 2; unary
// minus and ^ live at the factor level (3); atoms at 4.
int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Pow:
      return 3;
    case Expr::Kind::Unary:
      return e->fn == UnaryFn::Neg ? 3 : 4;
    default:
      return e->kind == Expr::Kind::Constant && e->constant < 0 ? 3 : 4;
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* fn_name(UnaryFn f) {
  switch (f) {
    case UnaryFn::Sin: return "sin";
    case UnaryFn::Cos: return "cos";
    case UnaryFn::Sinh: return "sinh";
    case UnaryFn::Cosh: return "cosh";
    case UnaryFn::Sqrt: return "sqrt";
    default: return "-";
  }
}

std::string print_rec(const ExprPtr& e, const std::vector<std::string>& params, int parent,
                      bool right_side) {
  const int prec = precedence(e);
  std::string s;
  switch (e->kind) {
    case Expr::Kind::Constant:
      s = fmt_double(e->constant);
      break;
    case Expr::Kind::Param:
      s = params.at(e->param);
      break;
    case Expr::Kind::Add:
      s = print_rec(e->a, params, 1, false) + " + " + print_rec(e->b, params, 1, true);
      break;
    case Expr::Kind::Sub:
      s = print_rec(e->a, params, 1, false) + " - " + print_rec(e->b, params, 2, true);
      break;
    case Expr::Kind::Mul:
      s = print_rec(e->a, params, 2, false) + "*" + print_rec(e->b, params, 2, true);
      break;
    case Expr::Kind::Div:
      s = print_rec(e->a, params, 2, false) + "/" + print_rec(e->b, params, 3, true);
      break;
    case Expr::Kind::Pow:
      s = print_rec(e->a, params, 4, false) + "^" + std::to_string(e->exponent);
      break;
    case Expr::Kind::Unary:
      if (e->fn == UnaryFn::Neg)
        s = "-" + print_rec(e->a, params, 4, false);
      else
        s = std::string(fn_name(e->fn)) + "(" + print_rec(e->a, params, 0, false) + ")";
      break;
  }
  (void)right_side;
  if (prec < parent) s = "(" + s + ")";
  return s;
}

}  // namespace

std::string print_expr(const ExprPtr& e, const std::vector<std::string>& params) {
  return print_rec(e, params, 0, false);
}

// ---------------------------------------------------------------------------
// Symbolic differentiation

ExprPtr differentiate(const ExprPtr& e, int var) {
  switch (e->kind) {
    case Expr::Kind::Constant:
      return ex_const(0);
    case Expr::Kind::Param:
      return ex_const(e->param == var ? 1 : 0);
    case Expr::Kind::Add:
      return ex_add(differentiate(e->a, var), differentiate(e->b, var));
    case Expr::Kind::Sub:
      return ex_sub(differentiate(e->a, var), differentiate(e->b, var));
    case Expr::Kind::Mul:
      return ex_add(ex_mul(differentiate(e->a, var), e->b),
                    ex_mul(e->a, differentiate(e->b, var)));
    case Expr::Kind::Div:
      return ex_div(ex_sub(ex_mul(differentiate(e->a, var), e->b),
                           ex_mul(e->a, differentiate(e->b, var))),
                    ex_pow(e->b, 2));
    case Expr::Kind::Pow:
      if (e->exponent == 0) return ex_const(0);
      return ex_mul(ex_mul(ex_const(e->exponent), ex_pow(e->a, e->exponent - 1)),
                    differentiate(e->a, var));
    case Expr::Kind::Unary: {
      ExprPtr da = differentiate(e->a, var);
      switch (e->fn) {
        case UnaryFn::Neg:
          return ex_neg(da);
        case UnaryFn::Sin:
          return ex_mul(ex_unary(UnaryFn::Cos, e->a), da);
        case UnaryFn::Cos:
          return ex_neg(ex_mul(ex_unary(UnaryFn::Sin, e->a), da));
        case UnaryFn::Sinh:
          return ex_mul(ex_unary(UnaryFn::Cosh, e->a), da);
        case UnaryFn::Cosh:
          return ex_mul(ex_unary(UnaryFn::Sinh, e->a), da);
        case UnaryFn::Sqrt:
          return ex_div(da, ex_mul(ex_const(2), ex_unary(UnaryFn::Sqrt, e->a)));
      }
    }
  }
  throw Error("differentiate: unreachable");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

inline double gs_value(const double& d) { return d; }
inline double gs_value(const Dual2& d) { return d.value(); }

inline double pow_int_s(const double& b, int n) {
  if (n < 0 && b == 0.0) throw EvalError("zero raised to a negative power");
  return std::pow(b, n);
}
inline Dual2 pow_int_s(const Dual2& b, int n) { return pow_int(b, n); }

template <class S, class MakeConst>
S eval_rec(const ExprPtr& e, const std::vector<S>& params, const MakeConst& mk) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  switch (e->kind) {
    case Expr::Kind::Constant:
      return mk(e->constant);
    case Expr::Kind::Param:
      return params.at(e->param);
    case Expr::Kind::Add:
      return eval_rec(e->a, params, mk) + eval_rec(e->b, params, mk);
    case Expr::Kind::Sub:
      return eval_rec(e->a, params, mk) - eval_rec(e->b, params, mk);
    case Expr::Kind::Mul:
      return eval_rec(e->a, params, mk) * eval_rec(e->b, params, mk);
    case Expr::Kind::Div: {
      S num = eval_rec(e->a, params, mk);
      S den = eval_rec(e->b, params, mk);
      if (gs_value(den) == 0.0) throw EvalError("division by zero");
      return num / den;
    }
    case Expr::Kind::Pow: {
      S base = eval_rec(e->a, params, mk);
      return pow_int_s(base, e->exponent);
    }
    case Expr::Kind::Unary: {
      S a = eval_rec(e->a, params, mk);
      switch (e->fn) {
        case UnaryFn::Neg: return -a;
        case UnaryFn::Sin: return sin(a);
        case UnaryFn::Cos: return cos(a);
        case UnaryFn::Sinh: return sinh(a);
        case UnaryFn::Cosh: return cosh(a);
        case UnaryFn::Sqrt:
          if (gs_value(a) < 0.0) throw EvalError("sqrt of negative value");
          return sqrt(a);
      }
    }
  }
  throw Error("eval: unreachable");
}

}  // namespace

double eval(const ExprPtr& e, const std::vector<double>& params) {
  return eval_rec(e, params, [](double v) { return v; });
}

Dual2 eval(const ExprPtr& e, const std::vector<Dual2>& params, int nvars) {
  return eval_rec(e, params, [nvars](double v) { return Dual2::constant(v, nvars); });
}

}  // namespace dualform
