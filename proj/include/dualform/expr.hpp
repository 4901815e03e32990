#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dualform/dual2.hpp"
#include "dualform/errors.hpp"

namespace dualform {

// Expression tree for parametrized maps. Nodes are immutable and shared;
// derivative construction reuses subtrees freely.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryFn { Neg, Sin, Cos, Sinh, Cosh, Sqrt };

struct Expr {
  enum class Kind { Constant, Param, Add, Sub, Mul, Div, Pow, Unary };
  Kind kind;
  double constant = 0.0;  // Kind::Constant
  int param = -1;         // Kind::Param, index into the parameter list
  int exponent = 0;       // Kind::Pow
  UnaryFn fn = UnaryFn::Neg;
  ExprPtr a, b;
};

ExprPtr ex_const(double v);
ExprPtr ex_param(int index);
ExprPtr ex_add(ExprPtr a, ExprPtr b);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_mul(ExprPtr a, ExprPtr b);
ExprPtr ex_div(ExprPtr a, ExprPtr b);
ExprPtr ex_pow(ExprPtr a, int n);
ExprPtr ex_unary(UnaryFn fn, ExprPtr a);
inline ExprPtr ex_neg(ExprPtr a) { return ex_unary(UnaryFn::Neg, std::move(a)); }

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Parsed tuple of coordinate expressions over named parameters.
struct ParsedMap {
  std::vector<ExprPtr> coords;
  std::vector<std::string> params;
};

// Grammar:
//   patch  := "(" expr { "," expr } ")"
//   expr   := term  { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := ["-"] atom ["^" integer]
//   atom   := number | ident | func "(" expr ")" | "(" expr ")"
//   func   := sin | cos | sinh | cosh | sqrt
// With `declared` empty, parameters are collected in order of first use;
// otherwise an identifier outside the declared list is an error.
ParsedMap parse_patch(const std::string& text,
                      const std::vector<std::string>& declared = {});
ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& params);

// Precedence-aware printer; parse(print(e)) reproduces the tree.
std::string print_expr(const ExprPtr& e, const std::vector<std::string>& params);

ExprPtr differentiate(const ExprPtr& e, int var);

double eval(const ExprPtr& e, const std::vector<double>& params);
Dual2 eval(const ExprPtr& e, const std::vector<Dual2>& params, int nvars);

}  // namespace dualform
