#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "dualform/errors.hpp"

namespace dualform {

// Forward-mode scalar carrying value, gradient and Hessian with respect to
// a fixed set of seed variables. Every arithmetic rule below writes the
// Hessian update symmetrically, so jets built from Dual2 are symmetric in
// the mixed partials exactly, not just to roundoff.
class Dual2 {
 public:
  Dual2() = default;

  static Dual2 constant(double v, int nvars) {
    Dual2 d;
    d.val_ = v;
    d.grad_ = Eigen::VectorXd::Zero(nvars);
    d.hess_ = Eigen::MatrixXd::Zero(nvars, nvars);
    return d;
  }

  static Dual2 variable(double v, int nvars, int index) {
    Dual2 d = constant(v, nvars);
    d.grad_(index) = 1.0;
    return d;
  }

  double value() const { return val_; }
  const Eigen::VectorXd& grad() const { return grad_; }
  const Eigen::MatrixXd& hess() const { return hess_; }
  int nvars() const { return static_cast<int>(grad_.size()); }

  bool finite() const {
    return std::isfinite(val_) && grad_.allFinite() && hess_.allFinite();
  }

  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    Dual2 r = a;
    r.val_ += b.val_;
    r.grad_ += b.grad_;
    r.hess_ += b.hess_;
    return r;
  }

  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    Dual2 r = a;
    r.val_ -= b.val_;
    r.grad_ -= b.grad_;
    r.hess_ -= b.hess_;
    return r;
  }

  friend Dual2 operator-(const Dual2& a) {
    Dual2 r = a;
    r.val_ = -r.val_;
    r.grad_ = -r.grad_;
    r.hess_ = -r.hess_;
    return r;
  }

  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    Dual2 r;
    r.val_ = a.val_ * b.val_;
    r.grad_ = a.grad_ * b.val_ + b.grad_ * a.val_;
    r.hess_ = a.hess_ * b.val_ + b.hess_ * a.val_ + a.grad_ * b.grad_.transpose() +
              b.grad_ * a.grad_.transpose();
    return r;
  }

  friend Dual2 operator/(const Dual2& a, const Dual2& b) {
    if (b.val_ == 0.0) throw EvalError("division by zero");
    Dual2 q;
    q.val_ = a.val_ / b.val_;
    q.grad_ = (a.grad_ - q.val_ * b.grad_) / b.val_;
    q.hess_ = (a.hess_ - q.val_ * b.hess_ - q.grad_ * b.grad_.transpose() -
               b.grad_ * q.grad_.transpose()) /
              b.val_;
    return q;
  }

  friend Dual2 operator+(const Dual2& a, double c) {
    Dual2 r = a;
    r.val_ += c;
    return r;
  }
  friend Dual2 operator+(double c, const Dual2& a) { return a + c; }

  friend Dual2 operator-(const Dual2& a, double c) {
    Dual2 r = a;
    r.val_ -= c;
    return r;
  }
  friend Dual2 operator-(double c, const Dual2& a) { return -(a - c); }

  friend Dual2 operator*(const Dual2& a, double c) {
    Dual2 r = a;
    r.val_ *= c;
    r.grad_ *= c;
    r.hess_ *= c;
    return r;
  }
  friend Dual2 operator*(double c, const Dual2& a) { return a * c; }

  friend Dual2 operator/(const Dual2& a, double c) {
    if (c == 0.0) throw EvalError("division by zero");
    return a * (1.0 / c);
  }
  friend Dual2 operator/(double c, const Dual2& a) {
    return Dual2::constant(c, a.nvars()) / a;
  }

  Dual2& operator+=(const Dual2& b) { return *this = *this + b; }
  Dual2& operator-=(const Dual2& b) { return *this = *this - b; }
  Dual2& operator*=(const Dual2& b) { return *this = *this * b; }

  // f(a) with f' and f'' supplied at a.value().
  static Dual2 chain(const Dual2& a, double f, double fp, double fpp) {
    Dual2 r;
    r.val_ = f;
    r.grad_ = fp * a.grad_;
    r.hess_ = fp * a.hess_ + fpp * (a.grad_ * a.grad_.transpose());
    return r;
  }

 private:
  double val_ = 0.0;
  Eigen::VectorXd grad_;
  Eigen::MatrixXd hess_;
};

inline Dual2 sin(const Dual2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Dual2::chain(a, s, c, -s);
}

inline Dual2 cos(const Dual2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Dual2::chain(a, c, -s, -c);
}

inline Dual2 sinh(const Dual2& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return Dual2::chain(a, s, c, s);
}

inline Dual2 cosh(const Dual2& a) {
  const double s = std::sinh(a.value()), c = std::cosh(a.value());
  return Dual2::chain(a, c, s, c);
}

inline Dual2 sqrt(const Dual2& a) {
  if (a.value() < 0.0) throw EvalError("sqrt of negative value");
  if (a.value() == 0.0) throw EvalError("sqrt not differentiable at zero");
  const double s = std::sqrt(a.value());
  return Dual2::chain(a, s, 0.5 / s, -0.25 / (s * a.value()));
}

// Integer power by repeated squaring on the value path is unnecessary at
// these sizes; plain chain rule keeps the Hessian exact.
inline Dual2 pow_int(const Dual2& a, int n) {
  if (n == 0) return Dual2::constant(1.0, a.nvars());
  if (n < 0) {
    if (a.value() == 0.0) throw EvalError("zero raised to a negative power");
    return Dual2::constant(1.0, a.nvars()) / pow_int(a, -n);
  }
  const double v = a.value();
  const double f = std::pow(v, n);
  const double fp = n * std::pow(v, n - 1);
  const double fpp = n >= 2 ? double(n) * (n - 1) * std::pow(v, n - 2) : 0.0;
  return Dual2::chain(a, f, fp, fpp);
}

}  // namespace dualform
