#include "dualform/patch.hpp"

#include <cmath>
#include <numbers>

namespace dualform {

Domain default_angle_domain(int m) {
  Domain d(m);
  for (auto& axis : d) axis = DomainAxis{0.0, 2.0 * std::numbers::pi, true};
  return d;
}

int Jet2::sym_index(int i, int j, int m) {
  if (i > j) std::swap(i, j);
  return i * m - i * (i - 1) / 2 + (j - i);
}

const Vector& Jet2::d2_at(int i, int j) const {
  return d2[sym_index(i, j, param_dim())];
}

Patch::Patch(MetricSpace ms, Domain domain, SheetKind sheet)
    : ms_(std::move(ms)), domain_(std::move(domain)), sheet_(sheet) {
  if (domain_.empty()) throw Error("patch needs at least one parameter");
  if ((sheet_ == SheetKind::Sphere) != (ms_.signature() == Signature::Euclidean))
    throw Error("sheet kind does not match metric signature");
}

void Patch::check_domain(const Vector& u, double margin) const {
  if (u.size() != param_dim())
    throw DimensionMismatch("parameter point length does not match patch");
  for (int i = 0; i < param_dim(); ++i) {
    const DomainAxis& ax = domain_[i];
    if (ax.periodic) continue;  // periodic axes wrap
    if (u(i) < ax.lo - 1e-12 || u(i) > ax.hi + 1e-12)
      throw OutOfDomainError("parameter outside the domain box");
    if (margin > 0 && (u(i) < ax.lo + margin || u(i) > ax.hi - margin))
      throw OutOfDomainError("parameter too close to the domain boundary for the stencil");
  }
}

Jet2 Patch::eval_jet2(const Vector& u, const JetOptions& opts) const {
  check_domain(u, opts.method == JetMethod::FD ? opts.fd_step : 0.0);
  Jet2 jet = jet_impl(u, opts);
  if (!jet.p.allFinite() || !jet.d1.allFinite())
    throw EvalError("non-finite jet values");
  for (const Vector& v : jet.d2)
    if (!v.allFinite()) throw EvalError("non-finite jet values");
  const double sigma = sheet_sign(sheet_);
  const double residual = std::abs(ms_.inner(jet.p, jet.p) - sigma);
  if (residual > 1e-10)
    throw NotOnSheetError("not on sheet: constraint residual " + std::to_string(residual));
  if (sheet_ == SheetKind::Hyperbolic && jet.p(ms_.ambient_dim() - 1) <= 0)
    throw NotOnSheetError("not on sheet: wrong hyperboloid component");
  return jet;
}

ParamPatch::ParamPatch(MetricSpace ms, Domain domain, SheetKind sheet,
                       std::vector<ExprPtr> coords, std::vector<std::string> params,
                       std::string description)
    : Patch(std::move(ms), std::move(domain), sheet),
      coords_(std::move(coords)),
      params_(std::move(params)),
      description_(std::move(description)) {
  if (static_cast<int>(coords_.size()) != metric().ambient_dim())
    throw DimensionMismatch("coordinate count does not match ambient dimension");
  if (static_cast<int>(params_.size()) != param_dim())
    throw DimensionMismatch("parameter count does not match domain");
}

std::string ParamPatch::describe() const {
  if (!description_.empty()) return description_;
  std::string s = "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += print_expr(coords_[i], params_);
  }
  return s + ")";
}

Vector ParamPatch::value(const Vector& u) const {
  std::vector<double> args(u.data(), u.data() + u.size());
  Vector out(metric().ambient_dim());
  for (int c = 0; c < out.size(); ++c) out(c) = eval(coords_[c], args);
  return out;
}

const std::vector<ExprPtr>& ParamPatch::d1_exprs() const {
  if (d1_cache_.empty()) {
    const int n = metric().ambient_dim();
    d1_cache_.reserve(static_cast<size_t>(param_dim()) * n);
    for (int i = 0; i < param_dim(); ++i)
      for (int c = 0; c < n; ++c) d1_cache_.push_back(differentiate(coords_[c], i));
  }
  return d1_cache_;
}

void ParamPatch::eval_dual(const std::vector<Dual2>& u, int nvars, std::vector<Dual2>* f,
                           std::vector<std::vector<Dual2>>* df) const {
  const int n = metric().ambient_dim();
  if (f) {
    f->clear();
    f->reserve(n);
    for (int c = 0; c < n; ++c) f->push_back(eval(coords_[c], u, nvars));
  }
  if (df) {
    const auto& exprs = d1_exprs();
    df->assign(param_dim(), {});
    for (int i = 0; i < param_dim(); ++i) {
      (*df)[i].reserve(n);
      for (int c = 0; c < n; ++c) (*df)[i].push_back(eval(exprs[i * n + c], u, nvars));
    }
  }
}

Jet2 ParamPatch::jet_impl(const Vector& u, const JetOptions& opts) const {
  if (opts.method == JetMethod::FD)
    return fd_jet(*this, u, opts.fd_step, [this](const Vector& x) { return value(x); });

  const int m = param_dim();
  const int n = metric().ambient_dim();
  std::vector<Dual2> args;
  args.reserve(m);
  for (int i = 0; i < m; ++i) args.push_back(Dual2::variable(u(i), m, i));

  Jet2 jet;
  jet.u = u;
  jet.method = JetMethod::AD;
  jet.p.resize(n);
  jet.d1.resize(n, m);
  jet.d2.assign(m * (m + 1) / 2, Vector(n));
  for (int c = 0; c < n; ++c) {
    Dual2 val = eval(coords_[c], args, m);
    jet.p(c) = val.value();
    for (int i = 0; i < m; ++i) jet.d1(c, i) = val.grad()(i);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) jet.d2[Jet2::sym_index(i, j, m)](c) = val.hess()(i, j);
  }
  return jet;
}

Jet2 fd_jet(const Patch& patch, const Vector& u, double h,
            const std::function<Vector(const Vector&)>& value) {
  const int m = patch.param_dim();
  const int n = patch.metric().ambient_dim();
  Jet2 jet;
  jet.u = u;
  jet.method = JetMethod::FD;
  jet.p = value(u);
  jet.d1.resize(n, m);
  jet.d2.assign(m * (m + 1) / 2, Vector(n));

  auto shifted = [&](int i, double di, int j, double dj) {
    Vector v = u;
    v(i) += di;
    if (j >= 0) v(j) += dj;
    return value(v);
  };

  const Vector center = jet.p;
  for (int i = 0; i < m; ++i) {
    Vector plus = shifted(i, h, -1, 0);
    Vector minus = shifted(i, -h, -1, 0);
    jet.d1.col(i) = (plus - minus) / (2 * h);
    jet.d2[Jet2::sym_index(i, i, m)] = (plus - 2 * center + minus) / (h * h);
    for (int j = i + 1; j < m; ++j) {
      Vector pp = shifted(i, h, j, h);
      Vector pm = shifted(i, h, j, -h);
      Vector mp = shifted(i, -h, j, h);
      Vector mm = shifted(i, -h, j, -h);
      jet.d2[Jet2::sym_index(i, j, m)] = (pp - pm - mp + mm) / (4 * h * h);
    }
  }
  return jet;
}

std::pair<SubspaceBasis, bool> tangent_basis(const MetricSpace& ms, const Jet2& jet,
                                             double tol) {
  auto [basis, rank] = orthonormalize(ms, jet.d1, tol);
  return {basis, rank == jet.param_dim()};
}

double fd_crosscheck(const Patch& patch, const Vector& u, double h) {
  JetOptions ad;
  JetOptions fd;
  fd.method = JetMethod::FD;
  fd.fd_step = h;
  Jet2 a = patch.eval_jet2(u, ad);
  Jet2 f = patch.eval_jet2(u, fd);
  double worst = (a.p - f.p).cwiseAbs().maxCoeff();
  worst = std::max(worst, (a.d1 - f.d1).cwiseAbs().maxCoeff());
  for (size_t k = 0; k < a.d2.size(); ++k)
    worst = std::max(worst, (a.d2[k] - f.d2[k]).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace dualform
