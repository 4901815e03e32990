#include "dualform/metric.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "dualform/gram_schmidt.hpp"

namespace dualform {

MetricSpace::MetricSpace(int ambient_dim, Signature sig) : dim_(ambient_dim), sig_(sig) {
  if (ambient_dim < 2) throw Error("ambient dimension must be at least 2");
}

double MetricSpace::inner(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionMismatch("inner product: vector length does not match ambient dimension");
  double acc = 0;
  for (int i = 0; i < dim_; ++i) acc += axis_sign(i) * x(i) * y(i);
  return acc;
}

SubspaceBasis ambient_basis(const MetricSpace& ms) {
  SubspaceBasis b{ms, Matrix::Identity(ms.ambient_dim(), ms.ambient_dim()), true, {}};
  b.signs.assign(ms.ambient_dim(), 1);
  if (ms.lorentzian()) b.signs.back() = -1;
  return b;
}

std::pair<SubspaceBasis, int> orthonormalize(const MetricSpace& ms, const Matrix& vectors,
                                             double tol) {
  if (vectors.rows() != ms.ambient_dim())
    throw DimensionMismatch("orthonormalize: vector length does not match ambient dimension");
  gs::GsOptions opts;
  opts.tol = tol;
  auto res = gs::run<double>(ms, gs::columns_from(vectors), opts);
  SubspaceBasis basis{ms, gs::matrix_from(res.basis, ms.ambient_dim()), true, res.signs};
  return {basis, basis.dim()};
}

SubspaceBasis complement_within(const MetricSpace& ms, const SubspaceBasis& enclosing,
                                const SubspaceBasis& span, double tol) {
  if (!enclosing.orthonormal || !span.orthonormal)
    throw Error("complement_within expects orthonormal bases");
  // span must sit inside enclosing.
  for (int j = 0; j < span.dim(); ++j) {
    Vector v = span.col(j);
    if ((v - project(ms, v, enclosing)).norm() > 10 * tol)
      throw Error("complement_within: span is not contained in the enclosing subspace");
  }
  std::vector<gs::Column<double>> cols;
  for (int j = 0; j < span.dim(); ++j) {
    Vector v = span.col(j);
    cols.push_back(gs::Column<double>(v.data(), v.data() + v.size()));
  }
  for (int j = 0; j < enclosing.dim(); ++j) {
    Vector v = enclosing.col(j);
    cols.push_back(gs::Column<double>(v.data(), v.data() + v.size()));
  }
  gs::GsOptions opts;
  opts.tol = tol;
  opts.n_forced = span.dim();
  opts.forced_must_keep = true;
  auto res = gs::run<double>(ms, std::move(cols), opts);

  const int want = enclosing.dim() - span.dim();
  const int got = static_cast<int>(res.basis.size()) - span.dim();
  if (got != want) throw Error("complement_within: complement dimension mismatch");
  Matrix out(ms.ambient_dim(), want);
  std::vector<int> signs(want);
  for (int j = 0; j < want; ++j) {
    for (int i = 0; i < ms.ambient_dim(); ++i) out(i, j) = res.basis[span.dim() + j][i];
    signs[j] = res.signs[span.dim() + j];
  }
  return SubspaceBasis{ms, out, true, signs};
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  if (!(a.metric == b.metric)) throw DimensionMismatch("intersect: different metric spaces");
  const MetricSpace& ms = a.metric;
  SubspaceBasis an = a, bn = b;
  if (!a.orthonormal) an = orthonormalize(ms, a.vectors, tol).first;
  if (!b.orthonormal) bn = orthonormalize(ms, b.vectors, tol).first;
  for (int s : an.signs)
    if (s < 0) throw Error("intersect: indefinite subspaces are not supported");
  for (int s : bn.signs)
    if (s < 0) throw Error("intersect: indefinite subspaces are not supported");
  if (an.dim() == 0 || bn.dim() == 0) return SubspaceBasis::empty(ms);

  // Cross-Gram under the metric; singular values are the cosines of the
  // principal angles because both bases are orthonormal and spacelike.
  Matrix cross(an.dim(), bn.dim());
  for (int i = 0; i < an.dim(); ++i)
    for (int j = 0; j < bn.dim(); ++j) cross(i, j) = ms.inner(an.col(i), bn.col(j));
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU);
  int keep = 0;
  while (keep < svd.singularValues().size() && svd.singularValues()(keep) >= 1.0 - tol) ++keep;
  if (keep == 0) return SubspaceBasis::empty(ms);
  Matrix dirs = an.vectors * svd.matrixU().leftCols(keep);
  return orthonormalize(ms, dirs, tol).first;
}

Vector project(const MetricSpace& ms, const Vector& v, const SubspaceBasis& basis) {
  if (!basis.orthonormal) throw Error("project expects an orthonormal basis");
  Vector out = Vector::Zero(ms.ambient_dim());
  for (int j = 0; j < basis.dim(); ++j)
    out += double(basis.signs[j]) * ms.inner(v, basis.col(j)) * basis.col(j);
  return out;
}

SubspaceBasis concat(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (!(a.metric == b.metric)) throw DimensionMismatch("concat: different metric spaces");
  if (!a.orthonormal || !b.orthonormal) throw Error("concat expects orthonormal bases");
  Matrix m(a.metric.ambient_dim(), a.dim() + b.dim());
  m << a.vectors, b.vectors;
  std::vector<int> signs = a.signs;
  signs.insert(signs.end(), b.signs.begin(), b.signs.end());
  return SubspaceBasis{a.metric, m, true, signs};
}

RankDecision svd_rank(const Matrix& a, double ratio) {
  RankDecision d;
  if (a.cols() == 0 || a.rows() == 0) return d;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const int t = static_cast<int>(sv.size());
  if (sv(0) < 1e-13) return d;  // exact-zero map
  for (int i = 0; i < t - 1; ++i) {
    if (sv(i + 1) < 1e-300 || sv(i) / sv(i + 1) >= ratio) {
      d.rank = i + 1;
      d.stable = true;
      return d;
    }
  }
  d.rank = t;
  d.stable = sv(t - 1) / sv(0) >= 1.0 / ratio;
  return d;
}

}  // namespace dualform
