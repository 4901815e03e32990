#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dualform/errors.hpp"

namespace dualform {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Signature { Euclidean, Lorentzian };

// Ambient (N+1)-dimensional real vector space with its inner product.
// Lorentzian means signature (N,1) with the last coordinate timelike.
class MetricSpace {
 public:
  MetricSpace(int ambient_dim, Signature sig);

  int ambient_dim() const { return dim_; }
  Signature signature() const { return sig_; }
  bool lorentzian() const { return sig_ == Signature::Lorentzian; }

  // +1 for spacelike axes, -1 for the timelike axis.
  double axis_sign(int axis) const {
    return (sig_ == Signature::Lorentzian && axis == dim_ - 1) ? -1.0 : 1.0;
  }

  double inner(const Vector& x, const Vector& y) const;

  bool operator==(const MetricSpace& o) const {
    return dim_ == o.dim_ && sig_ == o.sig_;
  }

 private:
  int dim_;
  Signature sig_;
};

// Ordered list of ambient vectors spanning a subspace. When `orthonormal`
// is set, pairwise inner products vanish and each self-product is +-1;
// `signs` records the self-products.
struct SubspaceBasis {
  MetricSpace metric;
  Matrix vectors;  // ambient_dim x count, columns are the basis vectors
  bool orthonormal = false;
  std::vector<int> signs;

  int dim() const { return static_cast<int>(vectors.cols()); }
  Vector col(int i) const { return vectors.col(i); }

  static SubspaceBasis empty(const MetricSpace& ms) {
    return SubspaceBasis{ms, Matrix(ms.ambient_dim(), 0), true, {}};
  }
};

// Standard basis of the whole space; orthonormal under either signature.
SubspaceBasis ambient_basis(const MetricSpace& ms);

// Pivoted modified Gram-Schmidt under the metric. Returns the orthonormal
// basis and its rank (the number of vectors kept). Throws
// IndefiniteSpanError when a pivot is numerically null: |<r,r>| < tol^2
// while ||r|| >= tol.
std::pair<SubspaceBasis, int> orthonormalize(const MetricSpace& ms,
                                             const Matrix& vectors, double tol);

// Orthonormal basis of the metric-orthogonal complement of `span` inside
// `enclosing`. Dimensions add up; `span` must lie inside `enclosing`.
SubspaceBasis complement_within(const MetricSpace& ms, const SubspaceBasis& enclosing,
                                const SubspaceBasis& span, double tol);

// Intersection via principal angles: singular values of the cross-Gram of
// orthonormal bases; directions with cos(angle) >= 1 - tol are kept.
// Supports positive-definite subspaces (all our tangent intersections).
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol);

// Metric projection onto the span of an orthonormal basis:
// sum_i sign_i <v, b_i> b_i. Idempotent.
Vector project(const MetricSpace& ms, const Vector& v, const SubspaceBasis& basis);

// Concatenate two orthonormal bases known to be mutually orthogonal.
SubspaceBasis concat(const SubspaceBasis& a, const SubspaceBasis& b);

// Numerical rank by singular-value gap. The rank is cut at the first
// consecutive ratio >= `ratio`; `stable` reports whether the decision is
// unambiguous (a clear gap, or no value within 1/ratio of zero).
struct RankDecision {
  int rank = 0;
  bool stable = true;
};
RankDecision svd_rank(const Matrix& a, double ratio = 1e6);

inline constexpr double kDefaultTol = 1e-9;

}  // namespace dualform
