#pragma once

#include <cmath>
#include <vector>

#include "dualform/dual2.hpp"
#include "dualform/metric.hpp"

namespace dualform {
namespace gs {

// Pivoted modified Gram-Schmidt over a generic scalar (double or Dual2).
// A first pass over plain doubles records every decision (processing
// order, kept/dropped, self-product signs) into a GsPlan; replaying the
// plan with Dual2 scalars differentiates the frame without branching on
// non-double values. Replay verifies that the recorded decisions are
// still numerically valid and reports FrameDiscontinuityError otherwise.

struct GsPlan {
  std::vector<int> order;   // processing order of the input columns
  std::vector<char> kept;   // parallel to `order`
  std::vector<int> signs;   // parallel to `order`; valid where kept
};

template <class S>
inline double scalar_value(const S& s) {
  return s.value();
}
template <>
inline double scalar_value<double>(const double& s) {
  return s;
}

template <class S>
inline S sqrt_scalar(const S& s) {
  using std::sqrt;
  return sqrt(s);
}

template <class S>
using Column = std::vector<S>;

template <class S>
S metric_inner(const MetricSpace& ms, const Column<S>& x, const Column<S>& y) {
  S acc = x[0] * y[0];
  const int n = ms.ambient_dim();
  for (int i = 1; i < n; ++i) acc += ms.axis_sign(i) * (x[i] * y[i]);
  return acc;
}

template <class S>
double euclid_norm_value(const Column<S>& x) {
  double acc = 0;
  for (const S& c : x) acc += scalar_value(c) * scalar_value(c);
  return std::sqrt(acc);
}

struct GsOptions {
  double tol = kDefaultTol;
  int n_forced = 0;           // leading columns processed first, in order
  bool forced_must_keep = false;
  const GsPlan* replay = nullptr;
};

template <class S>
struct GsResult {
  std::vector<Column<S>> basis;
  std::vector<int> signs;
  GsPlan plan;
  // Index into `basis` of the j-th kept input column, in processing order.
};

// Core engine. In record mode (opts.replay == nullptr) all decisions are
// taken from the data; in replay mode they are taken from the plan and
// only validated.
template <class S>
GsResult<S> run(const MetricSpace& ms, std::vector<Column<S>> cols, const GsOptions& opts) {
  const int ncols = static_cast<int>(cols.size());
  const double tol = opts.tol;
  const bool replay = opts.replay != nullptr;
  if (replay && static_cast<int>(opts.replay->order.size()) != ncols)
    throw Error("gram-schmidt replay plan does not match column count");

  GsResult<S> res;
  std::vector<char> processed(ncols, 0);

  for (int step = 0; step < ncols; ++step) {
    int pick = -1;
    if (replay) {
      pick = opts.replay->order[step];
    } else if (step < opts.n_forced) {
      pick = step;
    } else {
      double best = -1.0;
      for (int j = opts.n_forced; j < ncols; ++j) {
        if (processed[j]) continue;
        const double nrm = euclid_norm_value(cols[j]);
        if (nrm > best) {
          best = nrm;
          pick = j;
        }
      }
    }
    processed[pick] = 1;
    res.plan.order.push_back(pick);

    Column<S>& r = cols[pick];
    // Two orthogonalization passes against the accepted basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t b = 0; b < res.basis.size(); ++b) {
        S coef = metric_inner(ms, r, res.basis[b]) * double(res.signs[b]);
        for (int i = 0; i < ms.ambient_dim(); ++i) r[i] -= coef * res.basis[b][i];
      }
    }

    const double rn = euclid_norm_value(r);
    S rr = metric_inner(ms, r, r);
    const double rrv = scalar_value(rr);

    if (replay) {
      const bool keep = opts.replay->kept[step] != 0;
      if (keep) {
        const int sign = opts.replay->signs[step];
        if (rn < tol || std::abs(rrv) < tol * tol || (rrv > 0 ? 1 : -1) != sign)
          throw FrameDiscontinuityError(
              "frame discontinuity: frozen pivot order invalid at evaluation point");
        S nrm = sqrt_scalar(rr * double(sign));
        Column<S> b(ms.ambient_dim(), r[0] / nrm);
        for (int i = 0; i < ms.ambient_dim(); ++i) b[i] = r[i] / nrm;
        res.basis.push_back(std::move(b));
        res.signs.push_back(sign);
        res.plan.kept.push_back(1);
        res.plan.signs.push_back(sign);
      } else {
        res.plan.kept.push_back(0);
        res.plan.signs.push_back(0);
      }
      continue;
    }

    if (std::abs(rrv) < tol * tol && rn >= tol)
      throw IndefiniteSpanError("indefinite span: null pivot direction");
    if (rn < tol) {
      if (step < opts.n_forced && opts.forced_must_keep)
        throw NonSmoothJetError("dependent column among required basis vectors");
      res.plan.kept.push_back(0);
      res.plan.signs.push_back(0);
      continue;
    }
    const int sign = rrv > 0 ? 1 : -1;
    S nrm = sqrt_scalar(rr * double(sign));
    Column<S> b(ms.ambient_dim(), r[0] / nrm);
    for (int i = 0; i < ms.ambient_dim(); ++i) b[i] = r[i] / nrm;
    res.basis.push_back(std::move(b));
    res.signs.push_back(sign);
    res.plan.kept.push_back(1);
    res.plan.signs.push_back(sign);
  }
  return res;
}

inline std::vector<Column<double>> columns_from(const Matrix& m) {
  std::vector<Column<double>> cols(m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    cols[j].assign(m.col(j).data(), m.col(j).data() + m.rows());
  }
  return cols;
}

inline Matrix matrix_from(const std::vector<Column<double>>& cols, int rows) {
  Matrix m(rows, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  return m;
}

}  // namespace gs
}  // namespace dualform
