#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dualform/expr.hpp"
#include "dualform/metric.hpp"

namespace dualform {

// Which quadric the patch lives on. Sphere: (f,f)=+1 Euclidean.
// Hyperbolic: (f,f)=-1 Lorentzian, last coordinate positive (the chosen
// sheet). DeSitter: (f,f)=+1 Lorentzian, where duals of hyperbolic
// subvarieties live.
enum class SheetKind { Sphere, Hyperbolic, DeSitter };

inline double sheet_sign(SheetKind s) { return s == SheetKind::Hyperbolic ? -1.0 : 1.0; }

struct DomainAxis {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
  double period() const { return hi - lo; }
};
using Domain = std::vector<DomainAxis>;

Domain default_angle_domain(int m);  // [0, 2*pi] with declared period, per axis

enum class JetMethod { AD, FD };

struct JetOptions {
  JetMethod method = JetMethod::AD;
  double fd_step = 1e-3;
};

// Point with all first and second partials of the parametrization.
// d2 is stored flat over i <= j; symmetry is exact for AD jets.
struct Jet2 {
  Vector u;
  Vector p;
  Matrix d1;                // ambient_dim x param_dim
  std::vector<Vector> d2;   // size m*(m+1)/2
  JetMethod method = JetMethod::AD;

  int param_dim() const { return static_cast<int>(d1.cols()); }
  const Vector& d2_at(int i, int j) const;
  static int sym_index(int i, int j, int m);
};

// A parametrized piece of a quadric sheet that can produce 2-jets.
class Patch {
 public:
  Patch(MetricSpace ms, Domain domain, SheetKind sheet);
  virtual ~Patch() = default;

  const MetricSpace& metric() const { return ms_; }
  const Domain& domain() const { return domain_; }
  SheetKind sheet() const { return sheet_; }
  int param_dim() const { return static_cast<int>(domain_.size()); }
  // Dimension of the traced set; differs from param_dim for dual sheets.
  virtual int manifold_dim() const { return param_dim(); }
  virtual std::string describe() const = 0;

  // Checks the domain, evaluates the jet, and verifies the sheet
  // constraint |(p,p) - sigma| <= 1e-10 (plus the sheet choice in the
  // hyperbolic case).
  Jet2 eval_jet2(const Vector& u, const JetOptions& opts = {}) const;

 protected:
  virtual Jet2 jet_impl(const Vector& u, const JetOptions& opts) const = 0;
  void check_domain(const Vector& u, double margin) const;

 private:
  MetricSpace ms_;
  Domain domain_;
  SheetKind sheet_;
};

// Expression-backed patch: coordinates are DSL expressions in the
// declared parameters.
class ParamPatch : public Patch {
 public:
  ParamPatch(MetricSpace ms, Domain domain, SheetKind sheet, std::vector<ExprPtr> coords,
             std::vector<std::string> params, std::string description = {});

  const std::vector<ExprPtr>& coords() const { return coords_; }
  const std::vector<std::string>& param_names() const { return params_; }
  std::string describe() const override;

  Vector value(const Vector& u) const;
  // f and all df/du_i evaluated as Dual2 scalars (symbolic first
  // derivatives, AD on top); used to differentiate normal frames.
  void eval_dual(const std::vector<Dual2>& u, int nvars, std::vector<Dual2>* f,
                 std::vector<std::vector<Dual2>>* df) const;

 protected:
  Jet2 jet_impl(const Vector& u, const JetOptions& opts) const override;

 private:
  const std::vector<ExprPtr>& d1_exprs() const;

  std::vector<ExprPtr> coords_;
  std::vector<std::string> params_;
  std::string description_;
  mutable std::vector<ExprPtr> d1_cache_;  // [param * n + coord]
};

// Orthonormal tangent basis from the jet; smooth iff the first partials
// have full rank m.
std::pair<SubspaceBasis, bool> tangent_basis(const MetricSpace& ms, const Jet2& jet,
                                             double tol);

// Max discrepancy between AD and central-difference jets; O(h^2).
double fd_crosscheck(const Patch& patch, const Vector& u, double h);

Jet2 fd_jet(const Patch& patch, const Vector& u, double h,
            const std::function<Vector(const Vector&)>& value);

}  // namespace dualform
