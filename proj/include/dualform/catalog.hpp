#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualform/patch.hpp"

namespace dualform {

// Built-in test varieties. Closed-form metadata feeds the fixture tests:
// `known_dual` maps (u, fiber sign) to the dual point for hypersurface
// entries, `known_form_diag` gives the second-fundamental-form matrix
// diagonal on the canonical shared basis together with its dual.
struct CatalogEntry {
  std::string name;
  std::string param_desc;
  int arity = 0;
  std::function<std::shared_ptr<ParamPatch>(const std::vector<double>&)> make;

  std::optional<int> generic_dual_dim;
  std::function<Vector(const Vector&, int)> known_dual;
  std::function<Vector(const std::vector<double>&)> known_form_diag;       // A
  std::function<Vector(const std::vector<double>&)> known_dual_form_diag;  // A_dual
};

const std::vector<CatalogEntry>& catalog();

// `name` as listed in the catalog; throws Error with the parameter
// constraint message on invalid input.
std::shared_ptr<ParamPatch> make_builtin(const std::string& name,
                                         const std::vector<double>& params);

// "name" or "name:p1,p2" as accepted by the CLI.
std::shared_ptr<ParamPatch> make_builtin_spec(const std::string& spec);

}  // namespace dualform
