#pragma once

#include "ktgeom/manifold.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ktgeom {

using ManifoldPtr = std::shared_ptr<const HermitianManifold>;

/// Names accepted by get_manifold, in listing order.
std::vector<std::string> catalog_names();

/// Built-in geometry by name. Throws LookupError listing the catalog.
ManifoldPtr get_manifold(const std::string& name);

/// g ↦ e^{2f} g with the same J; records the parent and f.
ManifoldPtr conformal_rescale(const ManifoldPtr& m, ScalarField f, std::string name);

/// Multiplication by i on coordinate pairs (x_1, y_1, x_2, y_2, ...):
/// J∂x_k = ∂y_k, J∂y_k = −∂x_k.
Matrix standard_complex_structure(int dim);

/// Flat ℝ⁴∖{0} on the annulus 0.5 ≤ r ≤ 2 (parent chart of hopf_standard).
ManifoldPtr flat_punctured_space();

/// Wraps a field so that evaluation outside the chart throws DomainError.
MatrixField guarded(const ChartDomain& domain, MatrixField f, const std::string& what);
ScalarField guarded(const ChartDomain& domain, ScalarField f, const std::string& what);

}  // namespace ktgeom
