#pragma once

#include "ktgeom/domain.hpp"
#include "ktgeom/field.hpp"

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>

namespace ktgeom {

struct HermitianManifold;

/// Records g = e^{2f} g_parent.
struct ConformalParent {
  std::shared_ptr<const HermitianManifold> parent;
  ScalarField factor;
};

/// Chart-based Hermitian geometry (g, J) with optional extras.
struct HermitianManifold {
  std::string name;
  int dim = 0;
  ChartDomain domain;
  MatrixField metric;             // g_ab
  MatrixField complex_structure;  // J^a_b, (JX)^a = J^a_b X^b
  std::optional<ScalarField> dilaton;
  /// J_2, J_3 completing J = J_1 to a hypercomplex triple.
  std::optional<std::array<MatrixField, 2>> hypercomplex;
  std::optional<ConformalParent> conformal_parent;
  /// Declared locally conformally Kähler.
  bool lck = false;
  std::string description;

  int complex_dim() const { return dim / 2; }

  /// Same metric, complex structure replaced (hypercomplex members dropped).
  HermitianManifold with_complex_structure(MatrixField J, std::string new_name) const;
};

/// Worst-case residuals of the defining invariants over a point set.
struct ManifoldInvariants {
  double min_metric_eigenvalue = 0.0;
  double metric_asymmetry = 0.0;
  double j_square = 0.0;         // ‖J² + Id‖∞
  double j_compatibility = 0.0;  // ‖JᵀgJ − g‖∞
  double nijenhuis = 0.0;        // ‖N_J‖∞ in an orthonormal frame
  std::optional<double> quaternion;  // ‖J_aJ_b + δ_ab − ε_abc J_c‖∞
  Point worst_point;
};

ManifoldInvariants check_invariants(const HermitianManifold& m, std::span<const Point> points,
                                    double step);

/// Nijenhuis tensor of J at p, lowered: N(X,Y,Z) = g(N_J(X,Y), Z).
Tensor nijenhuis(const HermitianManifold& m, const Point& p, double step);

}  // namespace ktgeom
