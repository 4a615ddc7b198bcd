#pragma once

#include "ktgeom/exterior.hpp"
#include "ktgeom/manifold.hpp"

#include <string>

namespace ktgeom {

enum class Flavor { levi_civita, bismut, chern };

std::string to_string(Flavor f);

/// Ω(X, Y) = g(X, JY).
Tensor kahler_form(const HermitianManifold& m, const Point& p);
TensorField kahler_form_field(const HermitianManifold& m);
/// Kähler form of an arbitrary compatible complex structure field.
TensorField kahler_form_field(const MatrixField& metric, const MatrixField& J);

Tensor d_omega(const HermitianManifold& m, const Point& p, double step);

/// Bismut torsion T = d^cΩ, T(X,Y,Z) = −dΩ(JX, JY, JZ).
Tensor torsion_T(const HermitianManifold& m, const Point& p, double step);
TensorField torsion_T_field(const HermitianManifold& m, double step);

/// Chern torsion, C(X,Y,Z) = ½(dΩ(JX,Y,Z) + dΩ(X,JY,Z)).
Tensor torsion_C(const HermitianManifold& m, const Point& p, double step);

/// Coefficients of the chosen Hermitian connection from
/// g(∇_X Y, Z) = g(∇^g_X Y, Z) + correction(X, Y, Z).
Christoffel connection_coefficients(const HermitianManifold& m, Flavor flavor, const Point& p,
                                    double step);

/// Lazily evaluated connection on a manifold. Holds a non-owning reference.
struct ConnectionField {
  const HermitianManifold* manifold = nullptr;
  Flavor flavor = Flavor::levi_civita;
  double step = 1e-4;

  Christoffel coefficients(const Point& p) const {
    return connection_coefficients(*manifold, flavor, p, step);
  }
};

ConnectionField levi_civita(const HermitianManifold& m, double step);
ConnectionField bismut(const HermitianManifold& m, double step);
ConnectionField chern(const HermitianManifold& m, double step);

/// Lowered torsion g(∇_X Y − ∇_Y X − [X, Y], Z) of a coefficient set.
Tensor connection_torsion(const Christoffel& gamma, const Matrix& metric);

/// The three expressions for the Lee form:
/// d†Ω(JX), −½ Σ T(JX, e_i, Je_i), Σ C(JX, e_i, Je_i). With C the torsion of
/// the Chern connection, the C-trace carries weight 1, not ½.
struct LeeFormRoutes {
  Tensor via_codifferential;
  Tensor via_bismut_torsion;
  Tensor via_chern_torsion;
  double spread = 0.0;  // largest pairwise component difference
};

LeeFormRoutes lee_form_routes(const HermitianManifold& m, const Point& p, double step);

/// Canonical Lee form d†Ω∘J. Throws ConventionFault if the three routes
/// disagree by more than `agreement`.
Tensor lee_form(const HermitianManifold& m, const Point& p, double step,
                double agreement = 1e-5);

/// Lee form as a field (canonical route only, no cross-check).
TensorField lee_form_field(const HermitianManifold& m, double step);
TensorField lee_form_field(const MatrixField& metric, const MatrixField& J, double step);

/// ∇t for a covariant field: result(X, Y_1..Y_p) = (∇_X t)(Y_1..Y_p).
Tensor covariant_derivative(const ConnectionField& conn, const TensorField& field,
                            const Point& p);

/// ‖∇g‖∞ and ‖∇J‖∞ at a point, in coordinate components.
double metric_defect(const ConnectionField& conn, const Point& p);
double complex_structure_defect(const ConnectionField& conn, const Point& p);

/// (∇_X J) as a (1,2) array: result(a, b, c) = (∇_a J)^b_c.
Tensor complex_structure_derivative(const ConnectionField& conn, const Point& p);

}  // namespace ktgeom
