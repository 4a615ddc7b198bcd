#pragma once

#include "ktgeom/curvature.hpp"
#include "ktgeom/sweep.hpp"

#include <optional>
#include <span>

namespace ktgeom {

/// A structure flag with the residual it was decided from: value ⇔ residual ≤ tol.
struct Flag {
  bool value = false;
  double residual = 0.0;
  Point worst_point;
};

/// Hypercomplex (HKT) test for a triple (J_1, J_2, J_3).
struct HktStatus {
  bool hkt = false;
  double quaternion = 0.0;      // ‖J_aJ_b + δ_ab − ε_abc J_c‖∞
  double common_torsion = 0.0;  // max ‖T_a − T_b‖ with T_a the Bismut torsion of (g, J_a)
  double common_lee = 0.0;      // max ‖θ_a − θ_b‖
};

struct StructureFlags {
  double tolerance = 0.0;
  Flag kahler;            // T = 0
  Flag strong_kt;         // dT = 0
  Flag almost_strong_kt;  // λ^Ω = 0
  Flag balanced;          // θ = 0
  Flag lck;               // T = Jθ∧Ω/(n−1)
  Flag su_indicator;      // ρ = 0 and [R(X,Y), J] = 0
  std::optional<HktStatus> hkt;
};

struct ClassifyOptions {
  double tolerance = 1e-5;
  double step = 1e-4;
  Execution exec = Execution::parallel;
};

/// Flags from frame residuals maximized over the points. The HKT block is
/// filled only when the manifold carries a hypercomplex triple.
/// Throws PreconditionError on an empty point set.
StructureFlags classify(const HermitianManifold& m, std::span<const Point> points,
                        const ClassifyOptions& opts);

/// Throws PreconditionError if the manifold has no hypercomplex triple.
HktStatus check_hkt(const HermitianManifold& m, std::span<const Point> points,
                    const ClassifyOptions& opts);

/// Hypotheses of the vanishing theorems for plurigenera and holomorphic
/// (n,0)-forms.
struct VanishingHypotheses {
  double plurigenera_margin = 0.0;  // min over points of b + |C|² − ½h
  Point margin_point;
  double quadratic_min_eigenvalue = 0.0;  // min over points of λ_min⟪·,·⟫
  Point eigenvalue_point;
  /// ⟪X,Y⟫ = ρ^{1,1}(JX,Y) + ⟨i_X C, i_Y C⟩ − ¼λ^Ω(JX,Y); its trace is the margin.
  double carf_consistency = 0.0;  // max |margin − 2u| (2u the Chern trace)
  double trace_consistency = 0.0; // max |tr⟪·,·⟫ − margin|
};

VanishingHypotheses vanishing_hypotheses(const HermitianManifold& m,
                                         std::span<const Point> points,
                                         const ClassifyOptions& opts);

/// Bismut parallel transport around the coordinate square p → p + s∂_i →
/// p + s∂_i + s∂_j → p + s∂_j → p (RK4, `substeps` per side).
struct LoopHolonomy {
  Matrix holonomy;            // coordinate components
  double j_commutator = 0.0;  // ‖[H, J]‖∞; the Bismut holonomy lies in U(n)
  double rho_estimate = 0.0;  // ½ Σ g((I−H)/s² e_k, Je_k), → ρ(∂_i, ∂_j) as s → 0
  double rho_reference = 0.0; // ρ(∂_i, ∂_j) from the curvature
};

LoopHolonomy loop_holonomy(const HermitianManifold& m, const Point& p, int i, int j, double side,
                           double step, int substeps = 16);

}  // namespace ktgeom
