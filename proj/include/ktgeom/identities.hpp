#pragma once

#include "ktgeom/curvature.hpp"
#include "ktgeom/sweep.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ktgeom {

enum class Status { pass, fail, hypothesis_failed };

std::string to_string(Status s);

/// One named check over a point set. pass ⇔ max_residual ≤ tolerance unless
/// the entry is marked hypothesis_failed (then nothing is asserted).
struct ResidualEntry {
  std::string identity_name;
  std::string formula;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::pass;
  Point worst_point;
  std::string note;

  bool pass() const { return status == Status::pass; }
};

struct SuiteOptions {
  double step = 1e-4;
  double tol_curvature = 1e-4;    // identities with second derivatives of g
  double tol_first_order = 1e-6;  // identities with first derivatives only
  Execution exec = Execution::parallel;
};

/// Pointwise residual: max-abs over orthonormal-frame components of LHS − RHS.
using PointResidual = std::function<double(const HermitianManifold&, const Point&, double)>;

struct IdentityCheck {
  std::string name;
  std::string formula;
  bool curvature_bearing = true;
  PointResidual residual;
};

/// Sweeps one check over the points; worst point is the first maximizer.
/// Engine errors are rethrown with the identity name and point attached.
ResidualEntry evaluate(const IdentityCheck& check, const HermitianManifold& m,
                       std::span<const Point> points, const SuiteOptions& opts);

std::vector<ResidualEntry> evaluate_all(const std::vector<IdentityCheck>& checks,
                                        const HermitianManifold& m,
                                        std::span<const Point> points, const SuiteOptions& opts);

/// Levi-Civita Ricci, Ricci-form decomposition and its trace.
std::vector<IdentityCheck> ricci_identity_checks();
/// Skew part of Ric, the J-twisted Ricci relation and the J-defect of ρ.
std::vector<IdentityCheck> ricci_relation_checks();
/// Chern mean curvature, ρ^D vs ρ, the λ^Ω trace and the Chern scalar trace.
std::vector<IdentityCheck> chern_identity_checks();
/// ∇^g T vs ∇T, dT via ∇T, first Bianchi with torsion, R^g vs R and the two
/// J-traced combinations used to derive the Ricci-form decomposition.
std::vector<IdentityCheck> torsion_identity_checks();
/// First-order structure: Lee-form routes, ∇g = ∇J = 0 and Dg = DJ = 0,
/// torsions as defined, type of T, J-linearity of C.
std::vector<IdentityCheck> structure_checks();
/// Curvature symmetries: pair antisymmetry, J-invariance of R, type of ρ^D and λ^Ω.
std::vector<IdentityCheck> curvature_symmetry_checks();

/// The fourteen curvature identities gated by the acceptance suite, in order.
std::vector<IdentityCheck> core_identity_checks();

std::vector<ResidualEntry> verify_ricci_identities(const HermitianManifold& m,
                                                   std::span<const Point> points,
                                                   const SuiteOptions& opts);
std::vector<ResidualEntry> verify_ricci_relations(const HermitianManifold& m,
                                                  std::span<const Point> points,
                                                  const SuiteOptions& opts);
std::vector<ResidualEntry> verify_chern_identities(const HermitianManifold& m,
                                                   std::span<const Point> points,
                                                   const SuiteOptions& opts);
std::vector<ResidualEntry> verify_torsion_identities(const HermitianManifold& m,
                                                     std::span<const Point> points,
                                                     const SuiteOptions& opts);
std::vector<ResidualEntry> verify_structure(const HermitianManifold& m,
                                            std::span<const Point> points,
                                            const SuiteOptions& opts);

/// LCK identities. In dimension 4: T = −*θ = Jθ∧Ω, λ^Ω = −2d†θ Ω, the
/// self-dual Weyl checks. In any dimension: T = Jθ∧Ω/(n−1) and
/// (n−1)λ^Ω = (4−2n)(dJθ + θ∧Jθ + |θ|²Ω) − 2d†θ Ω.
/// Throws PreconditionError unless the manifold is declared LCK.
std::vector<ResidualEntry> verify_lck_identities(const HermitianManifold& m,
                                                 std::span<const Point> points,
                                                 const SuiteOptions& opts);

/// Conformal change of the Chern trace u for g = e^{2f} g_G:
/// 2e^F u = 2u_G + n(n−1)⟨θ_G, dF⟩_G + nΔ_G F with F = 2f and Δ = d†d.
/// Throws PreconditionError without a conformal parent.
ResidualEntry verify_conformal_trace(const HermitianManifold& m, std::span<const Point> points,
                                     const SuiteOptions& opts);

// Pointwise quantities shared with other modules (each call recomputes).

/// Jθ = −θ∘J as a field.
TensorField j_lee_form_field(const HermitianManifold& m, double step);
/// ⟨θ, θ⟩ full-index norm, |T|², |C|².
double lee_norm_sq(const HermitianManifold& m, const Point& p, double step);
double torsion_norm_sq(const HermitianManifold& m, const Point& p, double step);
double chern_torsion_norm_sq(const HermitianManifold& m, const Point& p, double step);
/// d†θ (a function).
double lee_codifferential(const HermitianManifold& m, const Point& p, double step);
/// Chern trace u with 2u = Σ ρ^D(Je_j, e_j).
double chern_trace_u(const HermitianManifold& m, const Point& p, double step);

}  // namespace ktgeom
