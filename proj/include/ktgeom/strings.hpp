#pragma once

#include "ktgeom/classify.hpp"
#include "ktgeom/identities.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ktgeom {

// H = T throughout. (H∘H)(X,Y) = Σ_{m,n} H(X,e_m,e_n) H(Y,e_m,e_n).

/// Scal^∇ ≈ 0 and Ric ≈ 0 over the points, and whether the theorem's
/// hypotheses (strong KT, ρ = 0) held so that their agreement is asserted.
struct Th1Consistency {
  bool hypotheses_hold = false;
  bool scal_zero = false;
  bool ric_zero = false;
  double scal_residual = 0.0;
  double ric_residual = 0.0;
  bool agree() const { return scal_zero == ric_zero; }
};

struct StringReport {
  bool constant_dilaton = true;
  double einstein_residual = 0.0;  // ‖Ric^g − ¼H∘H + 2∇^g dφ‖∞
  double flux_residual = 0.0;      // ‖d†T + 2 i_{dφ#}T‖∞
  /// ‖Σ_i ∇^g_{e_i}(e^{−2φ}H)(e_i,·,·) + e^{−2φ}(d†T + 2 i_{dφ#}T)‖∞: the
  /// divergence form of the flux equation against the interior-product form.
  double divergence_form_residual = 0.0;
  std::vector<Tensor> eta;  // η = θ − 2dφ per point, coordinate components
  double eta_parallel_residual = 0.0;  // ‖∇η‖∞ (Bismut)
  double susy_theta_residual = 0.0;    // ‖θ − 2dφ‖∞
  std::optional<Th1Consistency> th1;
};

/// Both string equations for the dilaton `phi` (constant when empty).
StringReport string_residual(const HermitianManifold& m, const std::optional<ScalarField>& phi,
                             std::span<const Point> points, const SuiteOptions& opts);

struct ConstantDilatonForms {
  double ric_residual = 0.0;            // ‖Ric‖∞
  double st1prime_residual = 0.0;       // ‖(∇_Xθ)Y − ¼λ^Ω(X,JY)‖∞
  double nabla_theta_residual = 0.0;    // ‖∇θ‖∞
  double rho_residual = 0.0;            // ‖ρ‖∞, the precondition of the rewriting
  std::string warning;                  // set when ρ is not ≈ 0
};

ConstantDilatonForms constant_dilaton_forms(const HermitianManifold& m,
                                            std::span<const Point> points,
                                            const SuiteOptions& opts);

/// Forms of the string equations in η = θ − 2dφ.
struct EtaForms {
  double stef_residual = 0.0;  // ‖(∇_Xη)Y − ¼λ^Ω(X,JY)‖∞
  double ster_residual = 0.0;  // ‖(∇_Xη)Y − (∇_Yη)X‖∞
  double cnew_residual = 0.0;  // ‖(∇_Xη)Y + (∇_Yη)X − ½λ^Ω(X,JY)‖∞
  std::optional<double> four2_residual;  // dim 4: ‖∇η − ½d†θ g‖∞
  double susy_theta_residual = 0.0;
};

EtaForms eta_forms(const HermitianManifold& m, const std::optional<ScalarField>& phi,
                   std::span<const Point> points, const SuiteOptions& opts);

/// Evaluates the pair; `hypotheses_hold` comes from the flags.
Th1Consistency verify_th1(const HermitianManifold& m, std::span<const Point> points,
                          const StructureFlags& flags, const SuiteOptions& opts);

/// Everything the string module reports for one manifold.
struct StringSuite {
  StringReport constant;                 // φ = const
  std::optional<StringReport> dilaton;   // the manifold's own dilaton, if any
  ConstantDilatonForms constant_forms;
  std::optional<EtaForms> dilaton_forms;
  std::vector<ResidualEntry> entries;
};

/// Runs the string checks and labels each entry. Solution claims are asserted
/// only where their hypotheses hold (from `flags`); otherwise the entry is
/// hypothesis_failed and nothing is asserted:
///   constant dilaton: strong KT, ρ = 0 and Scal^∇ = 0;
///   dilaton with η = 0: almost strong KT, ρ = 0, dθ = 0, θ = 2dφ;
///   string equations ⇔ ∇η = ¼λ^Ω(·,J·): ρ = 0.
/// Identities that need no hypothesis (divergence form) are always asserted.
StringSuite run_string_suite(const HermitianManifold& m, std::span<const Point> points,
                             const StructureFlags& flags, const SuiteOptions& opts);

}  // namespace ktgeom
