#pragma once

#include "ktgeom/connection.hpp"

namespace ktgeom {

/// R(X,Y,Z,V) = g(R(X,Y)Z, V) with R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]},
/// coordinate components.
Tensor riemann(const ConnectionField& conn, const Point& p);

/// λ^Ω(X,Y) = Σ dT(X,Y,e_i,Je_i) (coordinate components) and 2h = Σ λ^Ω(Je_i,e_i).
struct LambdaOmega {
  Tensor lambda;
  double h = 0.0;
  double type_11_defect = 0.0;  // ‖λ − λ(J·,J·)‖∞
};
LambdaOmega lambda_omega(const HermitianManifold& m, const Point& p, double step);

/// Every curvature object at one point, in the orthonormal frame `frame`
/// (Gram–Schmidt of g at p). `Jhat` is J in that frame.
struct CurvaturePack {
  Frame frame;
  Matrix Jhat;
  Tensor R;       // Bismut
  Tensor K;       // Chern
  Tensor Rg;      // Levi-Civita
  Tensor ric;     // Ric(X,Y) = Σ R(e_i,X,Y,e_i)
  Tensor ric_g;   // Levi-Civita Ricci tensor
  Tensor rho;     // ½ Σ R(X,Y,e_i,Je_i)
  Tensor rho_D;   // ½ Σ K(X,Y,e_i,Je_i)
  Tensor kappa;   // ½ Σ K(e_i,Je_i,X,Y)
  double b = 0.0;     // Σ ρ(Je_j, e_j)
  double u = 0.0;     // 2u = Σ ρ^D(Je_j, e_j)
  double u_kappa = 0.0;  // 2u computed from κ instead
  double scal = 0.0;     // Σ Ric(e_j, e_j)
  double scal_g = 0.0;
  Tensor lambda;  // λ^Ω
  double h = 0.0;
};

CurvaturePack curvature_pack(const HermitianManifold& m, const Point& p, double step);

/// Frame-component helpers used by the pack and by independent checks.
Tensor ricci_contraction(const Tensor& r_hat);                         // Σ r(e_i,X,Y,e_i)
Tensor j_contraction_last(const Tensor& r_hat, const Matrix& Jhat);    // ½ Σ r(X,Y,e_i,Je_i)
Tensor j_contraction_first(const Tensor& r_hat, const Matrix& Jhat);   // ½ Σ r(e_i,Je_i,X,Y)
/// Σ α(Je_j, e_j) for frame components.
double j_trace_hat(const Tensor& a_hat, const Matrix& Jhat);

/// (1,1) and (2,0)+(0,2) parts of a 2-tensor: ½(α ± α(J·,J·)).
Tensor part_11(const Tensor& a, const Matrix& J);
Tensor part_20(const Tensor& a, const Matrix& J);

/// Weyl tensor of g (frame components) from R^g and its traces.
Tensor weyl_tensor(const Tensor& rg_hat);

/// Self-dual Weyl data in dimension 4. The curvature operator acts on
/// 2-forms by W(α)_ij = −½ Σ W_ijkl α_kl, so the round sphere is positive;
/// W⁺ = P₊ W P₊ with P₊ = ½(1 + *) in the chart orientation, as a 6×6 matrix
/// on the orthonormal basis e_i∧e_j (i<j). k = 3⟨W⁺(Ω), Ω⟩ with the form
/// inner product. Throws ContractError in other dimensions.
struct SelfDualWeyl {
  Matrix W_plus;
  double k = 0.0;
};
SelfDualWeyl weyl_selfdual(const HermitianManifold& m, const Point& p, double step);

}  // namespace ktgeom
