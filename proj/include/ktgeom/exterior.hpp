#pragma once

#include "ktgeom/field.hpp"
#include "ktgeom/frame.hpp"

namespace ktgeom {

/// (dα)(X_0..X_p) = Σ_i (−1)^i ∂_{X_i} α(..X̂_i..) on coordinate fields.
/// Throws ContractError for a field not flagged as a form.
Tensor exterior_derivative(const TensorField& alpha, const Point& p, double step);

/// (d†α)(X_1..X_{p−1}) = −Σ_i (∇^g_{e_i} α)(e_i, X_1..X_{p−1}).
Tensor codifferential(const TensorField& alpha, const Point& p, const MatrixField& metric,
                      double step);

/// Hodge star with the volume form of g; `orientation` = +1 takes the chart's
/// coordinate order as positive. Satisfies α∧*β = ⟨α,β⟩ vol with the form
/// inner product ⟨α,β⟩ = (1/p!) Σ α_{i..} β_{i..}.
Tensor hodge_star(const Tensor& form, const Matrix& metric, int orientation = 1);

/// Σ_k t(e_k, e_k, ...) style full contraction of two equal-valence tensors
/// in an orthonormal frame: ⟨a, b⟩ = Σ a(e_I) b(e_I).
double full_inner(const Tensor& a, const Tensor& b, const Frame& f);

}  // namespace ktgeom
