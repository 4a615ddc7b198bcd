#pragma once

#include "ktgeom/tensor.hpp"

namespace ktgeom {

/// Orthonormal frame at a point. Column i of `vectors` holds the coordinate
/// components of e_i; `coframe` is its inverse (rows are the dual 1-forms).
struct Frame {
  Matrix vectors;
  Matrix coframe;

  int dim() const { return static_cast<int>(vectors.cols()); }
};

/// Gram–Schmidt on the coordinate basis in index order, no pivoting.
/// Throws NumericError unless g is symmetric positive definite.
Frame orthonormal_frame(const Matrix& g);

/// Frame built from arbitrary vectors (assumed orthonormal by the caller).
Frame make_frame(const Matrix& vectors);

/// Components t(e_{i_1}, .., e_{i_p}).
Tensor to_frame(const Tensor& t, const Frame& f);

/// Inverse of to_frame: coordinate components from frame components.
Tensor from_frame(const Tensor& t_hat, const Frame& f);

/// Matrix of an endomorphism in the frame: Â = coframe · A · vectors.
Matrix to_frame(const Matrix& endomorphism, const Frame& f);

/// Σ_i α(J e_i, e_i). Definitions written with Σ α(e_i, J e_i) use the
/// negative of this value.
double j_trace(const Tensor& alpha, const Matrix& J, const Frame& f);

/// Full-index sum Σ t(e_{i_1}, .., e_{i_p})², no combinatorial factor.
double tensor_norm_sq(const Tensor& t, const Frame& f);

/// ‖Gram(frame) − Id‖∞ with respect to g.
double frame_defect(const Frame& f, const Matrix& g);

}  // namespace ktgeom
