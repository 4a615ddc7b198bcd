#pragma once

#include "ktgeom/tensor.hpp"

#include <functional>

namespace ktgeom {

using ScalarField = std::function<double(const Point&)>;
using MatrixField = std::function<Matrix(const Point&)>;

/// A tensor field on a chart: a deterministic evaluation map plus shape metadata.
struct TensorField {
  int valence = 0;
  bool form = false;
  std::function<Tensor(const Point&)> eval;

  Tensor operator()(const Point& p) const { return eval(p); }
};

TensorField as_field(const ScalarField& f);
/// Covariant (0,2) field from a matrix-valued map.
TensorField as_field(const MatrixField& m, bool form = false);

/// Fourth-order central difference (five-point stencil, reach 2·step):
/// result(k, i_1..i_p) = ∂_k t(i_1..i_p).
Tensor partial(const TensorField& field, const Point& p, double step);

/// Same stencil for a matrix field: result(k, a, b) = ∂_k M(a, b).
Tensor partial(const MatrixField& field, const Point& p, double step);

/// Gradient of a scalar field as a 1-form.
Tensor gradient(const ScalarField& f, const Point& p, double step);

/// Connection coefficients Γ^c_{ab} = dx^c(∇_{∂_a} ∂_b), stored at (a, b, c).
/// The first lower index is the differentiation direction.
struct Christoffel {
  Tensor coeff;

  int dim() const { return coeff.dim(); }
  double operator()(int a, int b, int c) const { return coeff(a, b, c); }
};

/// Levi-Civita coefficients of a metric field from the Koszul formula.
Christoffel metric_christoffel(const MatrixField& metric, const Point& p, double step);

/// (∇t)(X, Y_1..Y_p) = (∇_X t)(Y_1..Y_p) for a covariant field.
Tensor covariant_derivative(const Christoffel& gamma, const TensorField& field, const Point& p,
                            double step);

/// Same as above when ∂t and t at the point are already known.
Tensor covariant_derivative(const Christoffel& gamma, const Tensor& partial_t, const Tensor& t);

}  // namespace ktgeom
