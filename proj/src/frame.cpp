#include "ktgeom/frame.hpp"

#include "ktgeom/errors.hpp"

#include <cmath>

namespace ktgeom {

Frame orthonormal_frame(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n) throw NumericError("metric is not square");
  if (!g.allFinite()) throw NumericError("metric has non-finite entries");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + g.cwiseAbs().maxCoeff())) {
    throw NumericError("metric is not symmetric");
  }
  Matrix e = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    Vector v = e.col(i);
    for (int j = 0; j < i; ++j) {
      const Vector u = e.col(j);
      v -= (u.transpose() * g * v)(0, 0) * u;
    }
    const double nrm2 = (v.transpose() * g * v)(0, 0);
    if (!(nrm2 > 1e-300)) throw NumericError("metric is not positive definite");
    e.col(i) = v / std::sqrt(nrm2);
  }
  return make_frame(e);
}

Frame make_frame(const Matrix& vectors) {
  Frame f;
  f.vectors = vectors;
  f.coframe = vectors.inverse();
  return f;
}

namespace {

// Applies the same n×n matrix to every slot: out_{i..} = Σ t_{a..} M(a,i)...
Tensor transform_all(const Tensor& t, const Matrix& m) {
  Tensor r = t;
  for (int s = 0; s < t.valence(); ++s) r = insert_endomorphism(r, m, s);
  r.set_form(t.is_form());
  return r;
}

}  // namespace

Tensor to_frame(const Tensor& t, const Frame& f) { return transform_all(t, f.vectors); }

Tensor from_frame(const Tensor& t_hat, const Frame& f) { return transform_all(t_hat, f.coframe); }

Matrix to_frame(const Matrix& endomorphism, const Frame& f) {
  return f.coframe * endomorphism * f.vectors;
}

double j_trace(const Tensor& alpha, const Matrix& J, const Frame& f) {
  if (alpha.valence() != 2) throw ContractError("j_trace needs a (0,2)-tensor");
  double s = 0.0;
  for (int i = 0; i < f.dim(); ++i) {
    const Vector e = f.vectors.col(i);
    const Vector je = J * e;
    for (int a = 0; a < alpha.dim(); ++a)
      for (int b = 0; b < alpha.dim(); ++b) s += alpha(a, b) * je(a) * e(b);
  }
  return s;
}

double tensor_norm_sq(const Tensor& t, const Frame& f) {
  const Tensor th = to_frame(t, f);
  double s = 0.0;
  for (double v : th.components()) s += v * v;
  return s;
}

double frame_defect(const Frame& f, const Matrix& g) {
  const Matrix gram = f.vectors.transpose() * g * f.vectors;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace ktgeom
