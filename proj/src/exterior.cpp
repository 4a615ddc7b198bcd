#include "ktgeom/exterior.hpp"

#include "ktgeom/errors.hpp"

#include <cmath>
#include <vector>

namespace ktgeom {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Tensor exterior_derivative(const TensorField& alpha, const Point& p, double step) {
  if (!alpha.form) throw ContractError("exterior derivative of a field that is not a form");
  const Tensor da = partial(alpha, p, step);
  const int deg = alpha.valence;
  Tensor out(p.dim(), deg + 1, true);
  auto oc = out.components();
  for (std::size_t k = 0; k < oc.size(); ++k) {
    const MultiIndex idx = out.unflatten(k);
    double s = 0.0;
    for (int i = 0; i <= deg; ++i) {
      MultiIndex src{};
      src[0] = idx[i];
      for (int j = 0, u = 1; j <= deg; ++j)
        if (j != i) src[u++] = idx[j];
      s += ((i % 2) ? -1.0 : 1.0) * da.at(src);
    }
    oc[k] = s;
  }
  return out;
}

Tensor codifferential(const TensorField& alpha, const Point& p, const MatrixField& metric,
                      double step) {
  if (alpha.valence < 1) throw ContractError("codifferential of a function");
  const Christoffel G = metric_christoffel(metric, p, step);
  const Tensor nabla = covariant_derivative(G, alpha, p, step);
  const Matrix ginv = metric(p).inverse();
  Tensor out = trace_pair(nabla, 0, 1, ginv);
  out *= -1.0;
  out.set_form(alpha.form);
  return out;
}

Tensor hodge_star(const Tensor& form, const Matrix& metric, int orientation) {
  const int n = form.dim();
  const int deg = form.valence();
  if (deg > n) throw ContractError("form degree exceeds dimension");
  const Frame f = orthonormal_frame(metric);
  const double sign = orientation >= 0 ? 1.0 : -1.0;
  const Tensor a = to_frame(form, f);
  Tensor star(n, n - deg, true);
  auto sc = star.components();
  const double norm = 1.0 / factorial(deg);
  std::vector<int> full(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < sc.size(); ++k) {
    const MultiIndex out = star.unflatten(k);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double v = a.components()[j];
      if (v == 0.0) continue;
      const MultiIndex in = a.unflatten(j);
      for (int u = 0; u < deg; ++u) full[static_cast<std::size_t>(u)] = in[u];
      for (int u = 0; u < n - deg; ++u) full[static_cast<std::size_t>(deg + u)] = out[u];
      s += v * permutation_sign(full);
    }
    sc[k] = sign * norm * s;
  }
  return from_frame(star, f);
}

double full_inner(const Tensor& a, const Tensor& b, const Frame& f) {
  const Tensor ah = to_frame(a, f);
  const Tensor bh = to_frame(b, f);
  double s = 0.0;
  for (std::size_t k = 0; k < ah.size(); ++k) s += ah.components()[k] * bh.components()[k];
  return s;
}

}  // namespace ktgeom
