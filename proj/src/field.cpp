#include "ktgeom/field.hpp"

#include "ktgeom/errors.hpp"

namespace ktgeom {

TensorField as_field(const ScalarField& f) {
  return {0, true, [f](const Point& p) {
            Tensor t(p.dim(), 0, true);
            t.components()[0] = f(p);
            return t;
          }};
}

TensorField as_field(const MatrixField& m, bool form) {
  return {2, form, [m, form](const Point& p) { return Tensor::from_matrix(m(p), form); }};
}

// Five-point central stencil, f'(x) ≈ [8(f(x+h) − f(x−h)) − (f(x+2h) − f(x−2h))] / 12h.
namespace {
constexpr double kNear = 8.0 / 12.0;
constexpr double kFar = 1.0 / 12.0;
}  // namespace

Tensor partial(const TensorField& field, const Point& p, double step) {
  const int n = p.dim();
  Tensor out(n, field.valence + 1);
  auto oc = out.components();
  const double inv = 1.0 / step;
  for (int k = 0; k < n; ++k) {
    const Tensor p1 = field(p.shifted(k, step));
    const Tensor m1 = field(p.shifted(k, -step));
    const Tensor p2 = field(p.shifted(k, 2.0 * step));
    const Tensor m2 = field(p.shifted(k, -2.0 * step));
    auto a = p1.components();
    auto b = m1.components();
    auto c = p2.components();
    auto d = m2.components();
    const std::size_t stride = a.size();
    for (std::size_t j = 0; j < stride; ++j)
      oc[static_cast<std::size_t>(k) * stride + j] =
          (kNear * (a[j] - b[j]) - kFar * (c[j] - d[j])) * inv;
  }
  return out;
}

Tensor partial(const MatrixField& field, const Point& p, double step) {
  const int n = p.dim();
  Tensor out(n, 3);
  const double inv = 1.0 / step;
  for (int k = 0; k < n; ++k) {
    const Matrix d = (kNear * (field(p.shifted(k, step)) - field(p.shifted(k, -step))) -
                      kFar * (field(p.shifted(k, 2.0 * step)) - field(p.shifted(k, -2.0 * step)))) *
                     inv;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(k, a, b) = d(a, b);
  }
  return out;
}

Tensor gradient(const ScalarField& f, const Point& p, double step) {
  Tensor g(p.dim(), 1, true);
  for (int k = 0; k < p.dim(); ++k)
    g(k) = (kNear * (f(p.shifted(k, step)) - f(p.shifted(k, -step))) -
            kFar * (f(p.shifted(k, 2.0 * step)) - f(p.shifted(k, -2.0 * step)))) /
           step;
  return g;
}

Christoffel metric_christoffel(const MatrixField& metric, const Point& p, double step) {
  const int n = p.dim();
  const Tensor dg = partial(metric, p, step);
  const Matrix ginv = metric(p).inverse();
  // Γ_{c,ab} = ½(∂_a g_bc + ∂_b g_ac − ∂_c g_ab), then raised once.
  Tensor lower(n, 3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        lower(a, b, c) = 0.5 * (dg(a, b, c) + dg(b, a, c) - dg(c, a, b));
  Christoffel G{Tensor(n, 3)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) s += ginv(c, d) * lower(a, b, d);
        G.coeff(a, b, c) = s;
      }
  return G;
}

Tensor covariant_derivative(const Christoffel& gamma, const Tensor& partial_t, const Tensor& t) {
  const int n = t.dim();
  const int p = t.valence();
  if (p + 1 > kMaxValence) throw ContractError("valence too large for covariant derivative");
  Tensor out = partial_t;
  auto oc = out.components();
  for (std::size_t k = 0; k < oc.size(); ++k) {
    MultiIndex idx = out.unflatten(k);
    const int x = idx[0];
    MultiIndex rest{};
    for (int s = 0; s < p; ++s) rest[s] = idx[s + 1];
    double corr = 0.0;
    for (int s = 0; s < p; ++s) {
      const int b = rest[s];
      MultiIndex m = rest;
      for (int d = 0; d < n; ++d) {
        const double G = gamma(x, b, d);
        if (G == 0.0) continue;
        m[s] = d;
        corr += G * t.at(m);
      }
    }
    oc[k] -= corr;
  }
  out.set_form(false);
  return out;
}

Tensor covariant_derivative(const Christoffel& gamma, const TensorField& field, const Point& p,
                            double step) {
  return covariant_derivative(gamma, partial(field, p, step), field(p));
}

}  // namespace ktgeom
