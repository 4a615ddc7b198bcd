#include "ktgeom/curvature.hpp"

#include "ktgeom/errors.hpp"

#include <array>

namespace ktgeom {

Tensor riemann(const ConnectionField& conn, const Point& p) {
  const int n = p.dim();
  const Christoffel G = conn.coefficients(p);
  const TensorField gamma_field{3, false,
                                [conn](const Point& q) { return conn.coefficients(q).coeff; }};
  const Tensor dG = partial(gamma_field, p, conn.step);  // (a, b, c, d) = ∂_a Γ^d_bc
  Tensor up(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = dG(a, b, c, d) - dG(b, a, c, d);
          for (int e = 0; e < n; ++e) s += G(b, c, e) * G(a, e, d) - G(a, c, e) * G(b, e, d);
          up(a, b, c, d) = s;
        }
  return insert_endomorphism(up, conn.manifold->metric(p), 3);
}

LambdaOmega lambda_omega(const HermitianManifold& m, const Point& p, double step) {
  const Tensor dT = exterior_derivative(torsion_T_field(m, step), p, step);
  const Matrix J = m.complex_structure(p);
  const Matrix g = m.metric(p);
  LambdaOmega out;
  out.lambda = trace_pair(insert_endomorphism(dT, J, 3), 2, 3, g.inverse());
  out.lambda.set_form(true);
  out.h = 0.5 * j_trace(out.lambda, J, orthonormal_frame(g));
  out.type_11_defect =
      max_abs_diff(out.lambda, insert_endomorphism(insert_endomorphism(out.lambda, J, 0), J, 1));
  return out;
}

Tensor ricci_contraction(const Tensor& r) {
  const int n = r.dim();
  Tensor out(n, 2);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r(i, x, y, i);
      out(x, y) = s;
    }
  return out;
}

Tensor j_contraction_last(const Tensor& r, const Matrix& Jhat) {
  const int n = r.dim();
  Tensor out(n, 2, true);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += r(x, y, i, j) * Jhat(j, i);
      out(x, y) = 0.5 * s;
    }
  return out;
}

Tensor j_contraction_first(const Tensor& r, const Matrix& Jhat) {
  const int n = r.dim();
  Tensor out(n, 2, true);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += Jhat(j, i) * r(i, j, x, y);
      out(x, y) = 0.5 * s;
    }
  return out;
}

double j_trace_hat(const Tensor& a, const Matrix& Jhat) {
  double s = 0.0;
  for (int j = 0; j < a.dim(); ++j)
    for (int k = 0; k < a.dim(); ++k) s += Jhat(k, j) * a(k, j);
  return s;
}

Tensor part_11(const Tensor& a, const Matrix& J) {
  Tensor out = a + insert_endomorphism(insert_endomorphism(a, J, 0), J, 1);
  out *= 0.5;
  out.set_form(a.is_form());
  return out;
}

Tensor part_20(const Tensor& a, const Matrix& J) {
  Tensor out = a - insert_endomorphism(insert_endomorphism(a, J, 0), J, 1);
  out *= 0.5;
  out.set_form(a.is_form());
  return out;
}

CurvaturePack curvature_pack(const HermitianManifold& m, const Point& p, double step) {
  CurvaturePack pk;
  const Matrix g = m.metric(p);
  pk.frame = orthonormal_frame(g);
  pk.Jhat = to_frame(m.complex_structure(p), pk.frame);
  pk.R = to_frame(riemann(bismut(m, step), p), pk.frame);
  pk.K = to_frame(riemann(chern(m, step), p), pk.frame);
  pk.Rg = to_frame(riemann(levi_civita(m, step), p), pk.frame);
  pk.ric = ricci_contraction(pk.R);
  pk.ric_g = ricci_contraction(pk.Rg);
  pk.rho = j_contraction_last(pk.R, pk.Jhat);
  pk.rho_D = j_contraction_last(pk.K, pk.Jhat);
  pk.kappa = j_contraction_first(pk.K, pk.Jhat);
  pk.b = j_trace_hat(pk.rho, pk.Jhat);
  pk.u = 0.5 * j_trace_hat(pk.rho_D, pk.Jhat);
  pk.u_kappa = 0.5 * j_trace_hat(pk.kappa, pk.Jhat);
  for (int j = 0; j < p.dim(); ++j) {
    pk.scal += pk.ric(j, j);
    pk.scal_g += pk.ric_g(j, j);
  }
  const LambdaOmega lo = lambda_omega(m, p, step);
  pk.lambda = to_frame(lo.lambda, pk.frame);
  pk.h = lo.h;
  return pk;
}

Tensor weyl_tensor(const Tensor& r) {
  const int n = r.dim();
  if (n < 3) throw ContractError("Weyl tensor needs dimension at least 3");
  const Tensor ric = ricci_contraction(r);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += ric(i, i);
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  const double c1 = 1.0 / (n - 2);
  const double c2 = s / ((n - 1.0) * (n - 2.0));
  Tensor w(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w(i, j, k, l) = r(i, j, k, l) -
                          c1 * (ric(i, l) * d(j, k) - ric(i, k) * d(j, l) + ric(j, k) * d(i, l) -
                                ric(j, l) * d(i, k)) +
                          c2 * (d(i, l) * d(j, k) - d(i, k) * d(j, l));
  return w;
}

SelfDualWeyl weyl_selfdual(const HermitianManifold& m, const Point& p, double step) {
  if (m.dim != 4) throw ContractError("self-dual Weyl tensor is defined in dimension 4 only");
  const Frame f = orthonormal_frame(m.metric(p));
  const Tensor W = weyl_tensor(to_frame(riemann(levi_civita(m, step), p), f));
  const Tensor om = to_frame(kahler_form(m, p), f);
  static constexpr std::array<std::array<int, 2>, 6> kPairs{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Matrix Wop(6, 6);
  Matrix star(6, 6);
  Vector omega(6);
  for (int A = 0; A < 6; ++A) {
    const auto [i, j] = kPairs[static_cast<std::size_t>(A)];
    omega(A) = om(i, j);
    for (int B = 0; B < 6; ++B) {
      const auto [k, l] = kPairs[static_cast<std::size_t>(B)];
      Wop(A, B) = -W(i, j, k, l);
      const std::array<int, 4> perm{k, l, i, j};
      const bool distinct = k != i && k != j && l != i && l != j;
      star(A, B) = distinct ? permutation_sign(perm) : 0.0;
    }
  }
  const Matrix P = 0.5 * (Matrix::Identity(6, 6) + star);
  SelfDualWeyl out;
  out.W_plus = P * Wop * P;
  out.k = 3.0 * omega.dot(out.W_plus * omega);
  return out;
}

}  // namespace ktgeom
