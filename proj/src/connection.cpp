#include "ktgeom/connection.hpp"

#include "ktgeom/errors.hpp"

#include <algorithm>
#include <sstream>

namespace ktgeom {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::levi_civita: return "levi_civita";
    case Flavor::bismut: return "bismut";
    case Flavor::chern: return "chern";
  }
  return "unknown";
}

Tensor kahler_form(const HermitianManifold& m, const Point& p) {
  return Tensor::from_matrix(m.metric(p) * m.complex_structure(p), true);
}

TensorField kahler_form_field(const MatrixField& metric, const MatrixField& J) {
  return TensorField{2, true, [metric, J](const Point& p) {
                       return Tensor::from_matrix(metric(p) * J(p), true);
                     }};
}

TensorField kahler_form_field(const HermitianManifold& m) {
  return kahler_form_field(m.metric, m.complex_structure);
}

Tensor d_omega(const HermitianManifold& m, const Point& p, double step) {
  return exterior_derivative(kahler_form_field(m), p, step);
}

Tensor torsion_T(const HermitianManifold& m, const Point& p, double step) {
  Tensor t = insert_endomorphism_all(d_omega(m, p, step), m.complex_structure(p));
  t *= -1.0;
  t.set_form(true);
  return t;
}

TensorField torsion_T_field(const HermitianManifold& m, double step) {
  const HermitianManifold* mp = &m;
  return TensorField{3, true, [mp, step](const Point& p) { return torsion_T(*mp, p, step); }};
}

Tensor torsion_C(const HermitianManifold& m, const Point& p, double step) {
  const Tensor dO = d_omega(m, p, step);
  const Matrix J = m.complex_structure(p);
  Tensor c = insert_endomorphism(dO, J, 0) + insert_endomorphism(dO, J, 1);
  c *= 0.5;
  c.set_form(false);
  return c;
}

Christoffel connection_coefficients(const HermitianManifold& m, Flavor flavor, const Point& p,
                                    double step) {
  Christoffel G = metric_christoffel(m.metric, p, step);
  if (flavor == Flavor::levi_civita) return G;
  Tensor corr;
  if (flavor == Flavor::bismut) {
    corr = torsion_T(m, p, step);
    corr *= 0.5;
  } else {
    corr = insert_endomorphism(d_omega(m, p, step), m.complex_structure(p), 0);
    corr *= 0.5;
  }
  // Raise the last slot of the correction: Γ^d_ab += g^{dc} corr(a, b, c).
  const Matrix ginv = m.metric(p).inverse();
  Tensor raised = insert_endomorphism(corr, ginv, 2);
  G.coeff += raised;
  return G;
}

ConnectionField levi_civita(const HermitianManifold& m, double step) {
  return {&m, Flavor::levi_civita, step};
}
ConnectionField bismut(const HermitianManifold& m, double step) {
  return {&m, Flavor::bismut, step};
}
ConnectionField chern(const HermitianManifold& m, double step) {
  return {&m, Flavor::chern, step};
}

Tensor connection_torsion(const Christoffel& gamma, const Matrix& metric) {
  const int n = gamma.dim();
  Tensor up(n, 3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) up(a, b, c) = gamma(a, b, c) - gamma(b, a, c);
  return insert_endomorphism(up, metric, 2);
}

LeeFormRoutes lee_form_routes(const HermitianManifold& m, const Point& p, double step) {
  LeeFormRoutes r;
  const Matrix J = m.complex_structure(p);
  const Matrix ginv = m.metric(p).inverse();

  const Tensor dd = codifferential(kahler_form_field(m), p, m.metric, step);
  r.via_codifferential = insert_endomorphism(dd, J, 0);

  // Σ_i t(JX, e_i, Je_i) = g^{ab} t(JX, ∂_a, J∂_b)
  auto trace_route = [&](const Tensor& t, double factor) {
    Tensor s = trace_pair(insert_endomorphism(insert_endomorphism(t, J, 2), J, 0), 1, 2, ginv);
    s *= factor;
    return s;
  };
  r.via_bismut_torsion = trace_route(torsion_T(m, p, step), -0.5);
  r.via_chern_torsion = trace_route(torsion_C(m, p, step), 1.0);
  r.spread = std::max({max_abs_diff(r.via_codifferential, r.via_bismut_torsion),
                       max_abs_diff(r.via_codifferential, r.via_chern_torsion),
                       max_abs_diff(r.via_bismut_torsion, r.via_chern_torsion)});
  for (Tensor* t : {&r.via_codifferential, &r.via_bismut_torsion, &r.via_chern_torsion})
    t->set_form(true);
  return r;
}

Tensor lee_form(const HermitianManifold& m, const Point& p, double step, double agreement) {
  LeeFormRoutes r = lee_form_routes(m, p, step);
  if (r.spread > agreement) {
    std::ostringstream os;
    os.precision(10);
    os << "Lee form routes disagree on " << m.name << " at " << p.str() << " (spread "
       << r.spread << "):";
    for (const Tensor* t : {&r.via_codifferential, &r.via_bismut_torsion, &r.via_chern_torsion}) {
      os << " [";
      for (double v : t->components()) os << ' ' << v;
      os << " ]";
    }
    throw ConventionFault(os.str());
  }
  return r.via_codifferential;
}

TensorField lee_form_field(const MatrixField& metric, const MatrixField& J, double step) {
  const TensorField omega = kahler_form_field(metric, J);
  return TensorField{1, true, [metric, J, omega, step](const Point& p) {
                       Tensor t = insert_endomorphism(codifferential(omega, p, metric, step),
                                                      J(p), 0);
                       t.set_form(true);
                       return t;
                     }};
}

TensorField lee_form_field(const HermitianManifold& m, double step) {
  return lee_form_field(m.metric, m.complex_structure, step);
}

Tensor covariant_derivative(const ConnectionField& conn, const TensorField& field,
                            const Point& p) {
  return covariant_derivative(conn.coefficients(p), field, p, conn.step);
}

double metric_defect(const ConnectionField& conn, const Point& p) {
  return covariant_derivative(conn, as_field(conn.manifold->metric), p).max_abs();
}

Tensor complex_structure_derivative(const ConnectionField& conn, const Point& p) {
  const Christoffel G = conn.coefficients(p);
  const Matrix J = conn.manifold->complex_structure(p);
  const Tensor dJ = partial(conn.manifold->complex_structure, p, conn.step);
  const int n = p.dim();
  Tensor out(n, 3);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = dJ(a, b, c);
        for (int d = 0; d < n; ++d) s += G(a, d, b) * J(d, c) - G(a, c, d) * J(b, d);
        out(a, b, c) = s;
      }
  return out;
}

double complex_structure_defect(const ConnectionField& conn, const Point& p) {
  return complex_structure_derivative(conn, p).max_abs();
}

}  // namespace ktgeom
