#include "ktgeom/classify.hpp"

#include "ktgeom/errors.hpp"
#include "ktgeom/identities.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace ktgeom {

namespace {

void require_points(std::span<const Point> points, const char* what) {
  if (points.empty()) throw PreconditionError(std::string(what) + ": empty point set");
}

// Per-point residual vector, reduced to (max, first maximizer).
Flag reduce(std::span<const Point> points, const std::vector<double>& r, double tol) {
  Flag f;
  f.residual = -1.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] > f.residual) {
      f.residual = r[i];
      f.worst_point = points[i];
    }
  f.value = f.residual <= tol;
  return f;
}

double matrix_max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

// ‖[R(e_x, e_y), Ĵ]‖ over all frame pairs; R(x,y) acts by A_{dc} = R(x,y,c,d).
double curvature_j_commutator(const Tensor& R, const Matrix& Jh) {
  const int n = R.dim();
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Matrix A(n, n);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) A(d, c) = R(x, y, c, d);
      worst = std::max(worst, matrix_max_abs(A * Jh - Jh * A));
    }
  return worst;
}

struct PointFlags {
  double kahler = 0.0, strong = 0.0, almost_strong = 0.0, balanced = 0.0, lck = 0.0, su = 0.0;
};

PointFlags flags_at(const HermitianManifold& m, const Point& p, double h) {
  PointFlags r;
  const Matrix g = m.metric(p);
  const Frame f = orthonormal_frame(g);
  const Matrix Jh = to_frame(m.complex_structure(p), f);
  const Tensor T = to_frame(torsion_T(m, p, h), f);
  const Tensor theta = to_frame(lee_form_field(m, h)(p), f);
  r.kahler = T.max_abs();
  r.balanced = theta.max_abs();
  r.strong = to_frame(exterior_derivative(torsion_T_field(m, h), p, h), f).max_abs();
  r.almost_strong = to_frame(lambda_omega(m, p, h).lambda, f).max_abs();
  Tensor jtheta = insert_endomorphism(theta, Jh, 0);
  jtheta *= -1.0;
  jtheta.set_form(true);
  Tensor lck_rhs = wedge(jtheta, to_frame(kahler_form(m, p), f));
  lck_rhs *= 1.0 / (m.complex_dim() - 1);
  r.lck = max_abs_diff(T, lck_rhs);
  const Tensor R = to_frame(riemann(bismut(m, h), p), f);
  r.su = std::max(j_contraction_last(R, Jh).max_abs(), curvature_j_commutator(R, Jh));
  return r;
}

// Quaternion residual of (J_1, J_2, J_3) at a point.
double quaternion_defect(const std::array<Matrix, 3>& J) {
  const int n = static_cast<int>(J[0].rows());
  const Matrix I = Matrix::Identity(n, n);
  double q = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Matrix lhs = J[a] * J[b];
      if (a == b) {
        lhs += I;
      } else {
        const int c = 3 - a - b;
        const std::array<int, 3> p{a, b, c};
        lhs -= permutation_sign(p) * J[c];
      }
      q = std::max(q, matrix_max_abs(lhs));
    }
  return q;
}

}  // namespace

StructureFlags classify(const HermitianManifold& m, std::span<const Point> points,
                        const ClassifyOptions& opts) {
  require_points(points, "classify");
  std::vector<PointFlags> per(points.size());
  sweep(points.size(), [&](std::size_t i) { per[i] = flags_at(m, points[i], opts.step); },
        opts.exec);
  auto column = [&](double PointFlags::*field) {
    std::vector<double> v(per.size());
    for (std::size_t i = 0; i < per.size(); ++i) v[i] = per[i].*field;
    return reduce(points, v, opts.tolerance);
  };
  StructureFlags s;
  s.tolerance = opts.tolerance;
  s.kahler = column(&PointFlags::kahler);
  s.strong_kt = column(&PointFlags::strong);
  s.almost_strong_kt = column(&PointFlags::almost_strong);
  s.balanced = column(&PointFlags::balanced);
  s.lck = column(&PointFlags::lck);
  s.su_indicator = column(&PointFlags::su);
  if (m.hypercomplex) s.hkt = check_hkt(m, points, opts);
  return s;
}

HktStatus check_hkt(const HermitianManifold& m, std::span<const Point> points,
                    const ClassifyOptions& opts) {
  if (!m.hypercomplex) throw PreconditionError(m.name + ": no hypercomplex structure");
  require_points(points, "check_hkt");
  const std::array<HermitianManifold, 3> members{
      m.with_complex_structure(m.complex_structure, m.name + "/J1"),
      m.with_complex_structure((*m.hypercomplex)[0], m.name + "/J2"),
      m.with_complex_structure((*m.hypercomplex)[1], m.name + "/J3")};
  std::vector<std::array<double, 3>> per(points.size());
  sweep(
      points.size(),
      [&](std::size_t i) {
        const Point& p = points[i];
        const Frame f = orthonormal_frame(m.metric(p));
        std::array<Matrix, 3> J;
        std::array<Tensor, 3> T, theta;
        for (int a = 0; a < 3; ++a) {
          J[a] = members[a].complex_structure(p);
          T[a] = to_frame(torsion_T(members[a], p, opts.step), f);
          theta[a] = to_frame(lee_form_field(members[a], opts.step)(p), f);
        }
        double dt = 0.0, dl = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = a + 1; b < 3; ++b) {
            dt = std::max(dt, max_abs_diff(T[a], T[b]));
            dl = std::max(dl, max_abs_diff(theta[a], theta[b]));
          }
        per[i] = {quaternion_defect(J), dt, dl};
      },
      opts.exec);
  HktStatus h;
  for (const auto& r : per) {
    h.quaternion = std::max(h.quaternion, r[0]);
    h.common_torsion = std::max(h.common_torsion, r[1]);
    h.common_lee = std::max(h.common_lee, r[2]);
  }
  h.hkt = h.quaternion <= opts.tolerance && h.common_torsion <= opts.tolerance &&
          h.common_lee <= opts.tolerance;
  return h;
}

VanishingHypotheses vanishing_hypotheses(const HermitianManifold& m,
                                         std::span<const Point> points,
                                         const ClassifyOptions& opts) {
  require_points(points, "vanishing_hypotheses");
  struct Row {
    double margin, eig, carf, trace;
  };
  std::vector<Row> per(points.size());
  sweep(
      points.size(),
      [&](std::size_t i) {
        const Point& p = points[i];
        const CurvaturePack pk = curvature_pack(m, p, opts.step);
        const Tensor C = to_frame(torsion_C(m, p, opts.step), pk.frame);
        const int n = m.dim;
        double c2 = 0.0;
        for (double v : C.components()) c2 += v * v;
        const double margin = pk.b + c2 - 0.5 * pk.h;
        const Tensor rho11 = part_11(pk.rho, pk.Jhat);
        const Tensor rho_j = insert_endomorphism(rho11, pk.Jhat, 0);
        const Tensor lam_j = insert_endomorphism(pk.lambda, pk.Jhat, 0);
        Matrix Q(n, n);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            double cc = 0.0;
            for (int j = 0; j < n; ++j)
              for (int k = 0; k < n; ++k) cc += C(x, j, k) * C(y, j, k);
            Q(x, y) = rho_j(x, y) + cc - 0.25 * lam_j(x, y);
          }
        const Matrix S = 0.5 * (Q + Q.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
          throw NumericError(m.name + ": eigen-solver failed at " + p.str());
        per[i] = {margin, es.eigenvalues().minCoeff(), std::abs(margin - 2.0 * pk.u),
                  std::abs(S.trace() - margin)};
      },
      opts.exec);
  VanishingHypotheses v;
  v.plurigenera_margin = std::numeric_limits<double>::infinity();
  v.quadratic_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < per.size(); ++i) {
    if (per[i].margin < v.plurigenera_margin) {
      v.plurigenera_margin = per[i].margin;
      v.margin_point = points[i];
    }
    if (per[i].eig < v.quadratic_min_eigenvalue) {
      v.quadratic_min_eigenvalue = per[i].eig;
      v.eigenvalue_point = points[i];
    }
    v.carf_consistency = std::max(v.carf_consistency, per[i].carf);
    v.trace_consistency = std::max(v.trace_consistency, per[i].trace);
  }
  return v;
}

LoopHolonomy loop_holonomy(const HermitianManifold& m, const Point& p, int i, int j, double side,
                           double step, int substeps) {
  if (i == j || i < 0 || j < 0 || i >= m.dim || j >= m.dim)
    throw ContractError("loop_holonomy: need two distinct coordinate axes");
  const ConnectionField conn = bismut(m, step);
  const int n = m.dim;
  // dV/dt = −Γ(ẋ, V): V^c' = −Γ^c_{ab} ẋ^a V^b for every column of V.
  auto rhs = [&](const Point& x, int axis, double speed, const Matrix& V) {
    const Christoffel G = conn.coefficients(x);
    Matrix A(n, n);
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b) A(c, b) = -speed * G(axis, b, c);
    return Matrix(A * V);
  };
  Matrix V = Matrix::Identity(n, n);
  Point x = p;
  const std::array<std::pair<int, double>, 4> legs{
      {{i, side}, {j, side}, {i, -side}, {j, -side}}};
  for (const auto& [axis, len] : legs) {
    const double dt = 1.0 / substeps;
    for (int s = 0; s < substeps; ++s) {
      const Point mid = x.shifted(axis, 0.5 * dt * len);
      const Point end = x.shifted(axis, dt * len);
      const Matrix k1 = rhs(x, axis, len, V);
      const Matrix k2 = rhs(mid, axis, len, V + 0.5 * dt * k1);
      const Matrix k3 = rhs(mid, axis, len, V + 0.5 * dt * k2);
      const Matrix k4 = rhs(end, axis, len, V + dt * k3);
      V += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x = end;
    }
  }
  LoopHolonomy out;
  out.holonomy = V;
  const Matrix J = m.complex_structure(p);
  out.j_commutator = matrix_max_abs(V * J - J * V);
  const Matrix g = m.metric(p);
  const Frame f = orthonormal_frame(g);
  const Matrix D = (Matrix::Identity(n, n) - V) / (side * side);
  double est = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vector e = f.vectors.col(k);
    est += (D * e).dot(g * (J * e));
  }
  out.rho_estimate = 0.5 * est;
  const Tensor R = riemann(conn, p);
  double ref = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vector e = f.vectors.col(k);
    const Vector je = J * e;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) ref += R(i, j, c, d) * e(c) * je(d);
  }
  out.rho_reference = 0.5 * ref;
  return out;
}

}  // namespace ktgeom
