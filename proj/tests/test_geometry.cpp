#include "test_manifolds.hpp"

#include "ktgeom/catalog.hpp"
#include "ktgeom/connection.hpp"
#include "ktgeom/curvature.hpp"
#include "ktgeom/errors.hpp"
#include "ktgeom/identities.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace ktgeom;

namespace {

double r_sq(const Point& p) {
  double s = 0;
  for (double x : p.coords()) s += x * x;
  return s;
}

// Ω0 = dx1∧dy1 + dx2∧dy2 components.
double omega0(int a, int b) {
  if (a / 2 != b / 2 || a == b) return 0.0;
  return a % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

TEST_SUITE("manifold_catalog") {
  TEST_CASE("catalog lists seven entries and rejects unknown names") {
    CHECK(catalog_names().size() == 7);
    try {
      get_manifold("klein_bottle");
      FAIL("expected LookupError");
    } catch (const LookupError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("klein_bottle") != std::string::npos);
      CHECK(msg.find("hopf_standard") != std::string::npos);
    }
  }

  TEST_CASE("defining invariants hold on every entry") {
    for (const auto& name : catalog_names()) {
      CAPTURE(name);
      const auto m = get_manifold(name);
      const auto pts = sample_points(m->domain, 8, 3);
      const ManifoldInvariants inv = check_invariants(*m, pts, 1e-4);
      CHECK(inv.min_metric_eigenvalue > 0);
      CHECK(inv.j_square < 1e-12);
      CHECK(inv.j_compatibility < 1e-12);
      CHECK(inv.nijenhuis < 1e-6);
      if (m->hypercomplex) CHECK(*inv.quaternion < 1e-12);
    }
  }

  TEST_CASE("Nijenhuis tensor detects a non-integrable structure") {
    const auto m = testing::twisted_almost_complex();
    const auto pts = sample_points(m->domain, 4, 1);
    CHECK(check_invariants(*m, pts, 1e-4).nijenhuis > 1e-2);
  }

  TEST_CASE("sampling is deterministic and stays inside the chart") {
    const auto m = get_manifold("hopf_standard");
    const auto a = sample_points(m->domain, 16, 9), b = sample_points(m->domain, 16, 9);
    const auto c = sample_points(m->domain, 16, 10);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (int k = 0; k < 4; ++k) CHECK(a[i][k] == b[i][k]);
      differs = differs || a[i][0] != c[i][0];
      const double r = std::sqrt(r_sq(a[i]));
      CHECK(r >= 0.6 - 1e-12);
      CHECK(r <= 1.9 + 1e-12);
    }
    CHECK(differs);
  }

  TEST_CASE("fields refuse points outside the chart") {
    const auto m = get_manifold("hopf_standard");
    CHECK_THROWS_AS(m->metric(Point{0.1, 0, 0, 0}), DomainError);
    const auto s = get_manifold("su2xu1");
    CHECK_THROWS_AS(s->metric(Point{0.05, 1, 1, 0}), DomainError);
  }

  TEST_CASE("Hopf Lee form follows the conformal change law") {
    // g = e^{2f} δ with f = −ln r and n = 2: θ = 2(n−1) df = −2x/r².
    const auto m = get_manifold("hopf_standard");
    for (const Point& p : sample_points(m->domain, 6, 2)) {
      const Tensor th = lee_form(*m, p, 1e-4);
      for (int a = 0; a < 4; ++a) CHECK(th(a) == doctest::Approx(-2 * p[a] / r_sq(p)).epsilon(1e-8));
      CHECK(lee_norm_sq(*m, p, 1e-4) == doctest::Approx(4.0).epsilon(1e-8));
    }
  }

  TEST_CASE("conf_torus_6 Lee form is 4 df") {
    const auto m = get_manifold("conf_torus_6");
    for (const Point& p : sample_points(m->domain, 4, 2)) {
      const Tensor th = lee_form(*m, p, 1e-4);
      CHECK(th(0) == doctest::Approx(4 * 0.3 * std::cos(p[0]) * std::cos(p[2])).epsilon(1e-8));
      CHECK(th(2) == doctest::Approx(-4 * 0.3 * std::sin(p[0]) * std::sin(p[2])).epsilon(1e-8));
      CHECK(std::abs(th(1)) < 1e-9);
    }
  }

  TEST_CASE("Hopf and su2xu1 are the same geometry in different charts") {
    const auto h = get_manifold("hopf_standard");
    const auto s = get_manifold("su2xu1");
    const Point ph = sample_points(h->domain, 1, 5)[0];
    const Point ps = sample_points(s->domain, 1, 5)[0];
    CHECK(lee_norm_sq(*h, ph, 1e-4) == doctest::Approx(lee_norm_sq(*s, ps, 1e-4)).epsilon(1e-6));
    CHECK(torsion_norm_sq(*h, ph, 1e-4) == doctest::Approx(torsion_norm_sq(*s, ps, 1e-4)).epsilon(1e-6));
    CHECK(std::abs(curvature_pack(*h, ph, 1e-4).scal - curvature_pack(*s, ps, 1e-4).scal) < 1e-4);
  }
}

TEST_SUITE("connections") {
  TEST_CASE("Hopf dOmega against the symbolic derivative") {
    // Ω = −r⁻² Ω0, so dΩ = 2r⁻⁴ (Σ x_a dx_a) ∧ Ω0.
    const auto m = get_manifold("hopf_standard");
    for (const Point& p : {Point{1, 0, 0, 0}, Point{0.4, -0.7, 0.3, 0.6}}) {
      const Tensor d = d_omega(*m, p, 1e-4);
      const double s = 2 / (r_sq(p) * r_sq(p));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c) {
            const double expect =
                s * (p[a] * omega0(b, c) - p[b] * omega0(a, c) + p[c] * omega0(a, b));
            CHECK(d(a, b, c) == doctest::Approx(expect).epsilon(1e-9));
          }
    }
  }

  TEST_CASE("Kähler form sign") {
    const auto m = get_manifold("flat_torus_4");
    const Tensor om = kahler_form(*m, Point{1, 1, 1, 1});
    CHECK(om(0, 1) == doctest::Approx(-1.0));  // g(∂x, J∂y) = g(∂x, −∂x)
  }

  TEST_CASE("Bismut and Chern are Hermitian, Levi-Civita is not on Hopf") {
    const auto m = get_manifold("hopf_standard");
    const Point p{0.8, 0.2, -0.5, 0.4};
    CHECK(metric_defect(bismut(*m, 1e-4), p) < 1e-8);
    CHECK(complex_structure_defect(bismut(*m, 1e-4), p) < 1e-8);
    CHECK(complex_structure_defect(chern(*m, 1e-4), p) < 1e-8);
    CHECK(metric_defect(levi_civita(*m, 1e-4), p) < 1e-8);
    CHECK(complex_structure_defect(levi_civita(*m, 1e-4), p) > 0.1);
  }

  TEST_CASE("connection torsions reproduce T and C") {
    const auto m = get_manifold("conf_torus_6");
    const Point p = sample_points(m->domain, 1, 4)[0];
    const Matrix g = m->metric(p);
    CHECK(max_abs_diff(connection_torsion(connection_coefficients(*m, Flavor::bismut, p, 1e-4), g),
                       torsion_T(*m, p, 1e-4)) < 1e-8);
    CHECK(max_abs_diff(connection_torsion(connection_coefficients(*m, Flavor::chern, p, 1e-4), g),
                       torsion_C(*m, p, 1e-4)) < 1e-8);
    CHECK(connection_torsion(connection_coefficients(*m, Flavor::levi_civita, p, 1e-4), g).max_abs() < 1e-8);
  }

  TEST_CASE("codifferential agrees with -*d* in dimension 4") {
    const auto m = get_manifold("hopf_standard");
    const Point p{0.9, -0.3, 0.2, 0.6};
    const double h = 1e-4;
    const TensorField theta = lee_form_field(*m, h);
    const MatrixField g = m->metric;
    const TensorField star_theta{3, true, [theta, g](const Point& q) { return hodge_star(theta(q), g(q)); }};
    Tensor via_star = hodge_star(exterior_derivative(star_theta, p, h), g(p));
    via_star *= -1.0;
    CHECK(std::abs(via_star.components()[0] - codifferential(theta, p, g, h).components()[0]) < 1e-6);

    const TensorField omega = kahler_form_field(*m);
    const TensorField star_omega{2, true, [omega, g](const Point& q) { return hodge_star(omega(q), g(q)); }};
    Tensor via_star2 = hodge_star(exterior_derivative(star_omega, p, h), g(p));
    via_star2 *= -1.0;
    CHECK(max_abs_diff(via_star2, codifferential(omega, p, g, h)) < 1e-6);
  }

  TEST_CASE("Hopf torsion is -*theta") {
    const auto m = get_manifold("hopf_standard");
    const Point p{-0.6, 0.5, 0.9, 0.1};
    Tensor rhs = hodge_star(lee_form(*m, p, 1e-4), m->metric(p));
    rhs *= -1.0;
    CHECK(max_abs_diff(torsion_T(*m, p, 1e-4), rhs) < 1e-6);
  }

  TEST_CASE("Lee-form routes agree; a zero agreement budget raises the fault") {
    const auto m = get_manifold("conf_torus_6");
    const Point p = sample_points(m->domain, 1, 8)[0];
    CHECK(lee_form_routes(*m, p, 1e-4).spread < 1e-8);
    CHECK_THROWS_AS(lee_form(*m, p, 1e-4, -1.0), ConventionFault);
  }

  TEST_CASE("Hopf orthonormal frame at r = 2") {
    const auto m = get_manifold("hopf_standard");
    const Matrix g = m->metric(Point{2, 0, 0, 0});
    CHECK(frame_defect(orthonormal_frame(g), g) < 1e-10);
  }
}

TEST_SUITE("curvature") {
  TEST_CASE("Hopf Levi-Civita curvature is that of R x S3") {
    // Ric^g vanishes on the radial direction and equals 2g on the sphere factor.
    const auto m = get_manifold("hopf_standard");
    const Point p{0.7, 0.4, -0.6, 0.3};
    const Tensor R = riemann(levi_civita(*m, 1e-4), p);
    const Tensor ric = trace_pair(R, 0, 3, m->metric(p).inverse());
    Vector radial(4), tangent(4);
    for (int a = 0; a < 4; ++a) radial(a) = p[a];
    tangent << -p[1], p[0], -p[3], p[2];  // i·x, orthogonal to x
    auto q = [&](const Vector& v) {
      double s = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += ric(a, b) * v(a) * v(b);
      return s;
    };
    const Matrix g = m->metric(p);
    CHECK(std::abs(q(radial)) < 1e-6);
    CHECK(q(tangent) == doctest::Approx(2 * tangent.dot(g * tangent)).epsilon(1e-6));
    CHECK(curvature_pack(*m, p, 1e-4).scal_g == doctest::Approx(6.0).epsilon(1e-6));
  }

  TEST_CASE("Hopf traces: b = 0, 2u = |C|^2 = 8, Bismut Ricci flat") {
    const auto m = get_manifold("hopf_standard");
    const Point p{0.7, 0.4, -0.6, 0.3};
    const CurvaturePack pk = curvature_pack(*m, p, 1e-4);
    CHECK(std::abs(pk.b) < 1e-6);
    CHECK(2 * pk.u == doctest::Approx(chern_torsion_norm_sq(*m, p, 1e-4)).epsilon(1e-6));
    CHECK(chern_torsion_norm_sq(*m, p, 1e-4) == doctest::Approx(8.0).epsilon(1e-8));
    CHECK(pk.ric.max_abs() < 1e-6);
    CHECK(pk.rho.max_abs() < 1e-6);
  }

  TEST_CASE("self-dual Weyl vanishes on conformally flat surfaces and is dimension-checked") {
    for (const char* name : {"hopf_standard", "conf_torus_4", "su2xu1"}) {
      const auto m = get_manifold(name);
      const Point p = sample_points(m->domain, 1, 1)[0];
      const SelfDualWeyl w = weyl_selfdual(*m, p, 1e-4);
      CHECK(w.W_plus.cwiseAbs().maxCoeff() < 1e-5);
    }
    const auto m6 = get_manifold("conf_torus_6");
    CHECK_THROWS_AS(weyl_selfdual(*m6, sample_points(m6->domain, 1, 1)[0], 1e-4), ContractError);
  }

  TEST_CASE("flat torus curvatures vanish exactly") {
    const auto m = get_manifold("flat_torus_6");
    const CurvaturePack pk = curvature_pack(*m, Point{1, 2, 3, 4, 5, 6}, 1e-4);
    CHECK(pk.R.max_abs() == 0.0);
    CHECK(pk.Rg.max_abs() == 0.0);
    CHECK(pk.lambda.max_abs() == 0.0);
  }
}
