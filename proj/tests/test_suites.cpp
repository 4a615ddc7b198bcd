#include "test_manifolds.hpp"

#include "ktgeom/classify.hpp"
#include "ktgeom/errors.hpp"
#include "ktgeom/identities.hpp"
#include "ktgeom/report.hpp"
#include "ktgeom/strings.hpp"

#include <doctest.h>

#include <atomic>
#include <string>

using namespace ktgeom;

namespace {

const ResidualEntry& find(const std::vector<ResidualEntry>& v, const std::string& name) {
  for (const auto& e : v)
    if (e.identity_name == name) return e;
  FAIL("missing entry " << name);
  return v.front();
}

SuiteOptions serial_opts() {
  SuiteOptions o;
  o.exec = Execution::serial;
  return o;
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("lowest failing index is rethrown on both paths") {
    for (Execution ex : {Execution::serial, Execution::parallel}) {
      try {
        sweep(8, [](std::size_t i) {
          if (i == 5) throw NumericError("five");
          if (i == 3) throw DomainError("three");
        }, ex);
        FAIL("expected a throw");
      } catch (const DomainError& e) {
        CHECK(std::string(e.what()) == "three");
      }
    }
  }

  TEST_CASE("every index runs exactly once") {
    std::vector<int> hits(100, 0);
    sweep(hits.size(), [&](std::size_t i) { hits[i] += 1; }, Execution::parallel);
    for (int h : hits) CHECK(h == 1);
  }

  TEST_CASE("serial and parallel residuals are bit-identical") {
    const auto m = get_manifold("conf_torus_4");
    const auto pts = sample_points(m->domain, 6, 11);
    SuiteOptions par;
    par.exec = Execution::parallel;
    const auto a = verify_ricci_identities(*m, pts, serial_opts());
    const auto b = verify_ricci_identities(*m, pts, par);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].max_residual == b[i].max_residual);
  }
}

TEST_SUITE("identity_suite") {
  TEST_CASE("core identities hold on a generic non-LCK Hermitian 6-manifold") {
    const auto m = testing::generic_hermitian_6();
    const auto pts = sample_points(m->domain, 4, 1);
    for (const auto& e : evaluate_all(core_identity_checks(), *m, pts, serial_opts())) {
      CAPTURE(e.identity_name);
      CAPTURE(e.max_residual);
      CHECK(e.pass());
    }
    for (const auto& e : verify_structure(*m, pts, serial_opts())) {
      CAPTURE(e.identity_name);
      CAPTURE(e.max_residual);
      CHECK(e.pass());
    }
  }

  TEST_CASE("generic manifold has nonzero curvature data, so the check is not vacuous") {
    const auto m = testing::generic_hermitian_6();
    const Point p = sample_points(m->domain, 1, 1)[0];
    const CurvaturePack pk = curvature_pack(*m, p, 1e-4);
    CHECK(pk.rho.max_abs() > 1e-2);
    CHECK(pk.lambda.max_abs() > 1e-2);
    CHECK(torsion_C(*m, p, 1e-4).max_abs() > 1e-2);
  }

  TEST_CASE("LCK checks demand an LCK manifold; conformal check demands a parent") {
    const auto m = testing::generic_hermitian_6();
    const auto pts = sample_points(m->domain, 1, 1);
    CHECK_THROWS_AS(verify_lck_identities(*m, pts, serial_opts()), PreconditionError);
    CHECK_THROWS_AS(verify_conformal_trace(*m, pts, serial_opts()), PreconditionError);
  }

  TEST_CASE("errors carry manifold, identity and point") {
    const auto m = get_manifold("hopf_standard");
    const std::vector<Point> pts{Point{0.1, 0.0, 0.0, 0.0}};
    try {
      evaluate(core_identity_checks().front(), *m, pts, serial_opts());
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("hopf_standard") != std::string::npos);
      CHECK(msg.find(core_identity_checks().front().name) != std::string::npos);
      CHECK(msg.find("0.1") != std::string::npos);
    }
  }

  TEST_CASE("LCK lambda formula as stated holds for n = 2; the variant holds for n = 3") {
    const auto m4 = get_manifold("conf_torus_4");
    const auto m6 = get_manifold("conf_torus_6");
    const auto p4 = sample_points(m4->domain, 4, 2);
    const auto p6 = sample_points(m6->domain, 4, 2);
    const auto e4 = verify_lck_identities(*m4, p4, serial_opts());
    const auto e6 = verify_lck_identities(*m6, p6, serial_opts());
    CHECK(find(e4, "lck_lambda").pass());
    CHECK(find(e4, "lck_lambda_variant").pass());
    CHECK(find(e6, "lck_lambda_variant").pass());
    CHECK(find(e6, "lck_lambda").status == Status::fail);
    CHECK(find(e6, "lck_torsion").pass());
  }

  TEST_CASE("wrong-sign control: perturbing the Ricci-form identity is detected") {
    // The check is only meaningful if flipping a term breaks it.
    const auto m = get_manifold("conf_torus_6");
    const Point p = sample_points(m->domain, 1, 3)[0];
    const CurvaturePack pk = curvature_pack(*m, p, 1e-4);
    const Tensor djtheta = to_frame(exterior_derivative(j_lee_form_field(*m, 1e-4), p, 1e-4), pk.frame);
    CHECK(max_abs_diff(pk.rho_D, pk.rho + djtheta) < 1e-6);
    CHECK(max_abs_diff(pk.rho_D, pk.rho - djtheta) > 1e-2);
  }
}

TEST_SUITE("classifiers") {
  ClassifyOptions copts() {
    ClassifyOptions o;
    o.exec = Execution::serial;
    return o;
  }

  TEST_CASE("flat torus has every flag") {
    const auto m = get_manifold("flat_torus_4");
    const auto s = classify(*m, sample_points(m->domain, 4, 0), copts());
    CHECK(s.kahler.value);
    CHECK(s.strong_kt.value);
    CHECK(s.almost_strong_kt.value);
    CHECK(s.balanced.value);
    CHECK(s.su_indicator.value);
    CHECK_FALSE(s.hkt.has_value());
  }

  TEST_CASE("Hopf and conformal torus flags") {
    const auto h = get_manifold("hopf_standard");
    const auto s = classify(*h, sample_points(h->domain, 8, 0), copts());
    CHECK_FALSE(s.kahler.value);
    CHECK(s.strong_kt.value);
    CHECK_FALSE(s.balanced.value);
    CHECK(s.lck.value);
    CHECK(s.su_indicator.value);
    const auto c = get_manifold("conf_torus_4");
    const auto t = classify(*c, sample_points(c->domain, 8, 0), copts());
    CHECK(t.lck.value);
    CHECK_FALSE(t.almost_strong_kt.value);
  }

  TEST_CASE("generic manifold is not LCK") {
    const auto m = testing::generic_hermitian_6();
    const auto s = classify(*m, sample_points(m->domain, 2, 0), copts());
    CHECK_FALSE(s.lck.value);
    CHECK_FALSE(s.kahler.value);
    CHECK(s.lck.residual > 1e-2);
  }

  TEST_CASE("flags are monotone in the tolerance") {
    const auto m = get_manifold("su2xu1");
    const auto pts = sample_points(m->domain, 6, 0);
    ClassifyOptions tight = copts(), loose = copts();
    tight.tolerance = 1e-6;
    loose.tolerance = 1e-3;
    const auto a = classify(*m, pts, tight), b = classify(*m, pts, loose);
    for (auto f : {&StructureFlags::kahler, &StructureFlags::strong_kt, &StructureFlags::almost_strong_kt,
                   &StructureFlags::balanced, &StructureFlags::lck, &StructureFlags::su_indicator})
      if ((a.*f).value) CHECK((b.*f).value);
  }

  TEST_CASE("HKT: Hopf with its triple, flat hyper-Kähler torus, missing triple") {
    const auto hk = get_manifold("hopf_hkt");
    const auto h = check_hkt(*hk, sample_points(hk->domain, 6, 0), copts());
    CHECK(h.hkt);
    const auto flat = testing::flat_hyperkahler_torus();
    CHECK(check_hkt(*flat, sample_points(flat->domain, 2, 0), copts()).hkt);
    const auto hs = get_manifold("hopf_standard");
    CHECK_THROWS_AS(check_hkt(*hs, sample_points(hs->domain, 2, 0), copts()), PreconditionError);
    CHECK_THROWS_AS(classify(*hs, std::vector<Point>{}, copts()), PreconditionError);
  }

  TEST_CASE("vanishing-theorem hypotheses") {
    const auto f = get_manifold("flat_torus_4");
    const auto vf = vanishing_hypotheses(*f, sample_points(f->domain, 2, 0), copts());
    CHECK(vf.plurigenera_margin == 0.0);
    CHECK(vf.quadratic_min_eigenvalue == 0.0);
    // On Hopf ρ = 0 and λ^Ω = 0, so the margin is min |C|² and ⟪X,X⟫ = |i_X C|² ≥ 0.
    const auto h = get_manifold("hopf_standard");
    const auto pts = sample_points(h->domain, 6, 0);
    const auto vh = vanishing_hypotheses(*h, pts, copts());
    double min_c2 = 1e300;
    for (const auto& p : pts) min_c2 = std::min(min_c2, chern_torsion_norm_sq(*h, p, 1e-4));
    CHECK(vh.plurigenera_margin == doctest::Approx(min_c2).epsilon(1e-6));
    CHECK(vh.quadratic_min_eigenvalue >= -1e-6);
    CHECK(vh.carf_consistency < 1e-6);
  }

  TEST_CASE("loop holonomy preserves J and approaches the Ricci form") {
    const auto m = get_manifold("conf_torus_6");
    const Point p = sample_points(m->domain, 1, 0)[0];
    const auto a = loop_holonomy(*m, p, 0, 1, 2e-2, 1e-4);
    const auto b = loop_holonomy(*m, p, 0, 1, 1e-2, 1e-4);
    CHECK(b.j_commutator < 1e-8);
    CHECK(std::abs(b.rho_estimate - b.rho_reference) < 0.6 * std::abs(a.rho_estimate - a.rho_reference));
    CHECK(std::abs(b.rho_reference) > 1e-2);
  }
}

TEST_SUITE("string_equations") {
  TEST_CASE("flat torus with constant dilaton solves everything") {
    const auto m = get_manifold("flat_torus_4");
    const auto r = string_residual(*m, std::nullopt, sample_points(m->domain, 2, 0), serial_opts());
    CHECK(r.constant_dilaton);
    CHECK(r.einstein_residual == 0.0);
    CHECK(r.flux_residual == 0.0);
  }

  TEST_CASE("Hopf: constant dilaton, supersymmetric dilaton, eta = theta when constant") {
    const auto m = get_manifold("hopf_standard");
    const auto pts = sample_points(m->domain, 6, 0);
    const auto c = string_residual(*m, std::nullopt, pts, serial_opts());
    CHECK(c.einstein_residual < 1e-4);
    CHECK(c.flux_residual < 1e-4);
    CHECK(c.eta_parallel_residual < 1e-4);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(max_abs_diff(c.eta[i], lee_form(*m, pts[i], 1e-4)) < 1e-12);
    const auto e = eta_forms(*m, m->dilaton, pts, serial_opts());
    CHECK(e.susy_theta_residual < 1e-5);
    CHECK(e.stef_residual < 1e-4);
    const auto cf = constant_dilaton_forms(*m, pts, serial_opts());
    CHECK(cf.ric_residual < 1e-4);
    CHECK(cf.st1prime_residual < 1e-4);
    CHECK(cf.nabla_theta_residual < 1e-4);
    CHECK(cf.warning.empty());
  }

  TEST_CASE("conf_torus_4 is a labeled negative example") {
    const auto m = get_manifold("conf_torus_4");
    const auto pts = sample_points(m->domain, 6, 0);
    ClassifyOptions co;
    co.exec = Execution::serial;
    const auto s = run_string_suite(*m, pts, classify(*m, pts, co), serial_opts());
    CHECK(find(s.entries, "ricci_vanishing").status == Status::hypothesis_failed);
    CHECK(find(s.entries, "ricci_vanishing").max_residual > 1e-3);
    CHECK(find(s.entries, "scalar_ricci_agreement").status == Status::hypothesis_failed);
    CHECK(find(s.entries, "flux_divergence_form").pass());
    CHECK(find(s.entries, "string_eta_equivalence").pass());
    CHECK(s.constant_forms.ric_residual > 1e-3);
  }

  TEST_CASE("rho != 0 attaches the equivalence warning") {
    const auto m = get_manifold("conf_torus_6");
    const auto cf = constant_dilaton_forms(*m, sample_points(m->domain, 4, 0), serial_opts());
    CHECK_FALSE(cf.warning.empty());
  }
}

TEST_SUITE("cli_report") {
  TEST_CASE("config validation") {
    RunConfig c;
    c.manifolds = {"flat_torus_4"};
    c.points = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.points = 4;
    c.step = 0.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.step = 1e-4;
    c.manifolds = {"nowhere"};
    CHECK_THROWS_AS(c.validate(), LookupError);
    CHECK_THROWS_AS(parse_suite("everything"), ConfigError);
    c.manifolds = {"all"};
    CHECK(c.resolved_manifolds().size() == 7);
  }

  TEST_CASE("flat torus report passes with tiny residuals and a fixed key order") {
    RunConfig c;
    c.manifolds = {"flat_torus_4"};
    c.points = 8;
    const RunResult r = run(c);
    CHECK(r.overall_pass);
    const Json& j = r.report;
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"tool", "conventions", "config", "manifolds", "overall_pass"});
    for (const auto& e : j["manifolds"][0]["entries"])
      if (e["status"] == "pass") CHECK(e["max_residual"].get<double>() < 1e-8);
    CHECK(render(r.report) == render(run(c).report));
  }
}
