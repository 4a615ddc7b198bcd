#include "ktgeom/strings.hpp"

#include "ktgeom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ktgeom {

namespace {

struct Local {
  Matrix g;
  Matrix J;
  Frame f;
  Matrix Jh;
};

Local local(const HermitianManifold& m, const Point& p) {
  Local L;
  L.g = m.metric(p);
  L.J = m.complex_structure(p);
  L.f = orthonormal_frame(L.g);
  L.Jh = to_frame(L.J, L.f);
  return L;
}

ScalarField dilaton_or_zero(const std::optional<ScalarField>& phi) {
  if (phi) return *phi;
  return [](const Point&) { return 0.0; };
}

TensorField d_phi_field(const ScalarField& phi, double h) {
  return TensorField{1, true, [phi, h](const Point& p) { return gradient(phi, p, h); }};
}

// η = θ − 2dφ.
TensorField eta_field(const HermitianManifold& m, const ScalarField& phi, double h) {
  const TensorField theta = lee_form_field(m, h);
  return TensorField{1, true, [theta, phi, h](const Point& p) {
                       Tensor e = theta(p);
                       Tensor d = gradient(phi, p, h);
                       d *= 2.0;
                       e -= d;
                       e.set_form(true);
                       return e;
                     }};
}

Tensor slot_gram(const Tensor& A) {
  const int n = A.dim();
  Tensor out(n, 2);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) s += A(x, j, k) * A(y, j, k);
      out(x, y) = s;
    }
  return out;
}

Tensor symmetrized(const Tensor& a) {
  const std::vector<int> swap{1, 0};
  return a + permute(a, swap);
}
Tensor alternated(const Tensor& a) {
  const std::vector<int> swap{1, 0};
  return a - permute(a, swap);
}

// Frame components.
Tensor ric_g_hat(const HermitianManifold& m, const Point& p, double h, const Local& L) {
  return ricci_contraction(to_frame(riemann(levi_civita(m, h), p), L.f));
}
Tensor bismut_R_hat(const HermitianManifold& m, const Point& p, double h, const Local& L) {
  return to_frame(riemann(bismut(m, h), p), L.f);
}
Tensor T_hat(const HermitianManifold& m, const Point& p, double h, const Local& L) {
  return to_frame(torsion_T(m, p, h), L.f);
}
// λ^Ω(X, JY).
Tensor lambda_xjy(const HermitianManifold& m, const Point& p, double h, const Local& L) {
  return insert_endomorphism(to_frame(lambda_omega(m, p, h).lambda, L.f), L.Jh, 1);
}
Tensor bismut_nabla(const HermitianManifold& m, const TensorField& t, const Point& p, double h,
                    const Local& L) {
  return to_frame(covariant_derivative(bismut(m, h), t, p), L.f);
}

// d†T + 2 i_{dφ#}T in coordinates.
Tensor flux_form(const HermitianManifold& m, const ScalarField& phi, const Point& p, double h,
                 const Matrix& g) {
  Tensor out = codifferential(torsion_T_field(m, h), p, m.metric, h);
  Tensor it = interior(sharp(gradient(phi, p, h), g.inverse()), torsion_T(m, p, h));
  it *= 2.0;
  out += it;
  return out;
}

double einstein_at(const HermitianManifold& m, const ScalarField& phi, const Point& p, double h) {
  const Local L = local(m, p);
  Tensor lhs = ric_g_hat(m, p, h, L);
  Tensor hh = slot_gram(T_hat(m, p, h, L));
  hh *= 0.25;
  lhs -= hh;
  Tensor hess = to_frame(covariant_derivative(levi_civita(m, h), d_phi_field(phi, h), p), L.f);
  hess *= 2.0;
  lhs += hess;
  return lhs.max_abs();
}

double flux_at(const HermitianManifold& m, const ScalarField& phi, const Point& p, double h) {
  const Local L = local(m, p);
  return to_frame(flux_form(m, phi, p, h, L.g), L.f).max_abs();
}

double divergence_form_at(const HermitianManifold& m, const ScalarField& phi, const Point& p,
                          double h) {
  const Local L = local(m, p);
  const TensorField T = torsion_T_field(m, h);
  const TensorField weighted{3, true, [T, phi](const Point& q) {
                               Tensor t = T(q);
                               t *= std::exp(-2.0 * phi(q));
                               t.set_form(true);
                               return t;
                             }};
  const Tensor div =
      trace_pair(covariant_derivative(levi_civita(m, h), weighted, p), 0, 1, L.g.inverse());
  Tensor rhs = flux_form(m, phi, p, h, L.g);
  rhs *= std::exp(-2.0 * phi(p));
  return to_frame(div + rhs, L.f).max_abs();
}

double theta_norm(const HermitianManifold& m, const Point& p, double h) {
  const Local L = local(m, p);
  const Tensor th = to_frame(lee_form_field(m, h)(p), L.f);
  double s = 0.0;
  for (double v : th.components()) s += v * v;
  return std::sqrt(s);
}

IdentityCheck check(std::string name, std::string formula, bool curvature, PointResidual r) {
  return IdentityCheck{std::move(name), std::move(formula), curvature, std::move(r)};
}

double max_over(const HermitianManifold& m, std::span<const Point> points,
                const SuiteOptions& opts, const std::string& name, const PointResidual& r) {
  if (points.empty()) return 0.0;
  return evaluate(check(name, "", true, r), m, points, opts).max_residual;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void gate(ResidualEntry& e, bool hypotheses_hold, const std::string& why) {
  if (hypotheses_hold) return;
  e.status = Status::hypothesis_failed;
  e.note = "hypothesis failed: " + why;
}

}  // namespace

StringReport string_residual(const HermitianManifold& m, const std::optional<ScalarField>& phi_in,
                             std::span<const Point> points, const SuiteOptions& opts) {
  const ScalarField phi = dilaton_or_zero(phi_in);
  const double h = opts.step;
  StringReport r;
  r.constant_dilaton = !phi_in.has_value();
  r.einstein_residual = max_over(m, points, opts, "string_einstein",
                                 [phi](const HermitianManifold& mm, const Point& p, double s) {
                                   return einstein_at(mm, phi, p, s);
                                 });
  r.flux_residual = max_over(m, points, opts, "string_flux",
                             [phi](const HermitianManifold& mm, const Point& p, double s) {
                               return flux_at(mm, phi, p, s);
                             });
  r.divergence_form_residual =
      max_over(m, points, opts, "flux_divergence_form",
               [phi](const HermitianManifold& mm, const Point& p, double s) {
                 return divergence_form_at(mm, phi, p, s);
               });
  const TensorField eta = eta_field(m, phi, h);
  r.eta.resize(points.size());
  sweep(points.size(), [&](std::size_t i) { r.eta[i] = eta(points[i]); }, opts.exec);
  r.eta_parallel_residual =
      max_over(m, points, opts, "eta_parallel",
               [phi](const HermitianManifold& mm, const Point& p, double s) {
                 const Local L = local(mm, p);
                 return bismut_nabla(mm, eta_field(mm, phi, s), p, s, L).max_abs();
               });
  r.susy_theta_residual = max_over(m, points, opts, "susy_theta",
                                   [phi](const HermitianManifold& mm, const Point& p, double s) {
                                     const Local L = local(mm, p);
                                     return to_frame(eta_field(mm, phi, s)(p), L.f).max_abs();
                                   });
  return r;
}

ConstantDilatonForms constant_dilaton_forms(const HermitianManifold& m,
                                            std::span<const Point> points,
                                            const SuiteOptions& opts) {
  ConstantDilatonForms c;
  c.ric_residual = max_over(m, points, opts, "ricci_vanishing",
                            [](const HermitianManifold& mm, const Point& p, double s) {
                              const Local L = local(mm, p);
                              return ricci_contraction(bismut_R_hat(mm, p, s, L)).max_abs();
                            });
  c.st1prime_residual =
      max_over(m, points, opts, "lee_derivative_lambda",
               [](const HermitianManifold& mm, const Point& p, double s) {
                 const Local L = local(mm, p);
                 Tensor rhs = lambda_xjy(mm, p, s, L);
                 rhs *= 0.25;
                 return max_abs_diff(bismut_nabla(mm, lee_form_field(mm, s), p, s, L), rhs);
               });
  c.nabla_theta_residual =
      max_over(m, points, opts, "lee_parallel",
               [](const HermitianManifold& mm, const Point& p, double s) {
                 const Local L = local(mm, p);
                 return bismut_nabla(mm, lee_form_field(mm, s), p, s, L).max_abs();
               });
  c.rho_residual = max_over(m, points, opts, "ricci_form",
                            [](const HermitianManifold& mm, const Point& p, double s) {
                              const Local L = local(mm, p);
                              return j_contraction_last(bismut_R_hat(mm, p, s, L), L.Jh).max_abs();
                            });
  if (c.rho_residual > opts.tol_curvature)
    c.warning = "rho = " + fmt(c.rho_residual) +
                " is not ~0; Ric = 0 and the lambda form are not equivalent here";
  return c;
}

EtaForms eta_forms(const HermitianManifold& m, const std::optional<ScalarField>& phi_in,
                   std::span<const Point> points, const SuiteOptions& opts) {
  const ScalarField phi = dilaton_or_zero(phi_in);
  EtaForms e;
  auto nabla_eta = [phi](const HermitianManifold& mm, const Point& p, double s, const Local& L) {
    return bismut_nabla(mm, eta_field(mm, phi, s), p, s, L);
  };
  e.stef_residual = max_over(m, points, opts, "eta_lambda",
                             [=](const HermitianManifold& mm, const Point& p, double s) {
                               const Local L = local(mm, p);
                               Tensor rhs = lambda_xjy(mm, p, s, L);
                               rhs *= 0.25;
                               return max_abs_diff(nabla_eta(mm, p, s, L), rhs);
                             });
  e.ster_residual = max_over(m, points, opts, "eta_closed",
                             [=](const HermitianManifold& mm, const Point& p, double s) {
                               const Local L = local(mm, p);
                               return alternated(nabla_eta(mm, p, s, L)).max_abs();
                             });
  e.cnew_residual = max_over(m, points, opts, "eta_symmetric",
                             [=](const HermitianManifold& mm, const Point& p, double s) {
                               const Local L = local(mm, p);
                               Tensor rhs = lambda_xjy(mm, p, s, L);
                               rhs *= 0.5;
                               return max_abs_diff(symmetrized(nabla_eta(mm, p, s, L)), rhs);
                             });
  if (m.dim == 4)
    e.four2_residual = max_over(
        m, points, opts, "eta_conformal", [=](const HermitianManifold& mm, const Point& p, double s) {
          const Local L = local(mm, p);
          const double dt = lee_codifferential(mm, p, s);
          Tensor rhs = Tensor::from_matrix(Matrix::Identity(mm.dim, mm.dim));
          rhs *= 0.5 * dt;
          return max_abs_diff(nabla_eta(mm, p, s, L), rhs);
        });
  e.susy_theta_residual = max_over(m, points, opts, "susy_theta",
                                   [phi](const HermitianManifold& mm, const Point& p, double s) {
                                     const Local L = local(mm, p);
                                     return to_frame(eta_field(mm, phi, s)(p), L.f).max_abs();
                                   });
  return e;
}

Th1Consistency verify_th1(const HermitianManifold& m, std::span<const Point> points,
                          const StructureFlags& flags, const SuiteOptions& opts) {
  Th1Consistency t;
  t.hypotheses_hold = flags.strong_kt.value && flags.su_indicator.value;
  t.scal_residual = max_over(m, points, opts, "bismut_scalar",
                             [](const HermitianManifold& mm, const Point& p, double s) {
                               const Local L = local(mm, p);
                               const Tensor ric = ricci_contraction(bismut_R_hat(mm, p, s, L));
                               double sc = 0.0;
                               for (int j = 0; j < mm.dim; ++j) sc += ric(j, j);
                               return std::abs(sc);
                             });
  t.ric_residual = max_over(m, points, opts, "ricci_vanishing",
                            [](const HermitianManifold& mm, const Point& p, double s) {
                              const Local L = local(mm, p);
                              return ricci_contraction(bismut_R_hat(mm, p, s, L)).max_abs();
                            });
  t.scal_zero = t.scal_residual <= opts.tol_curvature;
  t.ric_zero = t.ric_residual <= opts.tol_curvature;
  return t;
}

StringSuite run_string_suite(const HermitianManifold& m, std::span<const Point> points,
                             const StructureFlags& flags, const SuiteOptions& opts) {
  StringSuite s;
  s.constant = string_residual(m, std::nullopt, points, opts);
  s.constant_forms = constant_dilaton_forms(m, points, opts);
  const Th1Consistency th1 = verify_th1(m, points, flags, opts);
  s.constant.th1 = th1;

  const double tc = opts.tol_curvature;
  auto entry = [&](std::string name, std::string formula, double residual, double tol) {
    ResidualEntry e;
    e.identity_name = std::move(name);
    e.formula = std::move(formula);
    e.max_residual = residual;
    e.tolerance = tol;
    e.status = residual <= tol ? Status::pass : Status::fail;
    return e;
  };

  const bool su = flags.su_indicator.value;
  const bool g_const = flags.strong_kt.value && su && th1.scal_zero;
  std::string why_const;
  if (!flags.strong_kt.value) why_const += "not strong KT (|dT| = " + fmt(flags.strong_kt.residual) + "); ";
  if (!su) why_const += "rho or [R, J] nonzero (" + fmt(flags.su_indicator.residual) + "); ";
  if (!th1.scal_zero) why_const += "Scal = " + fmt(th1.scal_residual) + " nonzero; ";
  if (!why_const.empty()) why_const.resize(why_const.size() - 2);

  // Constant dilaton.
  {
    auto e = entry("string_einstein_constant", "Ric^g − ¼H∘H = 0", s.constant.einstein_residual, tc);
    gate(e, g_const, why_const);
    s.entries.push_back(e);
    e = entry("string_flux_constant", "d†T = 0", s.constant.flux_residual, tc);
    gate(e, g_const, why_const);
    s.entries.push_back(e);
    e = entry("ricci_vanishing", "Ric = 0", s.constant_forms.ric_residual, tc);
    gate(e, g_const, why_const);
    s.entries.push_back(e);
    e = entry("lee_derivative_lambda", "(∇_Xθ)Y = ¼λ^Ω(X,JY)", s.constant_forms.st1prime_residual, tc);
    gate(e, g_const, why_const);
    if (!s.constant_forms.warning.empty()) e.note += (e.note.empty() ? "" : "; ") + s.constant_forms.warning;
    s.entries.push_back(e);
    e = entry("lee_parallel_constant", "∇η = 0 with η = θ", s.constant.eta_parallel_residual, tc);
    gate(e, g_const, why_const);
    s.entries.push_back(e);

    e = entry("scalar_ricci_agreement", "Scal^∇ = 0 ⇔ Ric = 0",
              th1.agree() ? 0.0 : 1.0, 0.5);
    e.note = "Scal^∇ max " + fmt(th1.scal_residual) + (th1.scal_zero ? " (zero)" : " (nonzero)") +
             ", Ric max " + fmt(th1.ric_residual) + (th1.ric_zero ? " (zero)" : " (nonzero)");
    if (!th1.hypotheses_hold) {
      e.status = Status::hypothesis_failed;
      std::string why;
      if (!flags.strong_kt.value) why += "not strong KT; ";
      if (!su) why += "rho or [R, J] nonzero; ";
      why.resize(why.size() - 2);
      e.note = "hypothesis failed: " + why + "; " + e.note;
    }
    s.entries.push_back(e);

    const double killing = max_over(m, points, opts, "lee_killing",
                                    [](const HermitianManifold& mm, const Point& p, double h) {
                                      const Local L = local(mm, p);
                                      const Tensor d = to_frame(
                                          covariant_derivative(levi_civita(mm, h),
                                                               lee_form_field(mm, h), p),
                                          L.f);
                                      return symmetrized(d).max_abs();
                                    });
    e = entry("lee_killing", "L_{θ#} g = 0", killing, tc);
    gate(e, g_const, why_const);
    s.entries.push_back(e);

    // A non-Kähler solution has nowhere-vanishing θ, checked as |θ| ≥ 0.1.
    double min_theta = std::numeric_limits<double>::infinity();
    {
      std::vector<double> v(points.size());
      sweep(points.size(), [&](std::size_t i) { v[i] = theta_norm(m, points[i], opts.step); },
            opts.exec);
      for (double x : v) min_theta = std::min(min_theta, x);
    }
    e = entry("lee_nonvanishing", "|θ| ≥ 0.1", std::max(0.0, 0.1 - min_theta), 0.0);
    e.note = "min |θ| = " + fmt(min_theta);
    gate(e, g_const && !flags.kahler.value,
         flags.kahler.value ? "Kähler (T = 0)" : why_const);
    s.entries.push_back(e);
  }

  // Identity linking the flux equation to the Lee form when ρ = 0.
  {
    const double ns = max_over(
        m, points, opts, "codifferential_torsion_lee",
        [](const HermitianManifold& mm, const Point& p, double h) {
          const Local L = local(mm, p);
          const Tensor dT = to_frame(codifferential(torsion_T_field(mm, h), p, mm.metric, h), L.f);
          const Tensor dnabla = alternated(bismut_nabla(mm, lee_form_field(mm, h), p, h, L));
          const Tensor th = lee_form_field(mm, h)(p);
          Tensor rhs = exterior_derivative(lee_form_field(mm, h), p, h);
          rhs -= interior(sharp(th, L.g.inverse()), torsion_T(mm, p, h));
          rhs = to_frame(rhs, L.f);
          return std::max(max_abs_diff(dT, dnabla), max_abs_diff(dnabla, rhs));
        });
    auto e = entry("codifferential_torsion_lee", "d†T = d^∇θ = dθ − i_{θ#}T", ns, tc);
    gate(e, su, "rho or [R, J] nonzero (" + fmt(flags.su_indicator.residual) + ")");
    s.entries.push_back(e);
  }

  if (m.dilaton) {
    s.dilaton = string_residual(m, m.dilaton, points, opts);
    s.dilaton_forms = eta_forms(m, m.dilaton, points, opts);
    const StringReport& d = *s.dilaton;
    const EtaForms& f = *s.dilaton_forms;
    const double dtheta = max_over(m, points, opts, "lee_closed",
                                   [](const HermitianManifold& mm, const Point& p, double h) {
                                     const Local L = local(mm, p);
                                     return to_frame(
                                                exterior_derivative(lee_form_field(mm, h), p, h), L.f)
                                         .max_abs();
                                   });
    const double tk = flags.tolerance;
    const bool susy = d.susy_theta_residual <= tk;
    const bool g_one = flags.almost_strong_kt.value && su && dtheta <= tk && susy;
    std::string why_one;
    if (!flags.almost_strong_kt.value)
      why_one += "not almost strong KT (|λ^Ω| = " + fmt(flags.almost_strong_kt.residual) + "); ";
    if (!su) why_one += "rho or [R, J] nonzero; ";
    if (dtheta > tk) why_one += "dθ = " + fmt(dtheta) + " nonzero; ";
    if (!susy) why_one += "θ ≠ 2dφ; ";
    if (!why_one.empty()) why_one.resize(why_one.size() - 2);

    auto e = entry("dilaton_susy", "θ = 2dφ", d.susy_theta_residual, opts.tol_first_order);
    s.entries.push_back(e);
    e = entry("flux_divergence_form", "∇^g·(e^{−2φ}H) = −e^{−2φ}(d†T + 2i_{dφ#}T)",
              d.divergence_form_residual, tc);
    s.entries.push_back(e);
    e = entry("string_einstein_dilaton", "Ric^g − ¼H∘H + 2∇^g dφ = 0", d.einstein_residual, tc);
    gate(e, g_one, why_one);
    s.entries.push_back(e);
    e = entry("string_flux_dilaton", "d†T + 2i_{dφ#}T = 0", d.flux_residual, tc);
    gate(e, g_one, why_one);
    s.entries.push_back(e);
    e = entry("eta_lambda", "(∇_Xη)Y = ¼λ^Ω(X,JY)", f.stef_residual, tc);
    gate(e, g_one, why_one);
    s.entries.push_back(e);
    e = entry("eta_closed", "(∇_Xη)Y − (∇_Yη)X = 0", f.ster_residual, tc);
    gate(e, g_one, why_one);
    s.entries.push_back(e);
    e = entry("eta_symmetric", "(∇_Xη)Y + (∇_Yη)X = ½λ^Ω(X,JY)", f.cnew_residual, tc);
    gate(e, g_one, why_one);
    s.entries.push_back(e);
    if (f.four2_residual) {
      e = entry("eta_conformal", "∇η = ½d†θ g", *f.four2_residual, tc);
      gate(e, g_one, why_one);
      s.entries.push_back(e);
    }
    // With ρ = 0 the string equations hold iff the η equation does: both
    // sides are decided by tolerance and must agree.
    const bool solves = d.einstein_residual <= tc && d.flux_residual <= tc;
    const bool eta_ok = f.stef_residual <= tc;
    e = entry("string_eta_equivalence", "string equations ⇔ (∇_Xη)Y = ¼λ^Ω(X,JY)",
              solves == eta_ok ? 0.0 : 1.0, 0.5);
    e.note = std::string("string equations ") + (solves ? "hold" : "fail") + ", η equation " +
             (eta_ok ? "holds" : "fails");
    if (!su) {
      e.status = Status::hypothesis_failed;
      e.note = "hypothesis failed: rho or [R, J] nonzero; " + e.note;
    }
    s.entries.push_back(e);
  }
  return s;
}

}  // namespace ktgeom
