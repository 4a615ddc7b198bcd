#include "ktgeom/report.hpp"

#include "ktgeom/catalog.hpp"
#include "ktgeom/classify.hpp"
#include "ktgeom/errors.hpp"
#include "ktgeom/identities.hpp"
#include "ktgeom/strings.hpp"

#include <algorithm>
#include <cmath>

namespace ktgeom {

namespace {

Json point_json(const Point& p) {
  Json a = Json::array();
  for (double x : p.coords()) a.push_back(x);
  return a;
}

Json entry_json(const ResidualEntry& e) {
  Json j;
  j["identity"] = e.identity_name;
  j["formula"] = e.formula;
  j["max_residual"] = e.max_residual;
  j["tolerance"] = e.tolerance;
  j["status"] = to_string(e.status);
  j["worst_point"] = e.worst_point.dim() ? point_json(e.worst_point) : Json();
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

Json flag_json(const Flag& f) {
  Json j;
  j["value"] = f.value;
  j["residual"] = f.residual;
  j["worst_point"] = point_json(f.worst_point);
  return j;
}

Json flags_json(const StructureFlags& s) {
  Json j;
  j["tolerance"] = s.tolerance;
  j["kahler"] = flag_json(s.kahler);
  j["strong_kt"] = flag_json(s.strong_kt);
  j["almost_strong_kt"] = flag_json(s.almost_strong_kt);
  j["balanced"] = flag_json(s.balanced);
  j["lck"] = flag_json(s.lck);
  j["su_holonomy_indicator"] = flag_json(s.su_indicator);
  if (s.hkt) {
    Json h;
    h["value"] = s.hkt->hkt;
    h["quaternion_residual"] = s.hkt->quaternion;
    h["common_torsion_residual"] = s.hkt->common_torsion;
    h["lee_equality_residual"] = s.hkt->common_lee;
    j["hkt"] = h;
  } else {
    j["hkt"] = nullptr;
  }
  return j;
}

Json string_report_json(const StringReport& r) {
  Json j;
  j["constant_dilaton"] = r.constant_dilaton;
  j["einstein_residual"] = r.einstein_residual;
  j["flux_residual"] = r.flux_residual;
  j["divergence_form_residual"] = r.divergence_form_residual;
  j["eta_parallel_residual"] = r.eta_parallel_residual;
  j["susy_theta_residual"] = r.susy_theta_residual;
  Json eta = Json::array();
  for (const Tensor& t : r.eta) {
    Json c = Json::array();
    for (double v : t.components()) c.push_back(v);
    eta.push_back(c);
  }
  j["eta"] = eta;
  if (r.th1) {
    Json t;
    t["hypotheses_hold"] = r.th1->hypotheses_hold;
    t["scal_zero"] = r.th1->scal_zero;
    t["ric_zero"] = r.th1->ric_zero;
    t["scal_residual"] = r.th1->scal_residual;
    t["ric_residual"] = r.th1->ric_residual;
    t["agree"] = r.th1->agree();
    j["th1_consistency"] = t;
  }
  return j;
}

ResidualEntry simple_entry(std::string name, std::string formula, double residual, double tol,
                           Point worst = {}) {
  ResidualEntry e;
  e.identity_name = std::move(name);
  e.formula = std::move(formula);
  e.max_residual = residual;
  e.tolerance = tol;
  e.status = residual <= tol ? Status::pass : Status::fail;
  e.worst_point = std::move(worst);
  return e;
}

// Defining invariants of the Hermitian structure, as entries.
std::vector<ResidualEntry> invariant_entries(const HermitianManifold& m,
                                             const std::vector<Point>& points,
                                             const SuiteOptions& opts) {
  const ManifoldInvariants inv = check_invariants(m, points, opts.step);
  const double t = opts.tol_first_order;
  std::vector<ResidualEntry> v;
  auto e = simple_entry("metric_positive", "min eig g > 0", inv.min_metric_eigenvalue > 0 ? 0.0 : 1.0, 0.0);
  e.note = "min eigenvalue " + std::to_string(inv.min_metric_eigenvalue);
  v.push_back(e);
  v.push_back(simple_entry("metric_symmetric", "g = gᵀ", inv.metric_asymmetry, t));
  v.push_back(simple_entry("complex_structure_square", "J² = −1", inv.j_square, t));
  v.push_back(simple_entry("complex_structure_orthogonal", "g(JX,JY) = g(X,Y)", inv.j_compatibility, t));
  v.push_back(simple_entry("nijenhuis", "N_J = 0", inv.nijenhuis, t, inv.worst_point));
  if (inv.quaternion)
    v.push_back(simple_entry("quaternion_relations", "J_aJ_b = −δ_ab + ε_abc J_c", *inv.quaternion, t));
  return v;
}

// Implications among the flags: Kähler ⇒ strong ⇒ almost strong; in
// dimension four almost strong ⇔ strong.
std::vector<ResidualEntry> taxonomy_entries(const HermitianManifold& m, const StructureFlags& s) {
  std::vector<ResidualEntry> v;
  const bool chain = (!s.kahler.value || s.strong_kt.value) &&
                     (!s.strong_kt.value || s.almost_strong_kt.value);
  auto e = simple_entry("taxonomy_chain", "Kähler ⇒ strong KT ⇒ almost strong KT", chain ? 0.0 : 1.0, 0.5);
  v.push_back(e);
  if (m.dim == 4) {
    const bool eq = s.almost_strong_kt.value == s.strong_kt.value;
    e = simple_entry("almost_strong_iff_strong", "dim 4: λ^Ω = 0 ⇔ dT = 0", eq ? 0.0 : 1.0, 0.5);
    e.note = std::string("almost strong ") + (s.almost_strong_kt.value ? "true" : "false") +
             ", strong " + (s.strong_kt.value ? "true" : "false");
    v.push_back(e);
  }
  return v;
}

Json loop_json(const HermitianManifold& m, const Point& p, double step) {
  constexpr double side = 1e-2;
  Json planes = Json::array();
  double worst_comm = 0.0, worst_diff = 0.0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j) {
      const LoopHolonomy L = loop_holonomy(m, p, i, j, side, step);
      Json q;
      q["axes"] = {i, j};
      q["j_commutator"] = L.j_commutator;
      q["rho_estimate"] = L.rho_estimate;
      q["rho_reference"] = L.rho_reference;
      planes.push_back(q);
      worst_comm = std::max(worst_comm, L.j_commutator);
      worst_diff = std::max(worst_diff, std::abs(L.rho_estimate - L.rho_reference));
    }
  Json j;
  j["point"] = point_json(p);
  j["side"] = side;
  j["max_j_commutator"] = worst_comm;
  j["max_rho_difference"] = worst_diff;
  j["planes"] = planes;
  return j;
}

Json manifold_json(const HermitianManifold& m, const RunConfig& cfg, bool& pass) {
  SuiteOptions opts;
  opts.step = cfg.step;
  opts.tol_curvature = cfg.tol_identity.value_or(cfg.tol_curvature);
  opts.tol_first_order = cfg.tol_identity.value_or(cfg.tol_first_order);
  opts.exec = cfg.exec;
  ClassifyOptions copts;
  copts.tolerance = cfg.tol_classify;
  copts.step = cfg.step;
  copts.exec = cfg.exec;

  const std::vector<Point> points = sample_points(m.domain, cfg.points, cfg.seed);
  const auto has = [&](Suite s) { return cfg.suites.count(s) > 0; };

  Json j;
  j["name"] = m.name;
  j["dim"] = m.dim;
  j["description"] = m.description;
  j["domain"] = m.domain.describe();
  j["declared_lck"] = m.lck;
  j["has_dilaton"] = m.dilaton.has_value();
  j["has_hypercomplex"] = m.hypercomplex.has_value();
  j["conformal_parent"] =
      m.conformal_parent ? Json(m.conformal_parent->parent->name) : Json(nullptr);

  std::vector<ResidualEntry> entries;
  auto append = [&](const std::vector<ResidualEntry>& more) {
    entries.insert(entries.end(), more.begin(), more.end());
  };

  if (has(Suite::identities)) {
    append(invariant_entries(m, points, opts));
    append(verify_structure(m, points, opts));
    append(verify_ricci_identities(m, points, opts));
    append(verify_ricci_relations(m, points, opts));
    append(verify_chern_identities(m, points, opts));
    append(verify_torsion_identities(m, points, opts));
    if (m.conformal_parent) entries.push_back(verify_conformal_trace(m, points, opts));
  }
  if (has(Suite::dim4) && m.lck) append(verify_lck_identities(m, points, opts));

  std::optional<StructureFlags> flags;
  if (has(Suite::classify) || has(Suite::string)) flags = classify(m, points, copts);
  if (has(Suite::classify)) {
    j["flags"] = flags_json(*flags);
    append(taxonomy_entries(m, *flags));
    if (flags->hkt) {
      const double t = cfg.tol_classify;
      append({simple_entry("hkt_quaternion", "J_aJ_b = −δ_ab + ε_abc J_c", flags->hkt->quaternion, t),
              simple_entry("hkt_common_torsion", "d₁Ω₁ = d₂Ω₂ = d₃Ω₃", flags->hkt->common_torsion, t),
              simple_entry("hkt_lee_equality", "θ₁ = θ₂ = θ₃", flags->hkt->common_lee, t)});
    }
    const VanishingHypotheses v = vanishing_hypotheses(m, points, copts);
    Json vh;
    vh["plurigenera_margin"] = v.plurigenera_margin;
    vh["margin_point"] = point_json(v.margin_point);
    vh["quad_form_min_eig"] = v.quadratic_min_eigenvalue;
    vh["eigenvalue_point"] = point_json(v.eigenvalue_point);
    vh["margin_vs_chern_trace"] = v.carf_consistency;
    vh["quad_form_trace_vs_margin"] = v.trace_consistency;
    j["vanishing_hypotheses"] = vh;
    entries.push_back(simple_entry("plurigenera_margin_chern_trace", "b + |C|² − ½h = 2u",
                                   v.carf_consistency, opts.tol_curvature));
    if (cfg.loop_check) j["loop_check"] = loop_json(m, points.front(), cfg.step);
  }
  if (has(Suite::string)) {
    const StringSuite s = run_string_suite(m, points, *flags, opts);
    Json sj;
    sj["constant"] = string_report_json(s.constant);
    Json cf;
    cf["ric_residual"] = s.constant_forms.ric_residual;
    cf["st1prime_residual"] = s.constant_forms.st1prime_residual;
    cf["nabla_theta_residual"] = s.constant_forms.nabla_theta_residual;
    cf["rho_residual"] = s.constant_forms.rho_residual;
    if (!s.constant_forms.warning.empty()) cf["warning"] = s.constant_forms.warning;
    sj["constant_forms"] = cf;
    if (s.dilaton) {
      sj["dilaton"] = string_report_json(*s.dilaton);
      Json df;
      df["stef_residual"] = s.dilaton_forms->stef_residual;
      df["ster_residual"] = s.dilaton_forms->ster_residual;
      df["cnew_residual"] = s.dilaton_forms->cnew_residual;
      df["four2_residual"] = s.dilaton_forms->four2_residual
                                 ? Json(*s.dilaton_forms->four2_residual)
                                 : Json(nullptr);
      df["susy_theta_residual"] = s.dilaton_forms->susy_theta_residual;
      sj["dilaton_forms"] = df;
    } else {
      sj["dilaton"] = nullptr;
    }
    j["string"] = sj;
    append(s.entries);
  }

  pass = std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) {
    return e.status != Status::fail;
  });
  Json ej = Json::array();
  std::size_t failed = 0, skipped = 0;
  for (const auto& e : entries) {
    ej.push_back(entry_json(e));
    failed += e.status == Status::fail;
    skipped += e.status == Status::hypothesis_failed;
  }
  j["entries"] = ej;
  Json summary;
  summary["entries"] = entries.size();
  summary["failed"] = failed;
  summary["hypothesis_failed"] = skipped;
  j["summary"] = summary;
  j["overall_pass"] = pass;
  return j;
}

}  // namespace

std::string to_string(Suite s) {
  switch (s) {
    case Suite::identities: return "identities";
    case Suite::classify: return "classify";
    case Suite::string: return "string";
    case Suite::dim4: return "dim4";
  }
  return "unknown";
}

Suite parse_suite(const std::string& name) {
  for (Suite s : all_suites())
    if (to_string(s) == name) return s;
  throw ConfigError("unknown suite '" + name + "'; expected identities, classify, string, dim4");
}

std::set<Suite> all_suites() {
  return {Suite::identities, Suite::classify, Suite::string, Suite::dim4};
}

void RunConfig::validate() const {
  if (points < 1) throw ConfigError("point count must be at least 1");
  if (!(step > 1e-8 && step < 1e-1)) throw ConfigError("step h must lie in (1e-8, 1e-1)");
  for (double t : {tol_curvature, tol_first_order, tol_classify, tol_identity.value_or(1.0)})
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("tolerances must be positive");
  if (suites.empty()) throw ConfigError("no suite selected");
  if (manifolds.empty()) throw ConfigError("no manifold selected");
  for (const auto& name : resolved_manifolds()) (void)get_manifold(name);
}

std::vector<std::string> RunConfig::resolved_manifolds() const {
  std::vector<std::string> out;
  for (const auto& name : manifolds) {
    if (name == "all") {
      for (const auto& c : catalog_names()) out.push_back(c);
    } else {
      out.push_back(name);
    }
  }
  return out;
}

Json convention_header() {
  Json c;
  c["kahler_form"] = "Omega(X,Y) = g(X,JY)";
  c["complex_structure"] = "J d/dx_k = d/dy_k on coordinate pairs (x_1,y_1,x_2,y_2,...)";
  c["codifferential"] = "d^dagger a = -sum_i (nabla^g_{e_i} a)(e_i, ...)";
  c["trace_orientation"] = "j-traces are sum_i a(J e_i, e_i); rho(X,Y) = 1/2 sum_i R(X,Y,e_i,J e_i)";
  c["norm"] = "full-index sums without 1/p!: |T|^2 = sum_{ijk} T_ijk^2";
  c["projector_11"] = "a^{1,1} = 1/2 (a + a(J.,J.))";
  c["lee_form"] = "theta = d^dagger Omega o J";
  c["bismut_torsion"] = "T(X,Y,Z) = -dOmega(JX,JY,JZ)";
  c["curvature"] = "R(X,Y,Z,V) = g(([nabla_X,nabla_Y] - nabla_[X,Y]) Z, V); Ric(X,Y) = sum_i R(e_i,X,Y,e_i)";
  c["flux_square"] = "(H o H)(X,Y) = sum_{mn} H(X,e_m,e_n) H(Y,e_m,e_n), H = T";
  c["residual"] = "max over points of the max-abs orthonormal-frame component of LHS - RHS";
  c["differentiation"] = "five-point central differences, nested for second derivatives";
  return c;
}

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  RunResult r;
  Json& j = r.report;
  j["tool"] = "ktgeom";
  j["conventions"] = convention_header();
  Json c;
  c["manifolds"] = cfg.resolved_manifolds();
  c["points"] = cfg.points;
  c["seed"] = cfg.seed;
  c["h"] = cfg.step;
  c["tol_curvature"] = cfg.tol_identity.value_or(cfg.tol_curvature);
  c["tol_first_order"] = cfg.tol_identity.value_or(cfg.tol_first_order);
  c["tol_classify"] = cfg.tol_classify;
  Json suites = Json::array();
  for (Suite s : cfg.suites) suites.push_back(to_string(s));
  c["suites"] = suites;
  c["loop_check"] = cfg.loop_check;
  j["config"] = c;
  Json ms = Json::array();
  r.overall_pass = true;
  for (const auto& name : cfg.resolved_manifolds()) {
    bool pass = false;
    ms.push_back(manifold_json(*get_manifold(name), cfg, pass));
    r.overall_pass = r.overall_pass && pass;
  }
  j["manifolds"] = ms;
  j["overall_pass"] = r.overall_pass;
  return r;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace ktgeom
