// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit if any fails.
// Tolerances are fixed here and nowhere else.
#include "ktgeom/catalog.hpp"
#include "ktgeom/classify.hpp"
#include "ktgeom/errors.hpp"
#include "ktgeom/identities.hpp"
#include "ktgeom/report.hpp"
#include "ktgeom/strings.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace ktgeom;

namespace {

constexpr int kPoints = 32;
constexpr std::uint64_t kSeed = 0;
constexpr double kStep = 1e-4;
constexpr double kTolCurvature = 1e-4;
constexpr double kTolFirstOrder = 1e-6;
constexpr double kTolHkt = 1e-5;
constexpr double kRuntimeBudget = 60.0;  // seconds, criterion 1
constexpr double kConvergenceFactor = 3.0;
constexpr double kCoarseStep = 2e-2;
constexpr double kFineStep = 1e-2;
constexpr double kRoundoffFloor = 1e-10;  // coarse residuals below this are exact identities
constexpr double kNegativeMargin = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

SuiteOptions opts(double step = kStep) {
  SuiteOptions o;
  o.step = step;
  o.tol_curvature = kTolCurvature;
  o.tol_first_order = kTolFirstOrder;
  return o;
}

ClassifyOptions copts() { return ClassifyOptions{}; }

std::vector<Point> points_for(const HermitianManifold& m, int n = kPoints) {
  return sample_points(m.domain, n, kSeed);
}

double max_over(std::span<const Point> pts, const std::function<double(const Point&)>& f) {
  std::vector<double> v(pts.size());
  sweep(pts.size(), [&](std::size_t i) { v[i] = f(pts[i]); }, Execution::parallel);
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// 1. Fourteen curvature identities on every catalog manifold, under a minute.
Outcome identity_suite() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const auto m = get_manifold(name);
    for (const auto& e : evaluate_all(core_identity_checks(), *m, points_for(*m), opts())) {
      worst = std::max(worst, e.max_residual / e.tolerance);
      if (!e.pass())
        o.fail(name + "/" + e.identity_name + " = " + num(e.max_residual) + " > " + num(e.tolerance));
    }
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  if (dt.count() > kRuntimeBudget) o.fail("runtime " + num(dt.count()) + " s");
  if (o.pass) o.detail = "worst residual/tolerance " + num(worst) + ", runtime " + num(dt.count()) + " s";
  return o;
}

// 2. The Hopf surface facts.
Outcome hopf_surface() {
  Outcome o;
  const auto m = get_manifold("hopf_standard");
  const auto pts = points_for(*m);
  const double h = kStep;
  auto frame_max = [&](const std::function<Tensor(const Point&)>& f) {
    return max_over(pts, [&](const Point& p) {
      return to_frame(f(p), orthonormal_frame(m->metric(p))).max_abs();
    });
  };
  std::vector<std::pair<std::string, double>> r;
  r.emplace_back("rho", max_over(pts, [&](const Point& p) { return curvature_pack(*m, p, h).rho.max_abs(); }));
  r.emplace_back("Ric", max_over(pts, [&](const Point& p) { return curvature_pack(*m, p, h).ric.max_abs(); }));
  r.emplace_back("Scal", max_over(pts, [&](const Point& p) { return std::abs(curvature_pack(*m, p, h).scal); }));
  r.emplace_back("nabla theta", frame_max([&](const Point& p) {
                   return covariant_derivative(bismut(*m, h), lee_form_field(*m, h), p); }));
  r.emplace_back("nabla^g theta", frame_max([&](const Point& p) {
                   return covariant_derivative(levi_civita(*m, h), lee_form_field(*m, h), p); }));
  r.emplace_back("dT", frame_max([&](const Point& p) { return exterior_derivative(torsion_T_field(*m, h), p, h); }));
  r.emplace_back("d+T", frame_max([&](const Point& p) {
                   return codifferential(torsion_T_field(*m, h), p, m->metric, h); }));
  r.emplace_back("T + *theta", frame_max([&](const Point& p) {
                   return torsion_T(*m, p, h) + hodge_star(lee_form(*m, p, h), m->metric(p)); }));
  r.emplace_back("T - Jtheta^Omega", frame_max([&](const Point& p) {
                   Tensor jt = insert_endomorphism(lee_form(*m, p, h), m->complex_structure(p), 0);
                   jt *= -1.0;
                   return torsion_T(*m, p, h) - wedge(jt, kahler_form(*m, p)); }));
  r.emplace_back("Lie_theta g", frame_max([&](const Point& p) {
                   const Tensor d = covariant_derivative(levi_civita(*m, h), lee_form_field(*m, h), p);
                   const std::vector<int> swap{1, 0};
                   return d + permute(d, swap); }));
  r.emplace_back("2|theta|^2 - |T|^2/3", max_over(pts, [&](const Point& p) {
                   return std::abs(2 * lee_norm_sq(*m, p, h) - torsion_norm_sq(*m, p, h) / 3); }));
  double worst = 0.0;
  for (const auto& [what, v] : r) {
    worst = std::max(worst, v);
    if (!(v < kTolCurvature)) o.fail(what + " = " + num(v));
  }
  if (o.pass) o.detail = "11 quantities, worst " + num(worst);
  return o;
}

// 3. Scalar-curvature / Ricci agreement under the theorem's hypotheses.
Outcome scalar_ricci() {
  Outcome o;
  for (const char* name : {"hopf_standard", "su2xu1"}) {
    const auto m = get_manifold(name);
    const auto pts = points_for(*m);
    const auto t = verify_th1(*m, pts, classify(*m, pts, copts()), opts());
    if (!t.hypotheses_hold) o.fail(std::string(name) + ": hypotheses not met");
    else if (!t.agree()) o.fail(std::string(name) + ": Scal and Ric disagree");
  }
  const auto c = get_manifold("conf_torus_4");
  const auto pts = points_for(*c);
  const auto flags = classify(*c, pts, copts());
  const auto t = verify_th1(*c, pts, flags, opts());
  if (t.hypotheses_hold) o.fail("conf_torus_4: hypotheses unexpectedly hold");
  for (const auto& e : run_string_suite(*c, pts, flags, opts()).entries)
    if (e.identity_name == "scalar_ricci_agreement" && e.status != Status::hypothesis_failed)
      o.fail("conf_torus_4 agreement entry is " + to_string(e.status));
  if (o.pass) o.detail = "agree on hopf_standard, su2xu1; conf_torus_4 hypothesis_failed";
  return o;
}

// 4. Dimension four: λ^Ω = −2d†θ Ω and almost strong ⇔ strong.
Outcome dimension_four() {
  Outcome o;
  double worst = 0.0;
  for (const auto& name : catalog_names()) {
    const auto m = get_manifold(name);
    if (m->dim != 4) continue;
    const auto pts = points_for(*m);
    const double r = max_over(pts, [&](const Point& p) {
      Tensor rhs = kahler_form(*m, p);
      rhs *= -2.0 * lee_codifferential(*m, p, kStep);
      return to_frame(lambda_omega(*m, p, kStep).lambda - rhs, orthonormal_frame(m->metric(p))).max_abs();
    });
    worst = std::max(worst, r);
    if (!(r < kTolCurvature)) o.fail(name + ": lambda residual " + num(r));
    const auto f = classify(*m, pts, copts());
    if (f.almost_strong_kt.value != f.strong_kt.value) o.fail(name + ": almost strong != strong");
  }
  if (o.pass) o.detail = "worst lambda residual " + num(worst);
  return o;
}

// 5. Conformal change of the Chern trace.
Outcome conformal_trace() {
  Outcome o;
  std::string d;
  for (const char* name : {"conf_torus_4", "hopf_standard"}) {
    const auto m = get_manifold(name);
    const auto e = verify_conformal_trace(*m, points_for(*m), opts());
    if (!(e.max_residual < kTolCurvature)) o.fail(std::string(name) + " " + num(e.max_residual));
    d += std::string(d.empty() ? "" : ", ") + name + " " + num(e.max_residual);
  }
  if (o.pass) o.detail = d;
  return o;
}

// 6. HKT on the Hopf surface.
Outcome hkt() {
  Outcome o;
  const auto m = get_manifold("hopf_hkt");
  ClassifyOptions c;
  c.tolerance = kTolHkt;
  const auto h = check_hkt(*m, points_for(*m), c);
  if (!(h.quaternion < kTolHkt)) o.fail("quaternion " + num(h.quaternion));
  if (!(h.common_torsion < kTolHkt)) o.fail("torsion " + num(h.common_torsion));
  if (!(h.common_lee < kTolHkt)) o.fail("Lee forms " + num(h.common_lee));
  if (o.pass)
    o.detail = "quaternion " + num(h.quaternion) + ", torsion " + num(h.common_torsion) + ", Lee " +
               num(h.common_lee);
  return o;
}

// 7. Halving h shrinks every truncation-dominated curvature residual by ≥ 3.
Outcome convergence() {
  Outcome o;
  double min_ratio = 1e300;
  int counted = 0;
  for (const char* name : {"hopf_standard", "su2xu1", "hopf_hkt", "conf_torus_4", "conf_torus_6"}) {
    const auto m = get_manifold(name);
    const auto pts = points_for(*m, 8);
    for (const auto& c : core_identity_checks()) {
      if (!c.curvature_bearing) continue;
      const double coarse = evaluate(c, *m, pts, opts(kCoarseStep)).max_residual;
      if (coarse < kRoundoffFloor) continue;
      const double fine = evaluate(c, *m, pts, opts(kFineStep)).max_residual;
      const double ratio = coarse / fine;
      ++counted;
      min_ratio = std::min(min_ratio, ratio);
      if (!(ratio >= kConvergenceFactor))
        o.fail(std::string(name) + "/" + c.name + " ratio " + num(ratio));
    }
  }
  if (counted == 0) o.fail("no residual above the roundoff floor");
  if (o.pass) o.detail = std::to_string(counted) + " residuals, min ratio " + num(min_ratio);
  return o;
}

// 8. The suite cannot pass vacuously.
Outcome negative_control() {
  Outcome o;
  const auto m = get_manifold("conf_torus_4");
  const double r = constant_dilaton_forms(*m, points_for(*m), opts()).ric_residual;
  if (!(r > kNegativeMargin * kTolCurvature)) o.fail("Ric residual only " + num(r));
  else o.detail = "Ric residual " + num(r) + " > " + num(kNegativeMargin * kTolCurvature);
  return o;
}

int run_cli(const std::string& args, const std::string& out) {
  const std::string cmd = std::string(KTGEOM_CLI) + " " + args + " > " + out + " 2>" + out + ".err";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// 9. Byte-identical reports and the exit-status contract.
Outcome determinism_and_cli() {
  Outcome o;
  RunConfig cfg;
  cfg.manifolds = {"hopf_standard", "conf_torus_4"};
  cfg.points = 8;
  cfg.seed = 1;
  if (render(run(cfg).report) != render(run(cfg).report)) o.fail("library reports differ");
  RunConfig serial = cfg;
  serial.exec = Execution::serial;
  if (render(run(cfg).report) != render(run(serial).report)) o.fail("serial and parallel reports differ");

  const std::string dir = std::string(KTGEOM_SCRATCH);
  const std::string args = "report --manifold hopf_standard --points 8 --seed 1";
  const int a = run_cli(args, dir + "/a.json");
  const int b = run_cli(args, dir + "/b.json");
  if (a != 0 || b != 0) o.fail("hopf_standard exit " + std::to_string(a));
  if (slurp(dir + "/a.json") != slurp(dir + "/b.json") || slurp(dir + "/a.json").empty())
    o.fail("CLI reports differ");
  struct Case {
    std::string args;
    int expect;
  };
  const std::vector<Case> cases{
      {"list", 0},
      {"report --manifold flat_torus_4 --points 8", 0},
      {"report --manifold conf_torus_4 --points 8", 0},
      {"report --manifold conf_torus_6 --points 8", 1},  // verbatim n >= 3 lambda formula fails
      {"report --manifold not_a_manifold", 2},
      {"report --manifold hopf_standard --points 0", 2},
      {"report --manifold hopf_standard --h 0.09 --points 4", 3},  // stencil leaves the chart
  };
  for (const auto& c : cases) {
    const int got = run_cli(c.args, dir + "/c.json");
    if (got != c.expect)
      o.fail("'" + c.args + "' exit " + std::to_string(got) + " != " + std::to_string(c.expect));
  }
  const std::string err = slurp(dir + "/c.json.err");
  if (err.find("hopf_standard") == std::string::npos || err.find(" at (") == std::string::npos)
    o.fail("numeric failure message lacks manifold or point: " + err);
  const std::string lookup = (run_cli("report --manifold nope", dir + "/d.json"), slurp(dir + "/d.json.err"));
  if (lookup.find("su2xu1") == std::string::npos) o.fail("unknown-manifold message lacks catalog");
  if (o.pass) o.detail = "reports byte-identical; exit codes 0/1/2/3 as specified";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "identity suite on every catalog manifold", identity_suite},
      {2, "Hopf surface facts", hopf_surface},
      {3, "scalar curvature vs Ricci under strong KT and rho = 0", scalar_ricci},
      {4, "dimension-four chain", dimension_four},
      {5, "conformal Chern-trace formula", conformal_trace},
      {6, "HKT structure on the Hopf surface", hkt},
      {7, "finite-difference convergence", convergence},
      {8, "negative control", negative_control},
      {9, "determinism and CLI contract", determinism_and_cli},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %d. %s: %s\n", r.pass ? "PASS" : "FAIL", c.id, c.title, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
