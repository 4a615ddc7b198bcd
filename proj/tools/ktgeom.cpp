// Command-line front end: list the catalog, run reports, run the full suite.
#include "ktgeom/catalog.hpp"
#include "ktgeom/errors.hpp"
#include "ktgeom/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kNumeric = 3 };

int emit(const ktgeom::RunResult& r, const std::string& out) {
  const std::string text = ktgeom::render(r.report);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << out << "\n";
      return kConfig;
    }
    f << text;
  }
  std::cerr << (r.overall_pass ? "overall: pass" : "overall: FAIL") << "\n";
  return r.overall_pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Hermitian manifolds with torsion"};
  app.set_help_flag("--help", "Print help");  // -h would clash with --h
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the manifold catalog");

  ktgeom::RunConfig cfg;
  std::string manifold;
  std::vector<std::string> suites;
  std::string out;
  bool serial = false;
  double tol_identity = 0.0;

  auto* report = app.add_subcommand("report", "Run the suites on one manifold (or 'all')");
  report->add_option("--manifold", manifold, "Catalog name or 'all'")->required();
  report->add_option("--points", cfg.points, "Sample points per manifold")->capture_default_str();
  report->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  report->add_option("--h", cfg.step, "Finite-difference step")->capture_default_str();
  auto* tol_id = report->add_option("--tol-identity", tol_identity,
                                    "Tolerance for every identity (overrides 1e-4 / 1e-6)");
  report->add_option("--tol-classify", cfg.tol_classify, "Classification tolerance")
      ->capture_default_str();
  report->add_option("--suite", suites, "identities, classify, string, dim4 (repeatable)");
  report->add_option("--out", out, "Output file (default stdout)");
  report->add_flag("--loop-check", cfg.loop_check, "Add plaquette holonomy cross-checks");
  report->add_flag("--serial", serial, "Use the serial reference sweep");

  auto* suite = app.add_subcommand("suite", "Every manifold, every suite");
  bool all = false;
  suite->add_flag("--all", all, "Required: run the whole catalog")->required();
  suite->add_option("--points", cfg.points, "Sample points per manifold")->capture_default_str();
  suite->add_option("--seed", cfg.seed, "Sampling seed")->capture_default_str();
  suite->add_option("--out", out, "Output file (default stdout)");
  suite->add_flag("--serial", serial, "Use the serial reference sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : ktgeom::catalog_names()) {
        const auto m = ktgeom::get_manifold(name);
        std::cout << name << "  (dim " << m->dim << ")  " << m->description << "\n";
      }
      return kPass;
    }
    cfg.exec = serial ? ktgeom::Execution::serial : ktgeom::Execution::parallel;
    if (report->parsed()) {
      cfg.manifolds = {manifold};
      if (*tol_id) cfg.tol_identity = tol_identity;
      if (!suites.empty()) {
        cfg.suites.clear();
        for (const auto& s : suites) cfg.suites.insert(ktgeom::parse_suite(s));
      }
    } else {
      cfg.manifolds = {"all"};
    }
    return emit(ktgeom::run(cfg), out);
  } catch (const ktgeom::LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ktgeom::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ktgeom::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
