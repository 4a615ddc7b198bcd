// Serial reference sweep vs OpenMP sweep over the core identities.
// Exits nonzero if the two paths disagree in any bit.
#include "ktgeom/catalog.hpp"
#include "ktgeom/identities.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>

namespace {

double seconds_for(const ktgeom::HermitianManifold& m, const std::vector<ktgeom::Point>& pts,
                   ktgeom::Execution exec, int repeats, std::vector<ktgeom::ResidualEntry>& out) {
  ktgeom::SuiteOptions opts;
  opts.exec = exec;
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    out = ktgeom::evaluate_all(ktgeom::core_identity_checks(), m, pts, opts);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

bool same_bits(const std::vector<ktgeom::ResidualEntry>& a,
               const std::vector<ktgeom::ResidualEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::memcmp(&a[i].max_residual, &b[i].max_residual, sizeof(double)) != 0) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs parallel sweep timing"};
  int points = 32;
  int repeats = 3;
  std::vector<std::string> names{"hopf_standard", "su2xu1", "conf_torus_6"};
  app.add_option("--points", points)->capture_default_str();
  app.add_option("--repeats", repeats)->capture_default_str();
  app.add_option("--manifold", names, "Catalog names");
  CLI11_PARSE(app, argc, argv);

  std::printf("workers: %d\n", ktgeom::parallel_workers());
  std::printf("%-16s %8s %10s %10s %8s %s\n", "manifold", "points", "serial_s", "parallel_s",
              "speedup", "identical");
  bool ok = true;
  for (const auto& name : names) {
    const auto m = ktgeom::get_manifold(name);
    const auto pts = ktgeom::sample_points(m->domain, points, 0);
    std::vector<ktgeom::ResidualEntry> s, p;
    const double ts = seconds_for(*m, pts, ktgeom::Execution::serial, repeats, s);
    const double tp = seconds_for(*m, pts, ktgeom::Execution::parallel, repeats, p);
    const bool same = same_bits(s, p);
    ok = ok && same;
    std::printf("%-16s %8d %10.3f %10.3f %8.2f %s\n", name.c_str(), points, ts, tp, ts / tp,
                same ? "yes" : "NO");
  }
  return ok ? 0 : 1;
}
