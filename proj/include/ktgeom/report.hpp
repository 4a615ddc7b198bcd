#pragma once

#include "ktgeom/sweep.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ktgeom {

using Json = nlohmann::ordered_json;

enum class Suite { identities, classify, string, dim4 };

std::string to_string(Suite s);
/// Throws ConfigError for an unknown suite name.
Suite parse_suite(const std::string& name);
std::set<Suite> all_suites();

struct RunConfig {
  std::vector<std::string> manifolds;  // catalog names; "all" expands to the catalog
  int points = 32;
  std::uint64_t seed = 0;
  double step = 1e-4;
  double tol_curvature = 1e-4;
  double tol_first_order = 1e-6;
  std::optional<double> tol_identity;  // overrides both identity tolerances
  double tol_classify = 1e-5;
  std::set<Suite> suites = all_suites();
  bool loop_check = false;
  Execution exec = Execution::parallel;

  /// Throws ConfigError (bad N, h or tolerance) or LookupError (unknown name).
  void validate() const;
  std::vector<std::string> resolved_manifolds() const;
};

struct RunResult {
  Json report;
  bool overall_pass = false;
};

/// Deterministic given the config: no timestamps, no thread counts.
/// Engine failures propagate as ktgeom::Error with manifold, identity and point.
RunResult run(const RunConfig& config);

/// Conventions header shared by every report.
Json convention_header();

/// Two-space indented JSON with a trailing newline.
std::string render(const Json& report);

}  // namespace ktgeom
