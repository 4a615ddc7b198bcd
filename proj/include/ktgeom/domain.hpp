#pragma once

#include "ktgeom/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ktgeom {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
};

/// Coordinate box, optionally intersected with a Euclidean annulus
/// r_min ≤ |x| ≤ r_max. Periodic coordinates never bound a stencil.
struct ChartDomain {
  std::vector<Interval> box;
  std::optional<std::pair<double, double>> annulus;

  int dim() const { return static_cast<int>(box.size()); }
  bool contains(const Point& p) const;
  std::string describe() const;
};

/// Counter-based uniform draw in [0, 1) keyed by (seed, counter, stream).
double uniform01(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream);

/// Deterministic sample of `count` points: uniform in the box (with every
/// non-periodic side pulled in by `margin`), or uniform by volume in the
/// annulus shrunk by `margin` on both radii.
std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed,
                                 double margin = 0.1);

}  // namespace ktgeom
