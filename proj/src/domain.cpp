#include "ktgeom/domain.hpp"

#include "ktgeom/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ktgeom {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t counter, std::uint64_t stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ counter);
  h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

bool ChartDomain::contains(const Point& p) const {
  if (p.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const Interval& iv = box[static_cast<std::size_t>(i)];
    if (!std::isfinite(p[i])) return false;
    if (!iv.periodic && (p[i] < iv.lo || p[i] > iv.hi)) return false;
  }
  if (annulus) {
    double r2 = 0.0;
    for (double v : p.coords()) r2 += v * v;
    const double r = std::sqrt(r2);
    if (r < annulus->first || r > annulus->second) return false;
  }
  return true;
}

std::string ChartDomain::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (annulus) {
    os << "annulus " << annulus->first << " <= r <= " << annulus->second << " in R^" << dim();
    return os.str();
  }
  os << "box";
  for (const Interval& iv : box) {
    os << " [" << iv.lo << ", " << iv.hi << (iv.periodic ? ") periodic" : "]");
  }
  return os.str();
}

std::vector<Point> sample_points(const ChartDomain& domain, int count, std::uint64_t seed,
                                 double margin) {
  if (count < 1) throw PreconditionError("point count must be at least 1");
  const int n = domain.dim();
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const auto ctr = static_cast<std::uint64_t>(k);
    std::vector<double> x(static_cast<std::size_t>(n));
    if (domain.annulus) {
      const double r0 = domain.annulus->first + margin;
      const double r1 = domain.annulus->second - margin;
      if (!(r1 > r0)) throw PreconditionError("sampling margin exceeds the annulus width");
      // Direction from normalized Gaussians (Box–Muller), radius by volume.
      double nrm = 0.0;
      for (int i = 0; i < n; ++i) {
        const double u1 = 1.0 - uniform01(seed, ctr, static_cast<std::uint64_t>(2 * i + 1));
        const double u2 = uniform01(seed, ctr, static_cast<std::uint64_t>(2 * i + 2));
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        x[static_cast<std::size_t>(i)] = z;
        nrm += z * z;
      }
      nrm = std::sqrt(nrm);
      const double u = uniform01(seed, ctr, 0);
      const double a = std::pow(r0, n);
      const double b = std::pow(r1, n);
      const double r = std::pow(a + u * (b - a), 1.0 / n);
      for (double& v : x) v *= r / nrm;
    } else {
      for (int i = 0; i < n; ++i) {
        const Interval& iv = domain.box[static_cast<std::size_t>(i)];
        const double lo = iv.periodic ? iv.lo : iv.lo + margin;
        const double hi = iv.periodic ? iv.hi : iv.hi - margin;
        if (!(hi > lo)) throw PreconditionError("sampling margin exceeds the chart box");
        x[static_cast<std::size_t>(i)] = lo + (hi - lo) * uniform01(seed, ctr, static_cast<std::uint64_t>(i + 1));
      }
    }
    pts.emplace_back(std::move(x));
  }
  return pts;
}

}  // namespace ktgeom
