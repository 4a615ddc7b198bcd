#include "ktgeom/catalog.hpp"

#include "ktgeom/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace ktgeom {

namespace {

constexpr double kPi = std::numbers::pi;

ChartDomain torus_domain(int dim) {
  ChartDomain d;
  d.box.assign(static_cast<std::size_t>(dim), Interval{0.0, 2.0 * kPi, true});
  return d;
}

ChartDomain annulus_domain(int dim, double r0, double r1) {
  ChartDomain d;
  d.box.assign(static_cast<std::size_t>(dim), Interval{-r1, r1, false});
  d.annulus = std::make_pair(r0, r1);
  return d;
}

double radius(const Point& p) {
  double s = 0.0;
  for (double v : p.coords()) s += v * v;
  return std::sqrt(s);
}

std::shared_ptr<HermitianManifold> flat(std::string name, int dim, ChartDomain domain) {
  auto m = std::make_shared<HermitianManifold>();
  m->name = std::move(name);
  m->dim = dim;
  m->domain = std::move(domain);
  m->metric = guarded(m->domain, [dim](const Point&) { return Matrix(Matrix::Identity(dim, dim)); },
                      "metric");
  const Matrix J = standard_complex_structure(dim);
  m->complex_structure = guarded(m->domain, [J](const Point&) { return J; }, "complex structure");
  m->lck = true;
  return m;
}

// Left multiplication by j and k on ℍ = ℝ⁴ with coordinates (1, i, j, k).
Matrix left_j() {
  Matrix L(4, 4);
  L << 0, 0, -1, 0,
       0, 0, 0, 1,
       1, 0, 0, 0,
       0, -1, 0, 0;
  return L;
}

Matrix left_k() {
  Matrix L(4, 4);
  L << 0, 0, 0, -1,
       0, 0, -1, 0,
       0, 1, 0, 0,
       1, 0, 0, 0;
  return L;
}

// Left-invariant coframe (σ1, σ2, σ3, dt) on SU(2)×U(1) in Euler angles
// (ϑ, ϕ, ψ, t), normalized to the unit three-sphere.
Matrix su2_coframe(const Point& p) {
  const double th = p[0];
  const double ps = p[2];
  Matrix S = Matrix::Zero(4, 4);
  S(0, 0) = 0.5 * std::sin(ps);
  S(0, 1) = -0.5 * std::cos(ps) * std::sin(th);
  S(1, 0) = 0.5 * std::cos(ps);
  S(1, 1) = 0.5 * std::sin(ps) * std::sin(th);
  S(2, 1) = 0.5 * std::cos(th);
  S(2, 2) = 0.5;
  S(3, 3) = 1.0;
  return S;
}

ManifoldPtr make_su2xu1() {
  auto m = std::make_shared<HermitianManifold>();
  m->name = "su2xu1";
  m->dim = 4;
  m->domain.box = {Interval{0.2, kPi - 0.2, false}, Interval{0.0, 2.0 * kPi, true},
                   Interval{0.0, 4.0 * kPi, true}, Interval{0.0, 2.0 * kPi, true}};
  m->metric = guarded(
      m->domain,
      [](const Point& p) {
        const Matrix S = su2_coframe(p);
        return Matrix(S.transpose() * S);
      },
      "metric");
  const Matrix Jhat = standard_complex_structure(4);
  m->complex_structure = guarded(
      m->domain,
      [Jhat](const Point& p) {
        const Matrix S = su2_coframe(p);
        return Matrix(S.inverse() * Jhat * S);
      },
      "complex structure");
  // θ = −2 dt for this orientation of J, so φ = −t satisfies 2dφ = θ.
  m->dilaton = guarded(m->domain, [](const Point& p) { return -p[3]; }, "dilaton");
  m->lck = true;
  m->description = "bi-invariant KT structure on SU(2)xU(1), Euler-angle chart";
  return m;
}

ManifoldPtr make_conf_torus(int dim) {
  auto base = flat("flat_torus_" + std::to_string(dim), dim, torus_domain(dim));
  const ScalarField f = [](const Point& p) { return 0.3 * std::sin(p[0]) * std::cos(p[2]); };
  auto rescaled = conformal_rescale(base, f, "conf_torus_" + std::to_string(dim));
  auto m = std::make_shared<HermitianManifold>(*rescaled);
  const double n1 = dim / 2 - 1;
  m->dilaton = guarded(m->domain, [f, n1](const Point& p) { return n1 * f(p); }, "dilaton");
  m->description = "flat torus rescaled by exp(2f), f = 0.3 sin(x1) cos(x2)";
  return m;
}

ManifoldPtr make_hopf(const std::string& name) {
  const ScalarField f = [](const Point& p) { return -std::log(radius(p)); };
  auto rescaled = conformal_rescale(flat_punctured_space(), f, name);
  auto m = std::make_shared<HermitianManifold>(*rescaled);
  m->dilaton = guarded(m->domain, f, "dilaton");
  m->description = "Hopf surface universal cover, g = delta / r^2 on 0.5 <= r <= 2";
  return m;
}

std::map<std::string, ManifoldPtr> build_catalog() {
  std::map<std::string, ManifoldPtr> cat;
  {
    auto m = flat("flat_torus_4", 4, torus_domain(4));
    m->description = "flat Kahler torus T^4";
    cat[m->name] = m;
  }
  {
    auto m = flat("flat_torus_6", 6, torus_domain(6));
    m->description = "flat Kahler torus T^6";
    cat[m->name] = m;
  }
  cat["hopf_standard"] = make_hopf("hopf_standard");
  cat["su2xu1"] = make_su2xu1();
  {
    auto m = std::make_shared<HermitianManifold>(*make_hopf("hopf_hkt"));
    const Matrix Lj = left_j();
    const Matrix Lk = left_k();
    m->hypercomplex = std::array<MatrixField, 2>{
        guarded(m->domain, [Lj](const Point&) { return Lj; }, "J2"),
        guarded(m->domain, [Lk](const Point&) { return Lk; }, "J3")};
    m->description = "Hopf metric with the left quaternionic triple (i, j, k)";
    cat[m->name] = m;
  }
  cat["conf_torus_4"] = make_conf_torus(4);
  cat["conf_torus_6"] = make_conf_torus(6);
  return cat;
}

const std::map<std::string, ManifoldPtr>& catalog() {
  static const std::map<std::string, ManifoldPtr> cat = build_catalog();
  return cat;
}

}  // namespace

MatrixField guarded(const ChartDomain& domain, MatrixField f, const std::string& what) {
  return [domain, f = std::move(f), what](const Point& p) {
    if (!domain.contains(p))
      throw DomainError(what + " evaluated outside the chart (" + domain.describe() + ") at " +
                        p.str());
    return f(p);
  };
}

ScalarField guarded(const ChartDomain& domain, ScalarField f, const std::string& what) {
  return [domain, f = std::move(f), what](const Point& p) {
    if (!domain.contains(p))
      throw DomainError(what + " evaluated outside the chart (" + domain.describe() + ") at " +
                        p.str());
    return f(p);
  };
}

Matrix standard_complex_structure(int dim) {
  Matrix J = Matrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    J(k + 1, k) = 1.0;
    J(k, k + 1) = -1.0;
  }
  return J;
}

std::vector<std::string> catalog_names() {
  return {"flat_torus_4", "flat_torus_6", "hopf_standard", "su2xu1",
          "hopf_hkt",     "conf_torus_4", "conf_torus_6"};
}

ManifoldPtr get_manifold(const std::string& name) {
  const auto& cat = catalog();
  const auto it = cat.find(name);
  if (it == cat.end()) {
    std::string msg = "unknown manifold '" + name + "'; catalog:";
    for (const auto& n : catalog_names()) msg += " " + n;
    throw LookupError(msg);
  }
  return it->second;
}

ManifoldPtr flat_punctured_space() {
  static const ManifoldPtr m = [] {
    auto f = flat("flat_punctured_r4", 4, annulus_domain(4, 0.5, 2.0));
    f->description = "flat C^2 minus the origin";
    return ManifoldPtr(f);
  }();
  return m;
}

ManifoldPtr conformal_rescale(const ManifoldPtr& m, ScalarField f, std::string name) {
  auto out = std::make_shared<HermitianManifold>(*m);
  out->name = std::move(name);
  const MatrixField g0 = m->metric;
  const ScalarField fg = guarded(m->domain, f, "conformal factor");
  out->metric = [g0, fg](const Point& p) { return Matrix(std::exp(2.0 * fg(p)) * g0(p)); };
  out->dilaton.reset();
  out->conformal_parent = ConformalParent{m, fg};
  out->description = "conformal rescaling of " + m->name;
  return out;
}

}  // namespace ktgeom
