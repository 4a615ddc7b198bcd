#pragma once
// Test-only geometries outside the catalog.

#include "ktgeom/catalog.hpp"

#include <cmath>
#include <memory>

namespace ktgeom::testing {

inline ChartDomain periodic_box(int dim) {
  ChartDomain d;
  for (int i = 0; i < dim; ++i) d.box.push_back({0.0, 2.0 * M_PI, true});
  return d;
}

/// A Hermitian metric on the 6-torus that is neither Kähler nor LCK:
/// g = ½(M + JᵀMJ) with M = 1 + 0.05 S, S_ij = sin(x_i + 2x_j) + sin(x_j + 2x_i).
inline ManifoldPtr generic_hermitian_6() {
  auto m = std::make_shared<HermitianManifold>();
  m->name = "generic_hermitian_6";
  m->dim = 6;
  m->domain = periodic_box(6);
  const Matrix J = standard_complex_structure(6);
  m->metric = [J](const Point& p) {
    Matrix M = Matrix::Identity(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) M(i, j) += 0.05 * (std::sin(p[i] + 2 * p[j]) + std::sin(p[j] + 2 * p[i]));
    return Matrix(0.5 * (M + J.transpose() * M * J));
  };
  m->complex_structure = [J](const Point&) { return J; };
  m->description = "test-only non-LCK Hermitian metric";
  return m;
}

/// Left multiplication by j and k on H = R⁴ with q = x1 + y1 i + x2 j + y2 k.
inline Matrix left_j() {
  Matrix L = Matrix::Zero(4, 4);
  L(2, 0) = 1;   // 1 ↦ j
  L(3, 1) = -1;  // i ↦ −k
  L(0, 2) = -1;  // j ↦ −1
  L(1, 3) = 1;   // k ↦ i
  return L;
}
inline Matrix left_k() {
  Matrix L = Matrix::Zero(4, 4);
  L(3, 0) = 1;   // 1 ↦ k
  L(2, 1) = 1;   // i ↦ j
  L(1, 2) = -1;  // j ↦ −i
  L(0, 3) = -1;  // k ↦ −1
  return L;
}

/// Flat 4-torus with the constant quaternionic triple: hyper-Kähler.
inline ManifoldPtr flat_hyperkahler_torus() {
  auto m = std::make_shared<HermitianManifold>(*get_manifold("flat_torus_4"));
  m->name = "flat_hyperkahler_torus";
  const Matrix Lj = left_j(), Lk = left_k();
  m->hypercomplex = std::array<MatrixField, 2>{[Lj](const Point&) { return Lj; },
                                               [Lk](const Point&) { return Lk; }};
  return m;
}

/// Non-integrable almost complex structure: J rotated by an angle that
/// depends on a coordinate, mixing the two complex planes.
inline ManifoldPtr twisted_almost_complex() {
  auto m = std::make_shared<HermitianManifold>(*get_manifold("flat_torus_4"));
  m->name = "twisted_almost_complex";
  const Matrix J0 = standard_complex_structure(4);
  m->complex_structure = [J0](const Point& p) {
    const double a = 0.4 * std::sin(p[1]);
    Matrix R = Matrix::Identity(4, 4);
    R(0, 0) = std::cos(a);
    R(0, 2) = -std::sin(a);
    R(2, 0) = std::sin(a);
    R(2, 2) = std::cos(a);
    return Matrix(R * J0 * R.transpose());
  };
  return m;
}

}  // namespace ktgeom::testing
