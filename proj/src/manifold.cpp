#include "ktgeom/manifold.hpp"

#include "ktgeom/errors.hpp"
#include "ktgeom/frame.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ktgeom {

HermitianManifold HermitianManifold::with_complex_structure(MatrixField J,
                                                            std::string new_name) const {
  HermitianManifold out = *this;
  out.name = std::move(new_name);
  out.complex_structure = std::move(J);
  out.hypercomplex.reset();
  out.conformal_parent.reset();
  out.dilaton.reset();
  return out;
}

Tensor nijenhuis(const HermitianManifold& m, const Point& p, double step) {
  const int n = m.dim;
  const Matrix J = m.complex_structure(p);
  const Tensor dJ = partial(m.complex_structure, p, step);  // (d, a, c) = ∂_d J^a_c
  // N^a_{bc} = J^d_b ∂_d J^a_c − J^d_c ∂_d J^a_b + J^a_d (∂_c J^d_b − ∂_b J^d_c)
  Tensor up(n, 3);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a) {
        double s = 0.0;
        for (int d = 0; d < n; ++d) {
          s += J(d, b) * dJ(d, a, c) - J(d, c) * dJ(d, a, b);
          s += J(a, d) * (dJ(c, d, b) - dJ(b, d, c));
        }
        up(b, c, a) = s;
      }
  const Matrix g = m.metric(p);
  return insert_endomorphism(up, g, 2);
}

ManifoldInvariants check_invariants(const HermitianManifold& m, std::span<const Point> points,
                                    double step) {
  ManifoldInvariants inv;
  inv.min_metric_eigenvalue = std::numeric_limits<double>::infinity();
  double worst = -1.0;
  for (const Point& p : points) {
    const Matrix g = m.metric(p);
    const Matrix J = m.complex_structure(p);
    const int n = m.dim;
    const Matrix Id = Matrix::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.transpose()));
    inv.min_metric_eigenvalue = std::min(inv.min_metric_eigenvalue, es.eigenvalues().minCoeff());
    inv.metric_asymmetry = std::max(inv.metric_asymmetry, (g - g.transpose()).cwiseAbs().maxCoeff());
    inv.j_square = std::max(inv.j_square, (J * J + Id).cwiseAbs().maxCoeff());
    inv.j_compatibility =
        std::max(inv.j_compatibility, (J.transpose() * g * J - g).cwiseAbs().maxCoeff());
    const Frame f = orthonormal_frame(g);
    const double nij = to_frame(nijenhuis(m, p, step), f).max_abs();
    if (nij > worst) {
      worst = nij;
      inv.worst_point = p;
    }
    inv.nijenhuis = std::max(inv.nijenhuis, nij);
    if (m.hypercomplex) {
      const std::array<Matrix, 3> Js{J, (*m.hypercomplex)[0](p), (*m.hypercomplex)[1](p)};
      double q = inv.quaternion.value_or(0.0);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Matrix expect = Matrix::Zero(n, n);
          if (a == b) {
            expect = -Id;
          } else {
            const int c = 3 - a - b;
            // ε_abc for (a,b,c) a permutation of (0,1,2)
            const int eps = ((b - a + 3) % 3 == 1) ? 1 : -1;
            expect = eps * Js[static_cast<std::size_t>(c)];
          }
          q = std::max(q, (Js[static_cast<std::size_t>(a)] * Js[static_cast<std::size_t>(b)] - expect)
                              .cwiseAbs()
                              .maxCoeff());
        }
      inv.quaternion = q;
    }
  }
  return inv;
}

}  // namespace ktgeom
