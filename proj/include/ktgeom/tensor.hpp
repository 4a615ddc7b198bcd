#pragma once

// Pointwise multilinear algebra on a chart. Tensors are stored fully
// covariant in row-major order (first index slowest); index raising is
// always explicit.

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ktgeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr int kMaxValence = 6;
using MultiIndex = std::array<int, kMaxValence>;

/// Chart coordinates of a point.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : x_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : x_(coords) {}

  int dim() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return x_; }

  Point shifted(int axis, double delta) const {
    Point q = *this;
    q[axis] += delta;
    return q;
  }

  std::string str() const;

 private:
  std::vector<double> x_;
};

/// Components of a covariant tensor at a point.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int valence, bool form = false);

  static Tensor from_matrix(const Matrix& m, bool form = false);

  int dim() const { return dim_; }
  int valence() const { return valence_; }
  bool is_form() const { return form_; }
  void set_form(bool form) { form_ = form; }
  std::size_t size() const { return c_.size(); }

  std::span<double> components() { return c_; }
  std::span<const double> components() const { return c_; }

  template <class... I>
  double& operator()(I... idx) {
    return c_[flat(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return c_[flat(idx...)];
  }

  double& at(const MultiIndex& idx);
  double at(const MultiIndex& idx) const;

  /// Decodes a flat storage offset into a multi-index.
  MultiIndex unflatten(std::size_t k) const;

  Matrix to_matrix() const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

  double max_abs() const;
  /// Largest deviation from total antisymmetry, relative to max_abs().
  double antisymmetry_defect() const;

 private:
  template <class... I>
  std::size_t flat(I... idx) const {
    std::size_t k = 0;
    ((k = k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return k;
  }

  int dim_ = 0;
  int valence_ = 0;
  bool form_ = false;
  std::vector<double> c_;
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(double s, Tensor a);
Tensor operator-(Tensor a);

/// Maximum absolute component difference; shapes must agree.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// result(i_0, ..., i_{p-1}) = t(i_{perm[0]}, ..., i_{perm[p-1]}).
Tensor permute(const Tensor& t, std::span<const int> perm);

/// Cyclic sum over the first three slots: t(X,Y,Z,..) + t(Y,Z,X,..) + t(Z,X,Y,..).
Tensor cyclic_sum3(const Tensor& t);

/// Inserts an endomorphism into one slot: result(.., X, ..) = t(.., A X, ..).
Tensor insert_endomorphism(const Tensor& t, const Matrix& a, int slot);

/// Same endomorphism inserted into every slot.
Tensor insert_endomorphism_all(const Tensor& t, const Matrix& a);

/// Tensor product a ⊗ b.
Tensor outer(const Tensor& a, const Tensor& b);

/// Wedge product with the determinant convention
/// (α∧β)(X_1..X_{p+q}) = 1/(p!q!) Σ_σ sgn(σ) α(X_σ..) β(X_σ..).
Tensor wedge(const Tensor& a, const Tensor& b);

/// Interior product in the first slot with a contravariant vector.
Tensor interior(const Vector& v, const Tensor& t);

/// Contracts slots i < j of t with the symmetric bilinear form `inv`
/// (typically g^{-1}, or the identity for frame components).
Tensor trace_pair(const Tensor& t, int i, int j, const Matrix& inv);

/// Raises a 1-form with g^{-1}.
Vector sharp(const Tensor& one_form, const Matrix& inverse_metric);

/// Sign of a permutation given as a list of distinct integers.
int permutation_sign(std::span<const int> p);

}  // namespace ktgeom
