#include "ktgeom/tensor.hpp"

#include "ktgeom/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ktgeom {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim() || a.valence() != b.valence()) {
    throw ContractError("tensor shape mismatch");
  }
}

std::size_t flatten(const MultiIndex& idx, int dim, int valence) {
  std::size_t k = 0;
  for (int s = 0; s < valence; ++s) k = k * static_cast<std::size_t>(dim) + static_cast<std::size_t>(idx[s]);
  return k;
}

}  // namespace

std::string Point::str() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int i = 0; i < dim(); ++i) os << (i ? ", " : "") << x_[static_cast<std::size_t>(i)];
  os << ')';
  return os.str();
}

Tensor::Tensor(int dim, int valence, bool form)
    : dim_(dim), valence_(valence), form_(form), c_(ipow(dim, valence), 0.0) {
  if (valence < 0 || valence > kMaxValence) throw ContractError("unsupported valence");
}

Tensor Tensor::from_matrix(const Matrix& m, bool form) {
  Tensor t(static_cast<int>(m.rows()), 2, form);
  for (int a = 0; a < t.dim_; ++a)
    for (int b = 0; b < t.dim_; ++b) t(a, b) = m(a, b);
  return t;
}

double& Tensor::at(const MultiIndex& idx) { return c_[flatten(idx, dim_, valence_)]; }
double Tensor::at(const MultiIndex& idx) const { return c_[flatten(idx, dim_, valence_)]; }

MultiIndex Tensor::unflatten(std::size_t k) const {
  MultiIndex idx{};
  for (int s = valence_ - 1; s >= 0; --s) {
    idx[s] = static_cast<int>(k % static_cast<std::size_t>(dim_));
    k /= static_cast<std::size_t>(dim_);
  }
  return idx;
}

Matrix Tensor::to_matrix() const {
  if (valence_ != 2) throw ContractError("to_matrix needs a (0,2)-tensor");
  Matrix m(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) m(a, b) = (*this)(a, b);
  return m;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  form_ = form_ && o.form_;
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  form_ = form_ && o.form_;
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor::antisymmetry_defect() const {
  if (valence_ < 2) return 0.0;
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    MultiIndex idx = unflatten(k);
    for (int s = 0; s + 1 < valence_; ++s) {
      MultiIndex sw = idx;
      std::swap(sw[s], sw[s + 1]);
      worst = std::max(worst, std::abs(c_[k] + at(sw)));
    }
  }
  return worst / scale;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(double s, Tensor a) { return a *= s; }
Tensor operator-(Tensor a) { return a *= -1.0; }

double max_abs_diff(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  double m = 0.0;
  auto ca = a.components();
  auto cb = b.components();
  for (std::size_t k = 0; k < ca.size(); ++k) m = std::max(m, std::abs(ca[k] - cb[k]));
  return m;
}

Tensor permute(const Tensor& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.valence()) throw ContractError("permutation length mismatch");
  Tensor r(t.dim(), t.valence());
  auto rc = r.components();
  for (std::size_t k = 0; k < rc.size(); ++k) {
    MultiIndex idx = r.unflatten(k);
    MultiIndex src{};
    for (int s = 0; s < t.valence(); ++s) src[s] = idx[perm[static_cast<std::size_t>(s)]];
    rc[k] = t.at(src);
  }
  return r;
}

Tensor cyclic_sum3(const Tensor& t) {
  if (t.valence() < 3) throw ContractError("cyclic sum needs valence >= 3");
  std::vector<int> p1(static_cast<std::size_t>(t.valence()));
  std::iota(p1.begin(), p1.end(), 0);
  std::vector<int> p2 = p1;
  p1[0] = 1, p1[1] = 2, p1[2] = 0;
  p2[0] = 2, p2[1] = 0, p2[2] = 1;
  Tensor r = t;
  r += permute(t, p1);
  r += permute(t, p2);
  r.set_form(false);
  return r;
}

Tensor insert_endomorphism(const Tensor& t, const Matrix& a, int slot) {
  Tensor r(t.dim(), t.valence());
  auto rc = r.components();
  for (std::size_t k = 0; k < rc.size(); ++k) {
    MultiIndex idx = r.unflatten(k);
    const int x = idx[slot];
    double s = 0.0;
    for (int b = 0; b < t.dim(); ++b) {
      idx[slot] = b;
      s += t.at(idx) * a(b, x);
    }
    rc[k] = s;
  }
  return r;
}

Tensor insert_endomorphism_all(const Tensor& t, const Matrix& a) {
  Tensor r = t;
  for (int s = 0; s < t.valence(); ++s) r = insert_endomorphism(r, a, s);
  r.set_form(t.is_form());
  return r;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw ContractError("dimension mismatch in outer product");
  Tensor r(a.dim(), a.valence() + b.valence());
  auto rc = r.components();
  auto ac = a.components();
  auto bc = b.components();
  for (std::size_t i = 0; i < ac.size(); ++i)
    for (std::size_t j = 0; j < bc.size(); ++j) rc[i * bc.size() + j] = ac[i] * bc[j];
  return r;
}

int permutation_sign(std::span<const int> p) {
  int sign = 1;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

Tensor wedge(const Tensor& a, const Tensor& b) {
  if (a.dim() != b.dim()) throw ContractError("dimension mismatch in wedge");
  const int p = a.valence();
  const int q = b.valence();
  const int n = p + q;
  Tensor r(a.dim(), n, true);
  // Sum over shuffles: ordered splits of the slot positions into p and q.
  std::vector<int> pos(static_cast<std::size_t>(n));
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> shuffles;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + p, true);
  do {
    std::vector<int> order;
    for (int s = 0; s < n; ++s)
      if (pick[static_cast<std::size_t>(s)]) order.push_back(s);
    for (int s = 0; s < n; ++s)
      if (!pick[static_cast<std::size_t>(s)]) order.push_back(s);
    const int sgn = permutation_sign(order);
    shuffles.emplace_back(std::move(order), sgn);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  auto rc = r.components();
  for (std::size_t k = 0; k < rc.size(); ++k) {
    MultiIndex idx = r.unflatten(k);
    double s = 0.0;
    for (const auto& [order, sgn] : shuffles) {
      MultiIndex ia{}, ib{};
      for (int u = 0; u < p; ++u) ia[u] = idx[order[static_cast<std::size_t>(u)]];
      for (int u = 0; u < q; ++u) ib[u] = idx[order[static_cast<std::size_t>(p + u)]];
      s += sgn * a.at(ia) * b.at(ib);
    }
    rc[k] = s;
  }
  return r;
}

Tensor interior(const Vector& v, const Tensor& t) {
  if (t.valence() < 1) throw ContractError("interior product of a scalar");
  Tensor r(t.dim(), t.valence() - 1, t.is_form());
  auto rc = r.components();
  auto tc = t.components();
  const std::size_t stride = rc.size();
  for (int a = 0; a < t.dim(); ++a)
    for (std::size_t k = 0; k < stride; ++k) rc[k] += v(a) * tc[static_cast<std::size_t>(a) * stride + k];
  return r;
}

Tensor trace_pair(const Tensor& t, int i, int j, const Matrix& inv) {
  if (i >= j || j >= t.valence()) throw ContractError("bad trace slots");
  Tensor r(t.dim(), t.valence() - 2);
  auto rc = r.components();
  for (std::size_t k = 0; k < rc.size(); ++k) {
    MultiIndex out = r.unflatten(k);
    MultiIndex src{};
    for (int s = 0, u = 0; s < t.valence(); ++s) {
      if (s == i || s == j) continue;
      src[s] = out[u++];
    }
    double sum = 0.0;
    for (int a = 0; a < t.dim(); ++a)
      for (int b = 0; b < t.dim(); ++b) {
        const double w = inv(a, b);
        if (w == 0.0) continue;
        src[i] = a;
        src[j] = b;
        sum += w * t.at(src);
      }
    rc[k] = sum;
  }
  return r;
}

Vector sharp(const Tensor& one_form, const Matrix& inverse_metric) {
  Vector w(one_form.dim());
  for (int a = 0; a < one_form.dim(); ++a) w(a) = one_form(a);
  return inverse_metric * w;
}

}  // namespace ktgeom
