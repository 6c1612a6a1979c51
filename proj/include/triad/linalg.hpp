#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "triad/dual.hpp"

namespace triad {

/// Largest chart dimension supported (2n+1 with n <= 4).
inline constexpr int kMaxDim = 9;

/// Fixed-capacity dense vector over a (possibly dual) scalar.
template <class S>
class Vec {
 public:
  Vec() = default;
  explicit Vec(int n, S fill = S(0.0)) : n_(n) {
    assert(n >= 0 && n <= kMaxDim);
    std::fill(data_.begin(), data_.begin() + n, fill);
  }
  Vec(std::initializer_list<S> xs) : n_(static_cast<int>(xs.size())) {
    assert(n_ <= kMaxDim);
    std::copy(xs.begin(), xs.end(), data_.begin());
  }
  template <class U>
    requires(!std::is_same_v<U, S>)
  explicit Vec(const Vec<U>& other) : n_(other.size()) {
    for (int i = 0; i < n_; ++i) data_[i] = S(other[i]);
  }

  static Vec unit(int n, int i) {
    Vec e(n);
    e[i] = S(1.0);
    return e;
  }

  int size() const { return n_; }
  S& operator[](int i) { return data_[i]; }
  const S& operator[](int i) const { return data_[i]; }
  auto begin() { return data_.begin(); }
  auto end() { return data_.begin() + n_; }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.begin() + n_; }

  Vec& operator+=(const Vec& b) {
    for (int i = 0; i < n_; ++i) data_[i] += b[i];
    return *this;
  }
  Vec& operator-=(const Vec& b) {
    for (int i = 0; i < n_; ++i) data_[i] -= b[i];
    return *this;
  }
  Vec& operator*=(const S& s) {
    for (int i = 0; i < n_; ++i) data_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator-(Vec a) {
    for (int i = 0; i < a.n_; ++i) a[i] = -a[i];
    return a;
  }
  friend Vec operator*(const S& s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, const S& s) { return a *= s; }
  friend Vec operator/(Vec a, const S& s) {
    const S inv = S(1.0) / s;
    return a *= inv;
  }

 private:
  std::array<S, kMaxDim> data_{};
  int n_ = 0;
};

/// Fixed-capacity dense row-major matrix.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, S fill = S(0.0)) : rows_(rows), cols_(cols) {
    assert(rows >= 0 && rows <= kMaxDim && cols >= 0 && cols <= kMaxDim);
    std::fill(data_.begin(), data_.begin() + rows * cols, fill);
  }
  template <class U>
    requires(!std::is_same_v<U, S>)
  explicit Mat(const Mat<U>& other) : rows_(other.rows()), cols_(other.cols()) {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) (*this)(i, j) = S(other(i, j));
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }
  static Mat from_columns(std::initializer_list<Vec<S>> cols) {
    const int c = static_cast<int>(cols.size());
    const int r = c == 0 ? 0 : cols.begin()->size();
    Mat m(r, c);
    int j = 0;
    for (const auto& col : cols) m.set_col(j++, col);
    return m;
  }
  static Mat outer(const Vec<S>& a, const Vec<S>& b) {
    Mat m(a.size(), b.size());
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return data_[i * kMaxDim + j]; }
  const S& operator()(int i, int j) const { return data_[i * kMaxDim + j]; }

  Vec<S> col(int j) const {
    Vec<S> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<S> row(int i) const {
    Vec<S> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_col(int j, const Vec<S>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  void set_row(int i, const Vec<S>& v) {
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat& operator+=(const Mat& b) {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) (*this)(i, j) += b(i, j);
    return *this;
  }
  Mat& operator-=(const Mat& b) {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) (*this)(i, j) -= b(i, j);
    return *this;
  }
  Mat& operator*=(const S& s) {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) (*this)(i, j) *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) { return a *= S(-1.0); }
  friend Mat operator*(const S& s, Mat a) { return a *= s; }
  friend Mat operator*(Mat a, const S& s) { return a *= s; }

  friend Vec<S> operator*(const Mat& m, const Vec<S>& x) {
    assert(m.cols_ == x.size());
    Vec<S> y(m.rows_);
    for (int i = 0; i < m.rows_; ++i) {
      S acc(0.0);
      for (int j = 0; j < m.cols_; ++j) acc += m(i, j) * x[j];
      y[i] = acc;
    }
    return y;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    assert(a.cols_ == b.rows_);
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S aik = a(i, k);
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::array<S, kMaxDim * kMaxDim> data_{};
  int rows_ = 0;
  int cols_ = 0;
};

using Point = Vec<double>;

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  assert(a.size() == b.size());
  S acc(0.0);
  for (int i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Bilinear form u^T M v.
template <class S>
S bilinear(const Mat<S>& m, const Vec<S>& u, const Vec<S>& v) {
  return dot(u, m * v);
}

/// Covector applied on the right: (a^T M)_j.
template <class S>
Vec<S> row_times(const Vec<S>& a, const Mat<S>& m) {
  Vec<S> r(m.cols());
  for (int j = 0; j < m.cols(); ++j) {
    S acc(0.0);
    for (int i = 0; i < m.rows(); ++i) acc += a[i] * m(i, j);
    r[j] = acc;
  }
  return r;
}

inline double norm_inf(const Vec<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}
inline double norm2(const Vec<double>& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const Mat<double>& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}
inline double frobenius(const Mat<double>& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LU factorization with partial pivoting; pivots are chosen on the primal
/// value so the factorization path is identical at every dual nesting level.
template <class S>
class LU {
 public:
  explicit LU(Mat<S> a, double singular_tol = 1e-13) : lu_(std::move(a)), n_(lu_.rows()) {
    assert(lu_.rows() == lu_.cols());
    double scale = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) scale = std::max(scale, std::abs(primal(lu_(i, j))));
    for (int i = 0; i < n_; ++i) perm_[i] = i;
    for (int k = 0; k < n_; ++k) {
      int piv = k;
      double best = std::abs(primal(lu_(k, k)));
      for (int i = k + 1; i < n_; ++i) {
        const double cand = std::abs(primal(lu_(i, k)));
        if (cand > best) {
          best = cand;
          piv = i;
        }
      }
      if (best <= singular_tol * std::max(scale, 1e-300)) {
        throw SingularMatrixError("LU: matrix is singular to working precision (pivot " +
                                  std::to_string(best) + ")");
      }
      if (piv != k) {
        std::swap(perm_[k], perm_[piv]);
        for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(piv, j));
      }
      const S inv = S(1.0) / lu_(k, k);
      for (int i = k + 1; i < n_; ++i) {
        lu_(i, k) *= inv;
        const S f = lu_(i, k);
        for (int j = k + 1; j < n_; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  Vec<S> solve(const Vec<S>& b) const {
    Vec<S> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (int i = n_ - 1; i >= 0; --i) {
      for (int j = i + 1; j < n_; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  Mat<S> inverse() const {
    Mat<S> inv(n_, n_);
    for (int j = 0; j < n_; ++j) inv.set_col(j, solve(Vec<S>::unit(n_, j)));
    return inv;
  }

 private:
  Mat<S> lu_;
  int n_;
  std::array<int, kMaxDim> perm_{};
};

template <class S>
Mat<S> inverse(const Mat<S>& a) {
  return LU<S>(a).inverse();
}

template <class S>
Vec<S> solve(const Mat<S>& a, const Vec<S>& b) {
  return LU<S>(a).solve(b);
}

/// Pfaffian of an antisymmetric matrix by expansion along the first row.
template <class S>
S pfaffian(const Mat<S>& a) {
  const int n = a.rows();
  if (n == 0) return S(1.0);
  if (n % 2 == 1) return S(0.0);
  S acc(0.0);
  for (int j = 1; j < n; ++j) {
    Mat<S> minor(n - 2, n - 2);
    int r = 0;
    for (int i = 1; i < n; ++i) {
      if (i == j) continue;
      int c = 0;
      for (int k = 1; k < n; ++k) {
        if (k == j) continue;
        minor(r, c++) = a(i, k);
      }
      ++r;
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a(0, j) * pfaffian(minor);
  }
  return acc;
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
Vec<double> symmetric_eigenvalues(Mat<double> a);

}  // namespace triad
