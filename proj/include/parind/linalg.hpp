#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "parind/scalar.hpp"

namespace parind {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(std::size_t n, FieldTag f) { return Vec(n, Scalar::zero(f)); }

/// Dense matrix over one coefficient field.  Sizes in this library are small
/// (a few hundred at most), so no sparsity tricks beyond what callers do.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, FieldTag f)
      : rows_(rows), cols_(cols), tag_(f), a_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(std::size_t n, FieldTag f) {
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldTag field() const { return tag_; }

  Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw error("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_, a.tag_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& bkj = b.at(k, j);
          if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
        }
      }
    return c;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.a_) x *= s;
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, tag_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw error("matrix apply: shape mismatch");
    Vec out = zero_vec(rows_, tag_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_, cols_;
  FieldTag tag_;
  std::vector<Scalar> a_;
};

/**
 * Incremental reduced row echelon basis of a subspace, with optional tracking
 * of each stored row as a combination of the vectors passed to add().  This is
 * the workhorse behind span dimensions, ideal membership witnesses and linear
 * solves; all arithmetic is exact (rational or modular).
 */
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, FieldTag f, bool track = false)
      : dim_(dim), tag_(f), track_(track) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t n_added() const { return n_added_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Returns true when v enlarged the span.  Every call counts one slot in
  /// the combination indexing, whether or not the rank grew.
  bool add(const Vec& v) {
    if (v.size() != dim_) throw error("EchelonBasis: dimension mismatch");
    Vec r = v;
    std::vector<Scalar> combo;
    if (track_) combo.assign(n_added_ + 1, Scalar::zero(tag_));
    reduce_in_place(r, track_ ? &combo : nullptr);
    std::size_t self = n_added_++;
    std::size_t p = first_nonzero(r);
    if (p == dim_) return false;
    Scalar inv = r[p].inv();
    for (auto& x : r) x *= inv;
    if (track_) {
      // reduce_in_place returned the projection coefficients; the stored row
      // is inv * (v - projection)
      for (auto& c : combo) c = -c;
      combo[self] = Scalar::one(tag_);
      for (auto& c : combo) c *= inv;
    }
    // keep reduced form: clear this pivot from existing rows
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Scalar c = rows_[i][p];
      if (c.is_zero()) continue;
      sub_scaled(rows_[i], r, c);
      if (track_) {
        combos_[i].resize(n_added_, Scalar::zero(tag_));
        for (std::size_t j = 0; j < combo.size(); ++j) combos_[i][j] -= c * combo[j];
      }
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(r));
    pivots_.insert(pivots_.begin() + pos, p);
    if (track_) combos_.insert(combos_.begin() + pos, std::move(combo));
    return true;
  }

  /// Residual of v modulo the span.  With tracking, out_combo receives c with
  /// v = sum_i c[i] * added_i + residual (indexed by add() call order).
  Vec reduce(const Vec& v, std::vector<Scalar>* out_combo = nullptr) const {
    if (v.size() != dim_) throw error("EchelonBasis: dimension mismatch");
    if (out_combo && !track_) throw error("EchelonBasis: combination tracking is off");
    Vec r = v;
    if (out_combo) out_combo->assign(n_added_, Scalar::zero(tag_));
    reduce_in_place(r, out_combo);
    return r;
  }

  bool contains(const Vec& v) const {
    Vec r = reduce(v);
    return first_nonzero(r) == dim_;
  }

 private:
  static void sub_scaled(Vec& a, const Vec& b, const Scalar& c) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!b[j].is_zero()) a[j] -= c * b[j];
  }
  static std::size_t first_nonzero(const Vec& v) {
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) return j;
    return v.size();
  }
  void reduce_in_place(Vec& r, std::vector<Scalar>* combo) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar& c = r[pivots_[i]];
      if (c.is_zero()) continue;
      Scalar cc = c;  // r[pivot] mutates below
      sub_scaled(r, rows_[i], cc);
      if (combo)
        for (std::size_t j = 0; j < combos_[i].size(); ++j)
          if (!combos_[i][j].is_zero()) (*combo)[j] += cc * combos_[i][j];
    }
  }

  std::size_t dim_;
  FieldTag tag_;
  bool track_;
  std::size_t n_added_ = 0;
  std::vector<Vec> rows_;             // RREF rows, pivot columns increasing
  std::vector<std::size_t> pivots_;   // pivot column per row
  std::vector<std::vector<Scalar>> combos_;
};

inline std::size_t matrix_rank(const Matrix& a) {
  EchelonBasis e(a.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) e.add(a.row(i));
  return e.rank();
}

/// One solution of A x = b, if any (columns combination, free variables 0).
inline std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  EchelonBasis e(a.rows(), a.field(), /*track=*/true);
  for (std::size_t j = 0; j < a.cols(); ++j) e.add(a.col(j));
  std::vector<Scalar> combo;
  Vec res = e.reduce(b, &combo);
  for (const auto& x : res)
    if (!x.is_zero()) return std::nullopt;
  return combo;
}

/// Basis of the right kernel {x : A x = 0}.
inline std::vector<Vec> kernel_basis(const Matrix& a) {
  EchelonBasis e(a.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) e.add(a.row(i));
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots()) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec x = zero_vec(a.cols(), a.field());
    x[f] = Scalar::one(a.field());
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots()[i]] = -e.rows()[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw error("inverse: matrix not square");
  std::size_t n = a.rows();
  EchelonBasis e(n, a.field(), /*track=*/true);
  for (std::size_t j = 0; j < n; ++j) e.add(a.col(j));
  if (e.rank() != n) return std::nullopt;
  Matrix inv(n, n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    Vec b = zero_vec(n, a.field());
    b[i] = Scalar::one(a.field());
    std::vector<Scalar> combo;
    e.reduce(b, &combo);
    for (std::size_t j = 0; j < n; ++j) inv.at(j, i) = combo[j];
  }
  return inv;
}

/**
 * Exact determinant.  Over Q this clears denominators rowwise and runs
 * fraction-free Bareiss elimination on integers, which keeps intermediate
 * entries small; over F_ell it is plain Gaussian elimination.
 */
inline Scalar determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw error("determinant: matrix not square");
  std::size_t n = a.rows();
  if (n == 0) return Scalar::one(a.field());
  if (a.field().is_rational()) {
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    mpq_class scale(1);
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class l(1);
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class d = a.at(i, j).rat().get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      }
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class v = a.at(i, j).rat() * mpq_class(l);
        m[i][j] = v.get_num();  // exact: l clears the denominator
      }
      scale /= mpq_class(l);
    }
    mpz_class prev(1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k][k] == 0) {
        std::size_t s = k + 1;
        while (s < n && m[s][k] == 0) ++s;
        if (s == n) return Scalar::rational(0);
        std::swap(m[k], m[s]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
          mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
        }
      prev = m[k][k];
    }
    mpq_class det = mpq_class(m[n - 1][n - 1]) * scale;
    if (sign < 0) det = -det;
    return Scalar::rational(det);
  }
  Matrix m = a;
  Scalar det = Scalar::one(a.field());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t s = k;
    while (s < n && m.at(s, k).is_zero()) ++s;
    if (s == n) return Scalar::zero(a.field());
    if (s != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(s, j));
      det = -det;
    }
    det *= m.at(k, k);
    Scalar inv = m.at(k, k).inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      Scalar c = m.at(i, k) * inv;
      if (c.is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) m.at(i, j) -= c * m.at(k, j);
    }
  }
  return det;
}

}  // namespace parind
