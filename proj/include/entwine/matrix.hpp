#pragma once
// Dense matrices over an exact field, with the reduction routines the rest of
// the library is built on: reduced row echelon form, kernel and image bases,
// exact solving and inversion, equalizers, and idempotent-image splittings.
// Everything is deterministic (first-nonzero pivoting), so computed bases are
// canonical and safe to freeze into tests and serialized files.

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entwine/rational.hpp"

namespace entwine {

class ShapeError : public std::runtime_error {
 public:
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

template <typename T>
class MatrixT {
 public:
  MatrixT() : rows_(0), cols_(0) {}
  MatrixT(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixT(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw ShapeError("MatrixT: data size does not match shape");
  }

  // Row-major nested-list constructor, mostly for tests and small literals.
  MatrixT(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("MatrixT: ragged initializer");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static MatrixT identity(std::size_t n) {
    MatrixT m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!(v == T(0))) return false;
    return true;
  }

  friend bool operator==(const MatrixT& a, const MatrixT& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  MatrixT& operator+=(const MatrixT& o) {
    check_same_shape(o, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  MatrixT& operator-=(const MatrixT& o) {
    check_same_shape(o, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  MatrixT& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend MatrixT operator+(MatrixT a, const MatrixT& b) { return a += b; }
  friend MatrixT operator-(MatrixT a, const MatrixT& b) { return a -= b; }
  friend MatrixT operator*(MatrixT a, const T& s) { return a *= s; }
  friend MatrixT operator*(const T& s, MatrixT a) { return a *= s; }

  friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
    if (a.cols_ != b.rows_)
      throw ShapeError("matrix product: " + shape_str(a) + " times " + shape_str(b));
    MatrixT c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;  // species matrices are mostly sparse
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (!(bkj == T(0))) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  MatrixT transpose() const {
    MatrixT t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  MatrixT column(std::size_t j) const {
    MatrixT c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  MatrixT select_columns(const std::vector<std::size_t>& idx) const {
    MatrixT c(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) c(i, j) = (*this)(i, idx[j]);
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const MatrixT& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i == 0 ? "[" : " [");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j == 0 ? "" : ", ") << m(i, j);
      os << "]" << (i + 1 == m.rows_ ? "" : "\n");
    }
    return os << "]";
  }

 private:
  static std::string shape_str(const MatrixT& m) {
    return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
  }
  void check_same_shape(const MatrixT& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string(op) + ": " + shape_str(*this) + " vs " + shape_str(o));
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using Matrix = MatrixT<Rational>;

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack: row counts differ");
  Matrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("vstack: column counts differ");
  Matrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

// Kronecker product in row-major block order: (a ⊗ b)((i1,i2),(j1,j2)) = a(i1,j1) b(i2,j2).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Rational& v = a(i1, j1);
      if (v == Rational(0)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          c(i1 * b.rows() + i2, j1 * b.cols() + j2) = v * b(i2, j2);
    }
  return c;
}

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, in order
};

// Gauss–Jordan with first-nonzero pivoting.  RREF is unique, so the result is
// canonical independent of this choice; the fixed strategy just makes the
// computation reproducible step for step.
inline RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot_row = row;
    while (pivot_row < m.rows() && m(pivot_row, col) == Rational(0)) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    if (pivot_row != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot_row, j));
    const Rational inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      const Rational factor = m(i, col);
      if (factor == Rational(0)) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

// Canonical kernel basis from the RREF: one column per free variable, with a 1
// in the free position.  Returned as a (cols x nullity) matrix of columns.
inline Matrix kernel_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix k(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = Rational(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      k(r.pivots[i], f) = -r.reduced(i, free_cols[f]);
  }
  return k;
}

// Independent columns of m selected by RREF pivots; spans the image.
inline Matrix image_basis(const Matrix& m) { return m.select_columns(rref(m).pivots); }

// Exact solve of a x = b for all columns of b at once; nullopt if any column
// is inconsistent.  When the system is underdetermined the particular solution
// with all free variables zero is returned (canonical by RREF).
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("solve: row counts differ");
  const RrefResult r = rref(hstack(a, b));
  Matrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] >= a.cols()) return std::nullopt;  // pivot in the rhs block
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
  }
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const RrefResult r = rref(hstack(m, Matrix::identity(m.rows())));
  if (r.pivots.size() != m.rows()) return std::nullopt;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (r.pivots[i] != i) return std::nullopt;
  Matrix inv(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) inv(i, j) = r.reduced(i, m.cols() + j);
  return inv;
}

inline bool is_isomorphism(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

// Equalizer of two parallel maps f, g: the canonical inclusion of
// ker(f - g), i.e. the largest subspace on which f and g agree.
inline Matrix equalizer(const Matrix& f, const Matrix& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw ShapeError("equalizer: maps are not parallel");
  return kernel_basis(f - g);
}

struct ImageSplitting {
  Matrix inclusion;   // dim x r, independent columns spanning im(p)
  Matrix projection;  // r x dim, with inclusion * projection == p
};

// Splits an exact idempotent p = p^2 through its image:
//   inclusion . projection == p   and   projection . inclusion == id.
inline ImageSplitting idempotent_image(const Matrix& p) {
  if (p.rows() != p.cols()) throw ShapeError("idempotent_image: matrix is not square");
  if (!(p * p == p)) throw ArithmeticError("idempotent_image: matrix is not idempotent");
  Matrix inc = image_basis(p);
  // im(p) == im(inc), so every column of p is expressible in the basis; the
  // expression is unique because inc has full column rank.
  auto proj = solve(inc, p);
  if (!proj) throw ArithmeticError("idempotent_image: factorization failed");
  return {std::move(inc), std::move(*proj)};
}

}  // namespace entwine
