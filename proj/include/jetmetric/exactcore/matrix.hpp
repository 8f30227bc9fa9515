#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "jetmetric/exactcore/field.hpp"

namespace jetmetric::exact {

template <class F>
using Vector = std::vector<typename F::Element>;

// Dense row-major matrix over a runtime field.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  static Matrix from_rows(F field, const std::vector<std::vector<Element>>& rows, std::size_t cols) {
    Matrix m(std::move(field), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<F> apply(std::span<const Element> v) const {
    Vector<F> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!F::is_zero((*this)(i, j)) && !F::is_zero(v[j])) field_.axpy(out[i], (*this)(i, j), v[j]);
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (F::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!F::is_zero(o(k, j))) field_.axpy(out(i, j), a, o(k, j));
      }
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!F::equal(data_[i], o.data_[i])) return false;
    return true;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

template <class F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

namespace detail {

// Forward elimination over Z on a copy of an integer-scaled rational matrix.
// Rows are divided by their content after each update so entries stay small.
inline void primitive_part(std::vector<mpz_class>& row) {
  mpz_class g = 0;
  for (const auto& v : row)
    if (v != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& v : row)
      if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

inline RrefResult<Rationals> rref_rationals(const Matrix<Rationals>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m(i, j)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(m(i, j)) != 0) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    primitive_part(a[i]);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    const mpz_class piv = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const mpz_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] * piv - f * a[r][j];
      primitive_part(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  // Back substitution in rationals on the echelon form.
  Matrix<Rationals> out(Rationals{}, rows, cols);
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& piv = a[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) {
        out(i, j) = mpq_class(a[i][j], piv);
        out(i, j).canonicalize();
      }
  }
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(out(i, c)) == 0) continue;
      const mpq_class f = out(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(out(k, j)) != 0) out(i, j) -= f * out(k, j);
    }
  }
  return {std::move(out), r, std::move(pivots)};
}

}  // namespace detail

// Reduced row echelon form; the pivot in each column is the first nonzero
// entry at or below the current row.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
  if constexpr (std::is_same_v<F, Rationals>) {
    return detail::rref_rationals(m);
  } else {
    const F& f = m.field();
    Matrix<F> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t sel = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (!F::is_zero(a(i, c))) {
          sel = i;
          break;
        }
      if (sel == rows) continue;
      if (sel != r)
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(sel, j));
      const auto inv = f.inv(a(r, c));
      for (std::size_t j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), inv);
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || F::is_zero(a(i, c))) continue;
        const auto factor = f.neg(a(i, c));
        for (std::size_t j = c; j < cols; ++j)
          if (!F::is_zero(a(r, j))) f.axpy(a(i, j), factor, a(r, j));
      }
      pivots.push_back(c);
      ++r;
    }
    return {std::move(a), r, std::move(pivots)};
  }
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

// Basis of {v : M v = 0}: one vector per free column, with that free
// variable set to 1 and the other free variables 0.
template <class F>
std::vector<Vector<F>> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t k = 0; k < red.rank; ++k) {
      const auto& e = red.reduced(k, free);
      if (!F::is_zero(e)) v[red.pivots[k]] = f.neg(e);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve M x = b; returns false when inconsistent. Free variables are zero.
template <class F>
bool solve(const Matrix<F>& m, std::span<const typename F::Element> b, Vector<F>& x) {
  const F& f = m.field();
  Matrix<F> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto red = rref(aug);
  x.assign(m.cols(), f.zero());
  for (std::size_t k = 0; k < red.rank; ++k) {
    const auto c = red.pivots[k];
    if (c == m.cols()) return false;
    x[c] = red.reduced(k, m.cols());
  }
  return true;
}

}  // namespace jetmetric::exact
