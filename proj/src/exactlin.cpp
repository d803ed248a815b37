// exactlin.cpp

#include "cork/exactlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cork {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
  IntMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

bool IntMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntMatrix IntMatrix::direct_sum(const IntMatrix& other) const {
  IntMatrix out(rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < other.cols_; ++j) out(rows_ + i, cols_ + j) = other(i, j);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix SNFResult::diagonal_matrix(std::size_t rows, std::size_t cols) const {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < diagonal.size(); ++i) d(i, i) = diagonal[i];
  return d;
}

namespace {

// Smallest nonzero |entry| in the block [t, rows) x [t, cols), row-major ties.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Integer& v = a(i, j);
      if (v == 0) continue;
      Integer mag = abs(v);
      if (!found || mag < best) {
        found = true;
        best = mag;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());

  std::size_t t = 0;
  for (; t < limit; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(a, t, pi, pj)) break;
    for (;;) {
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }

      if (clean) {
        // Divisibility: fold any offending row into row t and go again.
        bool offending = false;
        for (std::size_t i = t + 1; i < a.rows() && !offending; ++i)
          for (std::size_t j = t + 1; j < a.cols(); ++j)
            if (a(i, j) % a(t, t) != 0) {
              a.add_row_multiple(t, i, 1);
              u.add_row_multiple(t, i, 1);
              offending = true;
              break;
            }
        if (!offending) break;
      }
      find_pivot(a, t, pi, pj);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SNFResult out;
  out.diagonal.assign(limit, Integer(0));
  for (std::size_t i = 0; i < limit; ++i) out.diagonal[i] = a(i, i);
  out.rank = t;
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap_with = i;
          break;
        }
      if (swap_with == k) return Integer(0);
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

FormInvariants form_invariants(const IntMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("form_invariants: matrix is not symmetric");
  const std::size_t n = m.rows();

  FormInvariants inv;
  inv.rank = n;
  inv.parity = Parity::even;
  for (std::size_t i = 0; i < n; ++i)
    if (mpz_odd_p(m(i, i).get_mpz_t())) inv.parity = Parity::odd;

  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));

  auto swap_index = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(a[x], a[y]);
    for (auto& row : a) std::swap(row[x], row[y]);
  };

  std::size_t positive = 0, negative = 0;
  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // All remaining diagonal entries vanish: replace e_i by e_i + e_j for a
      // nonzero off-diagonal entry, which puts 2*a_ij on the diagonal.
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a[i][j] != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == n) break;  // remaining block is zero
      for (std::size_t c = 0; c < n; ++c) a[bi][c] += a[bj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][bi] += a[r][bj];
      piv = bi;
    }
    swap_index(k, piv);
    const Rational pivot = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / pivot;
      for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
      for (std::size_t r = k; r < n; ++r) a[r][i] -= f * a[r][k];
    }
    if (pivot > 0)
      ++positive;
    else
      ++negative;
  }
  inv.nullity = n - k;
  inv.signature = static_cast<long>(positive) - static_cast<long>(negative);
  if (n == 0)
    inv.definiteness = Definiteness::empty;
  else if (inv.nullity > 0)
    inv.definiteness = Definiteness::degenerate;
  else if (negative == 0)
    inv.definiteness = Definiteness::positive;
  else if (positive == 0)
    inv.definiteness = Definiteness::negative;
  else
    inv.definiteness = Definiteness::indefinite;
  return inv;
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::empty: return "empty";
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::degenerate: return "degenerate";
  }
  return "?";
}

IntMatrix kernel_basis(const IntMatrix& m) {
  SNFResult snf = smith_normal_form(m);
  const std::size_t dim = m.cols() - snf.rank;
  IntMatrix basis(m.cols(), dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < m.cols(); ++r) basis(r, c) = snf.right(r, snf.rank + c);
  return basis;
}

}  // namespace cork
