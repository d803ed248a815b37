// exactlin.hpp
// Exact integer linear algebra: dense integer matrices, Smith normal form,
// determinants and invariants of symmetric bilinear forms.
//
// Everything here works over arbitrary-precision integers (GMP). There is no
// floating point anywhere in this module.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace cork {

using Integer = mpz_class;
using Rational = mpq_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const;
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

  // Row/column operations used by the reductions; exposed for property tests.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  // Block sum diag(this, other).
  IntMatrix direct_sum(const IntMatrix& other) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Smith normal form with unimodular transforms: left * M * right is the
/// rectangular diagonal matrix whose leading entries are `diagonal`.
/// `diagonal` has min(rows, cols) entries, nonnegative, each dividing the
/// next; zeros (if any) come last. `rank` counts the nonzero entries.
struct SNFResult {
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
  IntMatrix left;
  IntMatrix right;

  IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const;
};

// Pivot is the entry of smallest nonzero absolute value in the active block,
// ties broken by lowest (row, col) index.
SNFResult smith_normal_form(const IntMatrix& m);

// Fraction-free (Bareiss) elimination. Throws std::invalid_argument on
// non-square input. The determinant of the 0x0 matrix is 1.
Integer determinant(const IntMatrix& m);

enum class Parity { even, odd };
enum class Definiteness { empty, positive, negative, indefinite, degenerate };

struct FormInvariants {
  std::size_t rank = 0;     // lattice dimension
  std::size_t nullity = 0;  // dimension of the radical
  long signature = 0;       // of the nondegenerate part
  Parity parity = Parity::even;
  Definiteness definiteness = Definiteness::empty;

  bool operator==(const FormInvariants&) const = default;
};

// Symmetric congruence diagonalization over Q. Throws std::invalid_argument
// if `m` is not symmetric.
FormInvariants form_invariants(const IntMatrix& m);

const char* to_string(Parity p);
const char* to_string(Definiteness d);

/// Basis of the integer kernel {x : m x = 0}, one column per basis vector.
IntMatrix kernel_basis(const IntMatrix& m);

}  // namespace cork
