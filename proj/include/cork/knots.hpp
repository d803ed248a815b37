// knots.hpp
// One-variable integer Laurent polynomials and Alexander polynomials of knots
// given either by a Seifert matrix or by a parametric family.

#pragma once

#include <map>
#include <string>

#include "cork/exactlin.hpp"

namespace cork {

class LaurentPoly {
 public:
  using Terms = std::map<long, Integer>;  // exponent -> nonzero coefficient

  LaurentPoly() = default;
  LaurentPoly(long constant);  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const Terms& terms);

  static LaurentPoly monomial(long exponent, const Integer& coeff = 1);

  const Terms& terms() const { return terms_; }
  Integer coeff(long exponent) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  long min_exponent() const;  // requires nonzero
  long max_exponent() const;

  LaurentPoly operator+(const LaurentPoly& rhs) const;
  LaurentPoly operator-(const LaurentPoly& rhs) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& rhs) const;
  bool operator==(const LaurentPoly& rhs) const = default;

  // t -> t^k (k != 0); k = 2 is the knot-surgery substitution.
  LaurentPoly substitute_power(long k) const;
  LaurentPoly pow(unsigned k) const;
  Integer evaluate(const Integer& t) const;  // t = +-1 only for negative exponents

  bool is_symmetric() const;  // P(t) = P(1/t)

  // Multiply by +-t^m so that the result is symmetric with P(1) = 1.
  // Throws std::domain_error when no such normalization exists.
  LaurentPoly alexander_normalized() const;

  // Sparse text form: "[(-1,1),(0,-1),(1,1)]"; "[]" is zero.
  std::string to_text() const;
  static LaurentPoly parse_text(const std::string& text);

  // Human-facing form, e.g. "t - 1 + t^-1".
  std::string pretty() const;

 private:
  void add_term(long exponent, const Integer& c);
  Terms terms_;
};

/// Seifert matrix V of a knot; V - V^T must be unimodular.
struct SeifertMatrix {
  IntMatrix v;
};

// Delta(t) = det(V - t V^T), symmetrized and normalized to Delta(1) = 1.
LaurentPoly alexander_from_seifert(const SeifertMatrix& s);

enum class KnotFamily { torus_2q, twist };

// torus_2q(k): T(2, 2k+1).  twist(k): k-twisted double of the unknot
// (twist(1) is the figure-eight knot).  Both normalized; k >= 1.
LaurentPoly alexander_family(KnotFamily kind, long k);

const char* to_string(KnotFamily k);

}  // namespace cork
