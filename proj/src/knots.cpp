// knots.cpp

#include "cork/knots.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cork {

LaurentPoly::LaurentPoly(long constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentPoly::LaurentPoly(const Terms& terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

LaurentPoly LaurentPoly::monomial(long exponent, const Integer& coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

void LaurentPoly::add_term(long exponent, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer LaurentPoly::coeff(long exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

long LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial has no exponents");
  return terms_.begin()->first;
}

long LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("LaurentPoly: zero polynomial has no exponents");
  return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const { return *this + (-rhs); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
  LaurentPoly out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : rhs.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

LaurentPoly LaurentPoly::substitute_power(long k) const {
  if (k == 0) throw std::invalid_argument("substitute_power: exponent multiplier must be nonzero");
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.add_term(e * k, c);
  return out;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly acc(1);
  for (unsigned i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

Integer LaurentPoly::evaluate(const Integer& t) const {
  if (t == 0 && !terms_.empty() && terms_.begin()->first < 0)
    throw std::domain_error("LaurentPoly: evaluation at 0 with negative exponents");
  Integer total = 0;
  for (const auto& [e, c] : terms_) {
    if (e >= 0) {
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(e));
      total += c * pw;
    } else {
      if (abs(t) != 1) throw std::domain_error("LaurentPoly: integer evaluation needs t = +-1");
      total += ((-e) % 2 && t < 0) ? Integer(-c) : c;
    }
  }
  return total;
}

bool LaurentPoly::is_symmetric() const {
  for (const auto& [e, c] : terms_)
    if (coeff(-e) != c) return false;
  return true;
}

LaurentPoly LaurentPoly::alexander_normalized() const {
  if (is_zero()) throw std::domain_error("alexander_normalized: zero polynomial");
  long span = min_exponent() + max_exponent();
  if (span % 2 != 0) throw std::domain_error("alexander_normalized: odd exponent span, not symmetrizable");
  LaurentPoly shifted = *this * monomial(-span / 2);
  Integer at_one = shifted.evaluate(1);
  if (at_one == -1)
    shifted = -shifted;
  else if (at_one != 1)
    throw std::domain_error("alexander_normalized: |P(1)| != 1");
  if (!shifted.is_symmetric()) throw std::domain_error("alexander_normalized: not symmetric after shift");
  return shifted;
}

std::string LaurentPoly::to_text() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ',';
    first = false;
    os << '(' << e << ',' << c.get_str() << ')';
  }
  os << ']';
  return os.str();
}

LaurentPoly LaurentPoly::parse_text(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("LaurentPoly::parse_text: expected [...]");
  LaurentPoly out;
  std::size_t pos = 1;
  const std::size_t end = s.size() - 1;
  while (pos < end) {
    if (s[pos] != '(') throw std::invalid_argument("LaurentPoly::parse_text: expected '('");
    std::size_t comma = s.find(',', pos);
    std::size_t close = s.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw std::invalid_argument("LaurentPoly::parse_text: malformed pair");
    long e = std::stol(s.substr(pos + 1, comma - pos - 1));
    Integer c(s.substr(comma + 1, close - comma - 1));
    if (out.terms_.count(e)) throw std::invalid_argument("LaurentPoly::parse_text: repeated exponent");
    if (c == 0) throw std::invalid_argument("LaurentPoly::parse_text: zero coefficient stored");
    out.terms_[e] = c;
    pos = close + 1;
    if (pos < end) {
      if (s[pos] != ',') throw std::invalid_argument("LaurentPoly::parse_text: expected ','");
      ++pos;
    }
  }
  return out;
}

std::string LaurentPoly::pretty() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool unit = mag == 1 && e != 0;
    if (!unit) os << mag.get_str();
    if (e != 0) {
      os << 't';
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

LaurentPoly alexander_from_seifert(const SeifertMatrix& s) {
  const IntMatrix& v = s.v;
  if (!v.is_square()) throw std::invalid_argument("alexander_from_seifert: Seifert matrix must be square");
  const std::size_t n = v.rows();
  const IntMatrix vt = v.transpose();
  IntMatrix skew(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) skew(i, j) = v(i, j) - vt(i, j);
  if (abs(determinant(skew)) != 1)
    throw std::invalid_argument("alexander_from_seifert: V - V^T is not unimodular");
  if (n == 0) return LaurentPoly(1);

  // det(V - t V^T) has degree <= n; recover it from n+1 integer samples by
  // exact Lagrange interpolation.
  std::vector<Integer> samples(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = v(i, j) - Integer(static_cast<long>(k)) * vt(i, j);
    samples[k] = determinant(m);
  }
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * static_cast<long>(j);
      }
      basis = std::move(next);
      denom *= static_cast<long>(i) - static_cast<long>(j);
    }
    for (std::size_t d = 0; d < basis.size(); ++d) coeffs[d] += basis[d] * samples[i] / denom;
  }
  LaurentPoly raw;
  for (std::size_t d = 0; d <= n; ++d) {
    coeffs[d].canonicalize();
    if (coeffs[d].get_den() != 1) throw std::logic_error("alexander_from_seifert: non-integral interpolation");
    raw = raw + LaurentPoly::monomial(static_cast<long>(d), coeffs[d].get_num());
  }
  return raw.alexander_normalized();
}

LaurentPoly alexander_family(KnotFamily kind, long k) {
  if (k < 1) throw std::invalid_argument("alexander_family: parameter must be >= 1");
  LaurentPoly out;
  switch (kind) {
    case KnotFamily::torus_2q:
      for (long j = -k; j <= k; ++j) out = out + LaurentPoly::monomial(j, (k - j) % 2 ? -1 : 1);
      break;
    case KnotFamily::twist:
      out = LaurentPoly::monomial(1, -k) + LaurentPoly(2 * k + 1) + LaurentPoly::monomial(-1, -k);
      break;
  }
  return out;
}

const char* to_string(KnotFamily k) { return k == KnotFamily::torus_2q ? "torus" : "twist"; }

}  // namespace cork
