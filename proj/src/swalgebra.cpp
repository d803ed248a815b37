// swalgebra.cpp

#include "cork/swalgebra.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cork {

const char* to_string(ParityConvention c) { return c == ParityConvention::paper ? "paper" : "standard"; }

ParityConvention parse_convention(const std::string& s) {
  if (s == "paper") return ParityConvention::paper;
  if (s == "standard") return ParityConvention::standard;
  throw std::invalid_argument("unknown parity convention '" + s + "' (expected paper|standard)");
}

long BasicClassVector::square() const {
  long sq = 0;
  for (long x : e) sq -= x * x;
  for (const auto& tag : tags) sq += tag.square;
  return sq;
}

bool BasicClassVector::has_characteristic_parity() const {
  // K.E_i = -eps_i must be odd; K.T = 0 is always even.
  for (long x : e)
    if (x % 2 == 0) return false;
  return true;
}

BasicClassSet::BasicClassSet(Ambient ambient, std::size_t e_dims, ParityConvention convention)
    : ambient_(ambient), e_dims_(e_dims), convention_(convention) {}

void BasicClassSet::insert(const BasicClassVector& k, const Integer& value) {
  if (k.e.size() != e_dims_) throw std::invalid_argument("BasicClassSet: class has wrong number of E coordinates");
  if (value == 0) throw std::invalid_argument("BasicClassSet: basic classes have nonzero value");
  if (!classes_.emplace(k, value).second) throw std::invalid_argument("BasicClassSet: duplicate class");
}

std::vector<std::pair<BasicClassVector, Integer>> BasicClassSet::sorted() const {
  return {classes_.begin(), classes_.end()};
}

EmbeddingProfile EmbeddingProfile::canonical(long p, std::size_t e_dims, std::size_t e_index) {
  if (p < 2) throw std::invalid_argument("EmbeddingProfile: p must be >= 2");
  if (e_index >= e_dims) throw std::invalid_argument("EmbeddingProfile: E index out of range");
  EmbeddingProfile prof;
  prof.p = p;
  prof.rows.assign(static_cast<std::size_t>(p - 1), Row{0, std::vector<long>(e_dims, 0)});
  prof.rows.back().eval_e[e_index] = p;
  return prof;
}

void EmbeddingProfile::validate(std::size_t e_dims) const {
  if (p < 2) throw std::invalid_argument("EmbeddingProfile: p must be >= 2");
  if (rows.size() != static_cast<std::size_t>(p - 1))
    throw std::invalid_argument("EmbeddingProfile: expected p-1 rows");
  for (const auto& row : rows)
    if (row.eval_e.size() != e_dims)
      throw std::invalid_argument("EmbeddingProfile: row width does not match the E coordinates of the class set");
}

EmbeddingProfile EmbeddingProfile::without_coordinate(std::size_t index) const {
  EmbeddingProfile out = *this;
  for (auto& row : out.rows) {
    if (index >= row.eval_e.size()) throw std::invalid_argument("EmbeddingProfile: coordinate out of range");
    row.eval_e.erase(row.eval_e.begin() + static_cast<std::ptrdiff_t>(index));
  }
  return out;
}

EmbeddingProfile EmbeddingProfile::with_extra_coordinates(std::size_t count) const {
  EmbeddingProfile out = *this;
  for (auto& row : out.rows) row.eval_e.resize(row.eval_e.size() + count, 0);
  return out;
}

LaurentPoly elliptic_sw_polynomial(long n) {
  if (n < 2) throw std::invalid_argument("elliptic_sw_polynomial: n must be >= 2");
  LaurentPoly factor = LaurentPoly::monomial(1) - LaurentPoly::monomial(-1);
  return factor.pow(static_cast<unsigned>(n - 2));
}

BasicClassSet beta_elliptic(long n, std::size_t m, ParityConvention convention) {
  if (n < 2) throw std::invalid_argument("beta_elliptic: n must be >= 2");
  BasicClassSet base(Ambient{12 * n, -8 * n}, 0, convention);
  if (convention == ParityConvention::standard) {
    const LaurentPoly poly = elliptic_sw_polynomial(n);
    for (const auto& [k, c] : poly.terms()) base.insert(BasicClassVector{k, {}, {}}, c);
  } else {
    // Only membership matters under this convention; values are placeholders.
    for (long k = -(n - 2); k <= n - 2; ++k)
      if (k % 2 == 0) base.insert(BasicClassVector{k, {}, {}}, 1);
  }
  for (std::size_t i = 0; i < m; ++i) base = blowup_formula(base);
  return base;
}

BasicClassSet blowup_formula(const BasicClassSet& beta) {
  BasicClassSet out(Ambient{beta.ambient().e + 1, beta.ambient().sigma - 1}, beta.e_dims() + 1, beta.convention());
  for (const auto& [k, value] : beta.classes()) {
    for (long sign : {1L, -1L}) {
      BasicClassVector next = k;
      next.e.push_back(sign);
      out.insert(next, value);
    }
  }
  return out;
}

BasicClassSet knot_surgery_beta(long n, const LaurentPoly& alexander, ParityConvention convention) {
  if (n < 2) throw std::invalid_argument("knot_surgery_beta: n must be >= 2");
  if (alexander.is_zero() || !alexander.is_symmetric() || alexander.evaluate(1) != 1)
    throw std::invalid_argument("knot_surgery_beta: Alexander polynomial must be symmetric with value 1 at t = 1");
  LaurentPoly product = alexander.substitute_power(2) * elliptic_sw_polynomial(n);
  BasicClassSet out(Ambient{12 * n, -8 * n}, 0, convention);
  for (const auto& [k, c] : product.terms()) out.insert(BasicClassVector{k, {}, {}}, c);
  return out;
}

long d_degree(const BasicClassVector& k, const Ambient& ambient) {
  long numer = k.square() - 2 * ambient.e - 3 * ambient.sigma;
  if (numer % 4 != 0) {
    std::ostringstream os;
    os << "d_degree: (K^2 - 2e - 3sigma) = " << numer << " is not divisible by 4 (class is not characteristic)";
    throw std::domain_error(os.str());
  }
  return numer / 4;
}

std::vector<long> profile_evaluations(const BasicClassVector& k, const EmbeddingProfile& profile) {
  std::vector<long> out;
  out.reserve(profile.rows.size());
  for (const auto& row : profile.rows) {
    if (row.eval_e.size() != k.e.size())
      throw std::invalid_argument("profile_evaluations: profile width does not match class");
    long v = k.t * row.eval_t;
    for (std::size_t i = 0; i < k.e.size(); ++i) v += k.e[i] * row.eval_e[i];
    out.push_back(v);
  }
  return out;
}

namespace {

bool is_lift(const std::vector<long>& evals, long p) {
  for (std::size_t j = 0; j + 1 < evals.size(); ++j)
    if (evals[j] != 0) return false;
  return std::labs(evals.back()) == p;
}

}  // namespace

LiftPartition rbd_lift_filter(const BasicClassSet& beta, const EmbeddingProfile& profile) {
  profile.validate(beta.e_dims());
  LiftPartition out;
  for (const auto& [k, value] : beta.classes()) {
    (void)value;
    if (is_lift(profile_evaluations(k, profile), profile.p))
      out.pass.push_back(k);
    else
      out.fail.push_back(k);
  }
  return out;
}

BasicClassSet rbd_transfer(const BasicClassSet& beta, const EmbeddingProfile& profile, const std::string& label) {
  profile.validate(beta.e_dims());
  const auto& last = profile.rows.back();
  std::size_t consumed = beta.e_dims();
  for (std::size_t i = 0; i < last.eval_e.size(); ++i) {
    if (last.eval_e[i] == 0) continue;
    if (consumed != beta.e_dims())
      throw std::invalid_argument("rbd_transfer: distinguished sphere pairs with more than one E coordinate");
    consumed = i;
  }
  if (consumed == beta.e_dims() || last.eval_t != 0)
    throw std::invalid_argument("rbd_transfer: distinguished sphere must pair with exactly one E coordinate");

  LiftPartition part = rbd_lift_filter(beta, profile);
  if (!part.fail.empty()) {
    std::ostringstream os;
    os << "rbd_transfer: " << part.fail.size() << " basic class(es) are not lifts, e.g. t=" << part.fail.front().t
       << " e=[";
    for (std::size_t i = 0; i < part.fail.front().e.size(); ++i) os << (i ? "," : "") << part.fail.front().e[i];
    os << "]";
    throw std::domain_error(os.str());
  }

  const long p = profile.p;
  BasicClassSet out(Ambient{beta.ambient().e - (p - 1), beta.ambient().sigma + (p - 1)}, beta.e_dims() - 1,
                    beta.convention());
  const std::string tag_label = label + "@E" + std::to_string(consumed + 1);
  for (const auto& [k, value] : beta.classes()) {
    BasicClassVector next = k;
    long eps = next.e[consumed];
    next.e.erase(next.e.begin() + static_cast<std::ptrdiff_t>(consumed));
    // K^2 over the rational ball side is 0, over C_p it was 1 - p.
    next.tags.push_back(ClassTag{tag_label, profile_evaluations(k, profile).back(), -eps * eps + (p - 1)});
    if (out.classes().count(next)) throw std::domain_error("rbd_transfer: two basic classes have the same restriction");
    out.insert(next, value);
  }
  return out;
}

const char* to_string(SwComparison c) {
  switch (c) {
    case SwComparison::equal: return "equal";
    case SwComparison::distinct_by_count: return "distinct_by_count";
    case SwComparison::distinct_by_values: return "distinct_by_values";
  }
  return "?";
}

SwComparison sw_compare(const BasicClassSet& a, const BasicClassSet& b) {
  if (a.size() != b.size()) return SwComparison::distinct_by_count;
  if (a.e_dims() == b.e_dims() && a.classes() == b.classes()) return SwComparison::equal;
  return SwComparison::distinct_by_values;
}

}  // namespace cork
