#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cork/knots.hpp"
#include "cork/swalgebra.hpp"
#include "oracles.hpp"

using namespace cork;

namespace {

void check_simple_type(const BasicClassSet& set) {
  for (const auto& [k, v] : set.classes()) {
    CHECK(d_degree(k, set.ambient()) == 0);
    CHECK(k.has_characteristic_parity());
    CHECK(v != 0);
  }
}

std::map<long, long> t_values(const BasicClassSet& set) {
  std::map<long, long> out;
  for (const auto& [k, v] : set.classes()) out[k.t] = v.get_si();
  return out;
}

}  // namespace

TEST_CASE("conventions parse") {
  CHECK(parse_convention("paper") == ParityConvention::paper);
  CHECK(parse_convention("standard") == ParityConvention::standard);
  CHECK_THROWS_AS(parse_convention("other"), std::invalid_argument);
}

TEST_CASE("elliptic basic classes") {
  for (long n = 2; n <= 9; ++n)
    for (std::size_t m = 0; m <= 3; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      const std::size_t scale = std::size_t{1} << m;
      BasicClassSet paper = beta_elliptic(n, m, ParityConvention::paper);
      BasicClassSet standard = beta_elliptic(n, m, ParityConvention::standard);
      CHECK(paper.size() == static_cast<std::size_t>(n % 2 == 0 ? n - 1 : n - 2) * scale);
      CHECK(standard.size() == oracle::elliptic_factor(n - 2).size() * scale);
      CHECK(paper.ambient() == Ambient{12 * n + static_cast<long>(m), -8 * n - static_cast<long>(m)});
      CHECK(paper.e_dims() == m);
      check_simple_type(paper);
      check_simple_type(standard);
    }
  CHECK(t_values(beta_elliptic(4, 0, ParityConvention::standard)) == oracle::elliptic_factor(2));
  CHECK(t_values(beta_elliptic(4, 0, ParityConvention::paper)) == std::map<long, long>{{-2, 1}, {0, 1}, {2, 1}});
  CHECK(beta_elliptic(2, 0, ParityConvention::paper).size() == 1);
  CHECK_THROWS_AS(beta_elliptic(1, 0, ParityConvention::paper), std::invalid_argument);
}

TEST_CASE("blow-up formula") {
  BasicClassSet b = beta_elliptic(6, 0, ParityConvention::paper);
  BasicClassSet b1 = blowup_formula(b);
  CHECK(b1.size() == 2 * b.size());
  CHECK(b1.ambient() == Ambient{73, -49});
  for (const auto& [k, v] : b1.classes()) {
    REQUIRE(k.e.size() == 1);
    CHECK((k.e[0] == 1 || k.e[0] == -1));
  }
  check_simple_type(b1);
}

TEST_CASE("knot surgery product rule") {
  for (long n = 2; n <= 7; ++n)
    CHECK(knot_surgery_beta(n, LaurentPoly(1), ParityConvention::standard) ==
          beta_elliptic(n, 0, ParityConvention::standard));
  for (long k = 1; k <= 5; ++k)
    for (long n = 2; n <= 5; ++n) {
      LaurentPoly delta = alexander_family(KnotFamily::torus_2q, k);
      std::map<long, long> d2;
      for (const auto& [e, c] : delta.terms()) d2[2 * e] = c.get_si();
      BasicClassSet ks = knot_surgery_beta(n, delta, ParityConvention::standard);
      CHECK(t_values(ks) == oracle::laurent_multiply(d2, oracle::elliptic_factor(n - 2)));
      check_simple_type(ks);
    }
  CHECK(knot_surgery_beta(2, alexander_family(KnotFamily::torus_2q, 1), ParityConvention::standard).size() == 3);
  CHECK(knot_surgery_beta(2, alexander_family(KnotFamily::twist, 1), ParityConvention::standard).size() == 3);
  LaurentPoly t = LaurentPoly::monomial(1);
  CHECK_THROWS_AS(knot_surgery_beta(2, t, ParityConvention::standard), std::invalid_argument);
  CHECK_THROWS_AS(knot_surgery_beta(2, LaurentPoly(2), ParityConvention::standard), std::invalid_argument);
  CHECK_THROWS_AS(knot_surgery_beta(2, LaurentPoly(), ParityConvention::standard), std::invalid_argument);
}

TEST_CASE("d-degree") {
  CHECK(d_degree(BasicClassVector{0, {}, {}}, Ambient{24, -16}) == 0);
  CHECK(d_degree(BasicClassVector{0, {1}, {}}, Ambient{25, -17}) == 0);
  CHECK_THROWS_AS(d_degree(BasicClassVector{0, {2}, {}}, Ambient{25, -17}), std::domain_error);
}

TEST_CASE("embedding profiles") {
  EmbeddingProfile p = EmbeddingProfile::canonical(4, 2, 1);
  CHECK(p.rows.size() == 3);
  CHECK(p.rows[2].eval_e == std::vector<long>{0, 4});
  CHECK(p.rows[0].eval_e == std::vector<long>{0, 0});
  CHECK_NOTHROW(p.validate(2));
  CHECK_THROWS_AS(p.validate(3), std::invalid_argument);
  CHECK(p.without_coordinate(0).rows[2].eval_e == std::vector<long>{4});
  CHECK(p.with_extra_coordinates(2).rows[2].eval_e == std::vector<long>{0, 4, 0, 0});
  CHECK_THROWS_AS(EmbeddingProfile::canonical(1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(EmbeddingProfile::canonical(3, 1, 1), std::invalid_argument);
  CHECK(profile_evaluations(BasicClassVector{2, {1, -1}, {}}, p) == std::vector<long>{0, 0, -4});
}

TEST_CASE("rational blowdown transfer") {
  BasicClassSet y0 = beta_elliptic(6, 2, ParityConvention::paper);
  REQUIRE(y0.size() == 20);
  for (std::size_t i = 0; i < 2; ++i) {
    const long p = i == 0 ? 2 : 4;
    EmbeddingProfile prof = EmbeddingProfile::canonical(p, 2, i);
    LiftPartition part = rbd_lift_filter(y0, prof);
    CHECK(part.pass.size() == 20);
    CHECK(part.fail.empty());
    BasicClassSet blown = rbd_transfer(y0, prof, "D" + std::to_string(i + 1));
    CHECK(blown.size() == 20);
    CHECK(blown.ambient() == Ambient{74 - (p - 1), -50 + (p - 1)});
    CHECK(blown.e_dims() == 1);
    check_simple_type(blown);
    for (const auto& [k, v] : blown.classes()) {
      REQUIRE(k.tags.size() == 1);
      CHECK(k.tags[0].label == "D" + std::to_string(i + 1) + "@E" + std::to_string(i + 1));
      CHECK((k.tags[0].restriction == p || k.tags[0].restriction == -p));
    }
    BasicClassSet back = blown;
    for (long j = 0; j < p - 1; ++j) back = blowup_formula(back);
    CHECK(back.size() == (std::size_t{1} << (p - 1)) * 20);
    CHECK(back.ambient() == y0.ambient());
    check_simple_type(back);
  }

  // A class that pairs with an interior sphere is not a lift.
  EmbeddingProfile bad = EmbeddingProfile::canonical(3, 2, 0);
  bad.rows[0].eval_e = {0, 1};
  CHECK(rbd_lift_filter(y0, bad).fail.size() == 20);
  CHECK_THROWS_AS(rbd_transfer(y0, bad), std::domain_error);

  EmbeddingProfile two = EmbeddingProfile::canonical(2, 2, 0);
  two.rows[0].eval_e = {2, 2};
  CHECK_THROWS_AS(rbd_transfer(y0, two), std::invalid_argument);
  CHECK_THROWS_AS(rbd_transfer(y0, EmbeddingProfile::canonical(2, 3, 0)), std::invalid_argument);

  BasicClassSet empty(Ambient{74, -50}, 2, ParityConvention::paper);
  CHECK(rbd_transfer(empty, EmbeddingProfile::canonical(2, 2, 0)).empty());
}

TEST_CASE("comparison") {
  BasicClassSet a = knot_surgery_beta(2, alexander_family(KnotFamily::torus_2q, 1), ParityConvention::standard);
  BasicClassSet b = knot_surgery_beta(2, alexander_family(KnotFamily::torus_2q, 2), ParityConvention::standard);
  BasicClassSet c = knot_surgery_beta(2, alexander_family(KnotFamily::twist, 1), ParityConvention::standard);
  BasicClassSet empty(Ambient{24, -16}, 0, ParityConvention::standard);
  CHECK(sw_compare(a, b) == SwComparison::distinct_by_count);
  CHECK(sw_compare(empty, a) == SwComparison::distinct_by_count);
  CHECK(sw_compare(a, a) == SwComparison::equal);
  CHECK(sw_compare(a, c) == SwComparison::distinct_by_values);
}

TEST_CASE("class set insertion guards") {
  BasicClassSet s(Ambient{24, -16}, 1, ParityConvention::paper);
  s.insert(BasicClassVector{0, {1}, {}}, 1);
  CHECK_THROWS_AS(s.insert(BasicClassVector{0, {1}, {}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(s.insert(BasicClassVector{0, {}, {}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(s.insert(BasicClassVector{2, {1}, {}}, 0), std::invalid_argument);
}
