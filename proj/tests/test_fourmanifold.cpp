#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cork/fourmanifold.hpp"
#include "oracles.hpp"

using namespace cork;

namespace {

const auto paper = ParityConvention::paper;
const auto standard = ParityConvention::standard;

ClosedRecord en(long n, ParityConvention c = paper) { return record_preset(RecordPreset::En, {n}, c); }
ClosedRecord cp2() { return record_preset(RecordPreset::CP2, {}); }
ClosedRecord cp2bar() { return record_preset(RecordPreset::CP2bar, {}); }
ClosedRecord s2xs2() { return record_preset(RecordPreset::S2xS2, {}); }
ClosedRecord mixed(long a, long b) { return record_preset(RecordPreset::nCP2_mCP2bar, {a, b}); }

LaurentPoly trefoil() { return alexander_family(KnotFamily::torus_2q, 1); }

}  // namespace

TEST_CASE("presets") {
  ClosedRecord e2 = en(2);
  CHECK(e2.e == 24);
  CHECK(e2.sigma == -16);
  CHECK(e2.b2plus == 3);
  CHECK(e2.spin);
  CHECK(e2.parity == RecordParity::even);
  CHECK(e2.cusp);
  CHECK(e2.fiber_class);
  CHECK(e2.sw.count() == 1);
  CHECK_FALSE(en(3).spin);
  CHECK(en(1).sw.kind == SwState::Kind::unknown);

  ClosedRecord m = mixed(3, 20);
  CHECK(m.e == 25);
  CHECK(m.sigma == -17);
  CHECK(m.parity == RecordParity::odd);
  CHECK(m.sw.kind == SwState::Kind::zero);

  ClosedRecord s = s2xs2();
  CHECK(s.e == 4);
  CHECK(s.sigma == 0);
  CHECK(s.parity == RecordParity::even);

  CHECK(record_preset(RecordPreset::En, {6, 2, 4}).handle_count_meta == 9 * 6 - 5 * 2 - 4);
  CHECK_THROWS_AS(record_preset(RecordPreset::En, {6, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(record_preset(RecordPreset::En, {0}), std::invalid_argument);
  CHECK_THROWS_AS(record_preset(RecordPreset::nCP2_mCP2bar, {1}), std::invalid_argument);
}

TEST_CASE("validation rejects inconsistent records") {
  ClosedRecord r = en(2);
  r.e = 23;
  CHECK_THROWS_AS(r.validate(), std::logic_error);
  r = en(2);
  r.spin = false;
  CHECK_THROWS_AS(r.validate(), std::logic_error);
  r = en(2);
  r.summands.s2xs2 = 1;
  CHECK_THROWS_AS(r.validate(), std::logic_error);
  r = en(2);
  r.sw = SwState::known(beta_elliptic(3, 0, paper));
  CHECK_THROWS_AS(r.validate(), std::logic_error);
}

TEST_CASE("connected sums") {
  ClosedRecord b = connected_sum(en(2), cp2bar());
  CHECK(b.e == 25);
  CHECK(b.sigma == -17);
  CHECK(b.parity == RecordParity::odd);
  CHECK(b.sw.count() == 2);
  CHECK(connected_sum(cp2bar(), en(2)) == b);
  CHECK(blowup_record(en(2), 3).sw.count() == 8);

  // sw = 0 absorbs connected sums with b2+ > 0 pieces.
  CHECK(connected_sum(en(2), s2xs2()).sw.kind == SwState::Kind::zero);
  CHECK(connected_sum(en(2), cp2()).sw.kind == SwState::Kind::zero);
  CHECK(connected_sum(connected_sum(en(2), cp2()), cp2bar()).sw.kind == SwState::Kind::zero);

  // Stabilization: a nonspin Y with CP2 # -CP2 is Y # S2xS2.
  ClosedRecord y = blowup_record(en(2), 1);
  CHECK(connected_sum(connected_sum(y, cp2()), cp2bar()) == connected_sum(y, s2xs2()));
  CHECK(connected_sum(connected_sum(en(3), cp2()), cp2bar()) == connected_sum(en(3), s2xs2()));
  // E(2) is spin: CP2 # -CP2 on it must not be rewritten beyond what the rule allows.
  ClosedRecord spin_case = connected_sum(connected_sum(en(2), cp2()), cp2bar());
  CHECK(spin_case.summands.cp2 == 1);
  CHECK(spin_case.summands.s2xs2 == 0);
}

TEST_CASE("cork and plug twists next to the cusp") {
  for (long n = 2; n <= 5; ++n) {
    ClosedRecord z = elliptic_blowup_with_corks(n, paper);
    ClosedRecord x = cork_twist_record(z, "W1");
    CHECK(x.sw.kind == SwState::Kind::zero);
    CHECK(x.summands.s2xs2 == 1);
    CHECK(x.e == z.e);
    CHECK(x.sigma == z.sigma);
    CHECK(x.parity == z.parity);
    CHECK(structurally_identical(cork_twist_record(x, "W1"), z));
    CHECK(plug_twist_record(z, "W12") == x);
    CHECK(structurally_identical(plug_twist_record(plug_twist_record(z, "W12"), "W12"), z));
    CHECK(homeo_classify(x, mixed(2 * n - 1, 10 * n)).verdict == HomeoVerdictKind::homeomorphic);
  }
  ClosedRecord z = elliptic_blowup_with_corks(2, paper);
  CHECK_THROWS_AS(cork_twist_record(z, "nope"), std::invalid_argument);
  CHECK_THROWS_AS(cork_twist_record(z, "W12"), std::invalid_argument);
  CHECK_THROWS_AS(plug_twist_record(z, "W1"), std::invalid_argument);
}

TEST_CASE("knot surgery") {
  CHECK(structurally_identical(knot_surgery_record(en(2), LaurentPoly(1)), en(2)));
  CHECK(knot_surgery_record(en(4), LaurentPoly(1)) == en(4));
  ClosedRecord k = knot_surgery_record(en(2), trefoil());
  CHECK(k.sw.count() == 3);
  CHECK(k.e == 24);
  CHECK(k.parity == RecordParity::even);
  CHECK(knot_surgery_record(k, trefoil()).sw.count() == 5);

  ClosedRecord x = cork_twist_record(elliptic_blowup_with_corks(2, paper), "W1");
  for (long j = 1; j <= 4; ++j) CHECK(knot_surgery_record(x, alexander_family(KnotFamily::twist, j)) == x);

  // Twisting X_K back gives E(n)_K # -CP2.
  ClosedRecord back = cork_twist_record(knot_surgery_record(x, trefoil()), "W1");
  CHECK(back == blowup_record(knot_surgery_record(en(2), trefoil()), 1));
  CHECK(back.sw.count() == 6);

  CHECK_THROWS_AS(knot_surgery_record(s2xs2(), trefoil()), std::invalid_argument);
  CHECK_THROWS_AS(knot_surgery_record(en(2), LaurentPoly(3)), std::invalid_argument);

  // After a rational blowdown only the standard convention carries values.
  ClosedRecord yb = rational_blowdown_record(elliptic_with_plumbings({2, 4}, standard), "D1");
  // Classes of Y_0 live over E(6); the product rule multiplies the t-polynomial.
  const auto t_poly = oracle::laurent_multiply(oracle::elliptic_factor(4), {{-2, 1}, {0, -1}, {2, 1}});
  CHECK(knot_surgery_record(yb, trefoil()).sw.count() == t_poly.size() * yb.sw.count().value() / 5);
  ClosedRecord yp = rational_blowdown_record(elliptic_with_plumbings({2, 4}, paper), "D1");
  CHECK_THROWS_AS(knot_surgery_record(yp, trefoil()), std::domain_error);
}

TEST_CASE("rational blowdown on Y_0") {
  ClosedRecord y0 = elliptic_with_plumbings({2, 4}, paper);
  CHECK(y0.e == 74);
  CHECK(y0.sigma == -50);
  CHECK(y0.sw.count() == 20);
  CHECK(y0.handle_count_meta == 11 * 6 + 2 - 4);

  ClosedRecord y1p = rational_blowdown_record(y0, "D1");
  CHECK(y1p.e == 73);
  CHECK(y1p.sigma == -49);
  CHECK(y1p.b2plus == y0.b2plus);
  CHECK(y1p.sw.count() == 20);
  CHECK_FALSE(y1p.has_piece("W1"));
  CHECK(y1p.has_piece("D2"));
  ClosedRecord y1 = blowup_record(y1p, 1);
  CHECK(y1.e == 74);
  CHECK(y1.sigma == -50);
  CHECK(y1.sw.count() == 40);

  ClosedRecord y2 = blowup_record(rational_blowdown_record(y0, "D2"), 3);
  CHECK(y2.sw.count() == 160);
  CHECK(y2.e == 74);

  CHECK_THROWS_AS(rational_blowdown_record(y0, "W1"), std::invalid_argument);
  CHECK_THROWS_AS(rational_blowdown_record(y0, "D9"), std::invalid_argument);
}

TEST_CASE("two-path consistency") {
  for (long p = 2; p <= 6; ++p) {
    CAPTURE(p);
    for (auto conv : {paper, standard}) {
      ConsistencyReport rep = two_path_consistency(elliptic_with_plumbings({p}, conv), "D1");
      CHECK(rep.ok());
      CHECK(rep.mismatches.empty());
      CHECK(rep.via_blowdown.e == elliptic_with_plumbings({p}, conv).e);
    }
  }
  ClosedRecord y0 = elliptic_with_plumbings({2, 4}, paper);
  ConsistencyReport r1 = two_path_consistency(y0, "D1");
  CHECK(r1.ok());
  CHECK(r1.via_cork.e == 74);
  CHECK(r1.via_cork.sigma == -50);
  CHECK(r1.via_cork.sw.count() == 40);
  CHECK(two_path_consistency(y0, "D2").ok());

  ConsistencyReport z = two_path_consistency(connected_sum(elliptic_with_plumbings({2}, paper), s2xs2()), "D1");
  CHECK(z.ok());
  CHECK(z.via_blowdown.sw.kind == SwState::Kind::zero);
  CHECK(z.via_cork.sw.kind == SwState::Kind::zero);
}

TEST_CASE("twists inside plumbings") {
  ClosedRecord y0 = elliptic_with_plumbings({2, 4}, paper);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string idx = std::to_string(i + 1);
    ClosedRecord w = cork_twist_record(y0, "W" + idx);
    CHECK(cork_twist_record(y0, "Wfam", i) == w);
    CHECK(plug_twist_record(y0, "P" + idx) == w);
    CHECK(plug_twist_record(y0, "Pfam", i) == w);
    CHECK(structurally_identical(cork_twist_record(w, "W" + idx), y0));
    ClosedRecord f = cork_twist_record(y0, "Wfam", i);
    CHECK(structurally_identical(cork_twist_record(f, "Wfam"), y0));
  }
  CHECK_THROWS_AS(cork_twist_record(y0, "Wfam"), std::invalid_argument);
  CHECK_THROWS_AS(cork_twist_record(y0, "Wfam", 2), std::invalid_argument);
  CHECK_THROWS_AS(cork_twist_record(y0, "W1", 1), std::invalid_argument);
  CHECK_THROWS_AS(cork_twist_record(y0, "D1"), std::invalid_argument);
}

TEST_CASE("homeomorphism classification") {
  CHECK(homeo_classify(en(2), en(3)).verdict == HomeoVerdictKind::not_homeomorphic);
  CHECK(homeo_classify(en(2), en(2)).verdict == HomeoVerdictKind::homeomorphic);
  CHECK(homeo_classify(blowup_record(en(2), 1), mixed(3, 20)).verdict == HomeoVerdictKind::homeomorphic);
  // Same rank and signature, different parity.
  CHECK(homeo_classify(connected_sum(s2xs2(), s2xs2()), mixed(2, 2)).verdict == HomeoVerdictKind::not_homeomorphic);
  CHECK(homeo_classify(mixed(0, 2), mixed(0, 2)).verdict == HomeoVerdictKind::inconclusive);
  CHECK(homeo_classify(cp2bar(), cp2bar()).verdict == HomeoVerdictKind::homeomorphic);

  ClosedRecord y1p = rational_blowdown_record(elliptic_with_plumbings({2, 4}, paper), "D1");
  CHECK(homeo_classify(y1p, y1p).verdict == HomeoVerdictKind::homeomorphic);

  ClosedRecord bad = en(2);
  bad.simply_connected = false;
  CHECK_THROWS_AS(homeo_classify(bad, en(2)), std::invalid_argument);
}

TEST_CASE("SW comparison of records") {
  ClosedRecord x = cork_twist_record(elliptic_blowup_with_corks(2, paper), "W1");
  ClosedRecord z = elliptic_blowup_with_corks(2, paper);
  CHECK(sw_compare_records(x, z) == SwComparison::distinct_by_count);
  CHECK(sw_compare_records(x, x) == SwComparison::equal);
  CHECK_FALSE(sw_compare_records(cp2(), z).has_value());
}
