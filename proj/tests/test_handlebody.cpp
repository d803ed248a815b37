#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "cork/handlebody.hpp"
#include "cork/serialize.hpp"
#include "oracles.hpp"

using namespace cork;

namespace {

HandlePresentation random_presentation(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 4), dots(0, 2);
  std::uniform_int_distribution<long> entry(-3, 3);
  HandlePresentation p;
  const std::size_t h = dim(rng);
  p.one_handles = dots(rng);
  p.linking = IntMatrix(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i; j < h; ++j) p.linking(i, j) = p.linking(j, i) = entry(rng);
  p.over = oracle::random_matrix(rng, h, p.one_handles, -2, 2);
  return p;
}

}  // namespace

TEST_CASE("abelian groups") {
  CHECK(AbelianGroup{}.to_string() == "0");
  CHECK(AbelianGroup{2, {4}}.to_string() == "Z^2 + Z/4");
  CHECK(AbelianGroup{0, {2, 6}}.torsion_order() == 12);
  CHECK(AbelianGroup::cokernel(IntMatrix{{2, 0}, {0, 3}}) == AbelianGroup{0, {6}});
  CHECK(AbelianGroup::cokernel(IntMatrix(2, 0)) == AbelianGroup{2, {}});
}

TEST_CASE("corks are contractible for every framing") {
  for (long n = 1; n <= 10; ++n)
    for (long f = -3; f <= 3; ++f) {
      HomologyReport h = homology(preset(PresetKind::Wn, {n, f}));
      CHECK(h.point_like());
      CHECK(h.boundary_h1.is_trivial());
      CHECK(h.euler == 1);
    }
  CHECK(preset(PresetKind::Wn, {3}).name == "W_3");
  CHECK_THROWS_AS(preset(PresetKind::Wn, {0}), std::invalid_argument);
}

TEST_CASE("boundary sums of corks") {
  HandlePresentation w = preset(PresetKind::Wfamily, {1, 3, 7});
  CHECK(w.name == "W(1,3,7)");
  CHECK(w.one_handles == 3);
  CHECK(w.swap_pairs.size() == 3);
  HomologyReport h = homology(w);
  CHECK(h.point_like());
  CHECK(h.euler == 1);
}

TEST_CASE("plugs") {
  for (long m = 1; m <= 3; ++m)
    for (long n = 2; n <= 6; ++n) {
      HomologyReport h = homology(preset(PresetKind::Wmn, {m, n}));
      CHECK(h.h1.is_trivial());
      CHECK(h.h2 == AbelianGroup{1, {}});
      CHECK(h.intersection_form.rank == 1);
    }
  CHECK(preset(PresetKind::Wmn, {1, 2}).name == "W_{1,2}");
}

TEST_CASE("plumbings and rational balls") {
  for (long p = 2; p <= 10; ++p) {
    CAPTURE(p);
    HandlePresentation c = preset(PresetKind::Cp, {p});
    HomologyReport hc = homology(c);
    CHECK(determinant(c.linking) == oracle::chain_determinant_recurrence(p));
    CHECK(determinant(c.linking) == (p % 2 == 0 ? -1 : 1) * p * p);
    CHECK(hc.boundary_h1 == AbelianGroup{0, {Integer(p * p)}});
    CHECK(hc.intersection_form.definiteness == Definiteness::negative);
    CHECK(hc.intersection_form.signature == -(p - 1));
    CHECK(hc.euler == p);

    HomologyReport hb = homology(preset(PresetKind::Bp, {p}));
    CHECK(hb.h1 == AbelianGroup{0, {Integer(p)}});
    CHECK(hb.h2.is_trivial());
    CHECK(hb.euler == 1);
    CHECK(hb.boundary_h1 == hc.boundary_h1);

    HandlePresentation d = preset(PresetKind::Dp, {p});
    CHECK(d.euler() == p + 2);
    CHECK(d.contains_after_twist == "W_" + std::to_string(p - 1));
  }
  CHECK_THROWS_AS(preset(PresetKind::Cp, {1}), std::invalid_argument);
}

TEST_CASE("dot-zero swap") {
  HandlePresentation w = preset(PresetKind::Wn, {2});
  HandlePresentation s = dot_zero_swap(w, 0, 0);
  CHECK(dot_zero_swap(s, 0, 0) == w);
  CHECK(swap_intermediate_euler(w) == w.euler() + 2);
  CHECK(homology(s).point_like());

  HandlePresentation plug = preset(PresetKind::Wmn, {1, 3});
  HandlePresentation ps = dot_zero_swap_all(plug);
  CHECK(dot_zero_swap_all(ps) == plug);
  CHECK(homology(ps).h2 == homology(plug).h2);

  CHECK_THROWS_AS(dot_zero_swap(preset(PresetKind::Wn, {2, 1}), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(dot_zero_swap(w, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(dot_zero_swap(preset(PresetKind::Bp, {3}), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(dot_zero_swap_all(preset(PresetKind::Cp, {3})), std::invalid_argument);
}

TEST_CASE("slides preserve homology") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 300; ++iter) {
    HandlePresentation p = random_presentation(rng);
    if (p.two_handles() < 2) continue;
    HomologyReport before = homology(p);
    std::uniform_int_distribution<std::size_t> idx(0, p.two_handles() - 1);
    HandlePresentation q = p;
    for (int s = 0; s < 5; ++s) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      q = handle_slide(q, i, j, (s % 2) ? 1 : -1);
    }
    HomologyReport after = homology(q);
    CHECK(after.h1 == before.h1);
    CHECK(after.h2 == before.h2);
    CHECK(after.boundary_h1 == before.boundary_h1);
    CHECK(after.intersection_form.signature == before.intersection_form.signature);
    CHECK(after.intersection_form.parity == before.intersection_form.parity);
    CHECK(after.intersection_form.nullity == before.intersection_form.nullity);
  }
  HandlePresentation c = preset(PresetKind::Cp, {3});
  CHECK_THROWS_AS(handle_slide(c, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(handle_slide(c, 0, 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(handle_slide(c, 0, 1, 2), std::invalid_argument);
}

TEST_CASE("blow-up and blow-down") {
  HandlePresentation c = preset(PresetKind::Cp, {4});
  HandlePresentation b = blowup_pres(c);
  CHECK(b.two_handles() == 4);
  CHECK(homology(b).intersection_form.signature == homology(c).intersection_form.signature - 1);
  CHECK(blowdown_pres(b, 3) == c);
  CHECK_THROWS_AS(blowdown_pres(c, 0), std::invalid_argument);
  CHECK_THROWS_AS(blowdown_pres(blowup_pres(c, 1), 4), std::invalid_argument);
}

TEST_CASE("normal form") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    HandlePresentation p = random_presentation(rng);
    std::vector<std::size_t> order(p.two_handles());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    HandlePresentation q = p.permuted(order);
    CHECK(homology(q).boundary_h1 == homology(p).boundary_h1);
    CHECK(q.normalized().normalized() == q.normalized());
  }
  HandlePresentation c = preset(PresetKind::Cp, {5});
  CHECK(c.permuted({3, 2, 1, 0}).normalized() == c.normalized());
  CHECK_THROWS_AS(c.permuted({0, 0, 1, 2}), std::invalid_argument);
}

TEST_CASE("Eliashberg check") {
  HandlePresentation w = preset(PresetKind::Wn, {1});
  CHECK(eliashberg_check(w, LegendrianData{{1}}) == std::vector<bool>{true});
  CHECK(eliashberg_check(w, LegendrianData{{0}}) == std::vector<bool>{false});
  CHECK_THROWS_AS(eliashberg_check(w, LegendrianData{{1, 2}}), std::invalid_argument);
}

TEST_CASE("presentation JSON round trip") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    HandlePresentation p = random_presentation(rng);
    p.name = "random";
    CHECK(presentation_from_json(Json::parse(to_json(p).dump())) == p);
  }
  for (auto kind : {PresetKind::Wn, PresetKind::Wmn, PresetKind::Dp, PresetKind::Bp}) {
    HandlePresentation p = preset(kind, kind == PresetKind::Wmn ? std::vector<long>{1, 4} : std::vector<long>{3});
    HandlePresentation q = presentation_from_json(to_json(p));
    CHECK(q == p);
    CHECK(q.name == p.name);
  }
  Json bad = to_json(preset(PresetKind::Cp, {3}));
  bad["two_handles"][0]["linking"][1] = 7;
  CHECK_THROWS_AS(presentation_from_json(bad), std::invalid_argument);
}
