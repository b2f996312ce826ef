#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "nvlab/chain.hpp"
#include "nvlab/errors.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

using namespace nvlab;
using namespace nvlab::testutil;
using nvlab::testgen::Rng;

namespace {

const GroupRingElement kZero(CoeffRing::Integer);

PolyComplex complex_of(std::vector<std::size_t> ranks, std::vector<PolyMatrix> d) {
  std::vector<std::vector<std::string>> basis;
  for (std::size_t k = 0; k < ranks.size(); ++k) basis.push_back(testgen::labels("e", k, ranks[k]));
  return PolyComplex{basis, std::move(d), kZero};
}

/// Homology of a complex whose boundary has at most one nonzero entry per row and column.
IntegralHomology standard_homology(const std::vector<std::size_t>& ranks, const std::vector<PolyMatrix>& s) {
  IntegralHomology h;
  for (std::size_t k = 0; k < ranks.size(); ++k) {
    std::size_t killed = 0;
    std::vector<mpz_class> torsion;
    if (k >= 1) {
      for (std::size_t j = 0; j < ranks[k]; ++j) {
        for (std::size_t i = 0; i < ranks[k - 1]; ++i) killed += !s[k](i, j).is_zero();
      }
    }
    if (k + 1 < ranks.size()) {
      for (std::size_t i = 0; i < ranks[k]; ++i) {
        for (std::size_t j = 0; j < ranks[k + 1]; ++j) {
          if (s[k + 1](i, j).is_zero()) continue;
          ++killed;
          const mpz_class v = abs(s[k + 1](i, j).coefficient(GroupElement{}).get_num());
          if (v > 1) torsion.push_back(v);
        }
      }
    }
    std::sort(torsion.begin(), torsion.end());
    h.betti.push_back(ranks[k] - killed);
    h.torsion.push_back(torsion);
  }
  return h;
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(complex_of({1, 1}, {empty(0, 1), mat({{"2"}})})).ok());
  const auto bad = validate(complex_of({1, 1, 1}, {empty(0, 1), mat({{"1"}}), mat({{"1"}})}));
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].degree == 1);
  CHECK(bad.violations[0].value == "1");
  CHECK_FALSE(validate(complex_of({1, 2}, {empty(0, 1), mat({{"1"}})})).ok());
  CHECK_THROWS_AS(make_complex<GroupRingElement>({{"a"}, {"b"}, {"c"}}, {empty(0, 1), mat({{"1"}}), mat({{"1"}})}, kZero),
                  InvalidComplex);
}

TEST_CASE("homology_int examples") {
  const auto circle = homology_int(complex_of({1, 1}, {empty(0, 1), mat({{"0"}})}));
  CHECK(circle.betti == std::vector<std::size_t>{1, 1});
  const auto two = homology_int(complex_of({1, 1}, {empty(0, 1), mat({{"2"}})}));
  CHECK(two.betti == std::vector<std::size_t>{0, 0});
  CHECK(two.torsion[0] == std::vector<mpz_class>{2});
  CHECK(two.torsion[1].empty());
  const auto sphere = homology_int(complex_of({1, 0, 1}, {empty(0, 1), empty(1, 0), empty(0, 1)}));
  CHECK(sphere.betti == std::vector<std::size_t>{1, 0, 1});
  CHECK_THROWS(homology_int(complex_of({1, 1}, {empty(0, 1), mat({{"1 - t"}})})));
}

TEST_CASE("homology_int is invariant under unimodular change of basis") {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const auto ranks = testgen::random_ranks(rng, 4, 3);
    const auto s = testgen::random_standard_boundary(rng, ranks, 0, true);
    const auto expect = standard_homology(ranks, s);
    std::vector<std::pair<PolyMatrix, PolyMatrix>> x;
    for (const auto r : ranks) x.push_back(testgen::random_unimodular(rng, r, 0, 0));
    std::vector<PolyMatrix> d{s[0]};
    for (std::size_t k = 1; k < ranks.size(); ++k) d.push_back(multiply(multiply(x[k - 1].first, s[k]), x[k].second));
    const auto direct = homology_int(complex_of(ranks, s));
    const auto changed = homology_int(complex_of(ranks, d));
    CHECK(direct.betti == expect.betti);
    CHECK(direct.torsion == expect.torsion);
    CHECK(changed.betti == expect.betti);
    CHECK(changed.torsion == expect.torsion);
  }
}

TEST_CASE("novikov_betti examples") {
  CHECK(novikov_betti(complex_of({1, 1}, {empty(0, 1), mat({{"1 - t"}})})) == std::vector<std::size_t>{0, 0});
  CHECK(novikov_betti(complex_of({2, 3}, {empty(0, 2), empty(2, 3)})) == std::vector<std::size_t>{2, 3});
  CHECK(novikov_betti(complex_of({1, 2, 1}, {empty(0, 1), mat({{"h1", "-1"}}), mat({{"1"}, {"h1"}})})) ==
        std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("mapping cone examples") {
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const auto ranks = testgen::random_ranks(rng, 3, 2);
    const auto c = complex_of(ranks, testgen::random_boundary(rng, ranks, 1));
    std::vector<PolyMatrix> id;
    for (const auto r : ranks) id.push_back(identity_matrix(r, kZero));
    const auto cone = mapping_cone(ChainMap<GroupRingElement>{c, c, id});
    CHECK(validate(cone).ok());
    for (const auto b : novikov_betti(cone)) CHECK(b == 0);
    CHECK(cone.euler_characteristic() == c.euler_characteristic() - c.euler_characteristic());
  }

  const auto unit = complex_of({1}, {empty(0, 1)});
  const auto cone = mapping_cone(ChainMap<GroupRingElement>{unit, unit, {mat({{"1 - t"}})}});
  CHECK(novikov_betti(localize(cone)) == std::vector<std::size_t>{0, 0});
  CHECK(cone.basis[1] == std::vector<std::string>{"e0_0'"});

  CHECK_THROWS_AS(mapping_cone(ChainMap<GroupRingElement>{complex_of({1, 1}, {empty(0, 1), mat({{"2"}})}),
                                                          complex_of({1, 1}, {empty(0, 1), mat({{"2"}})}),
                                                          {mat({{"1"}}), mat({{"3"}})}}),
                  NotAChainMap);
}

TEST_CASE("cone of the zero map splits the homology") {
  Rng rng(33);
  for (int i = 0; i < 30; ++i) {
    const auto rs = testgen::random_ranks(rng, 3, 2);
    const auto rt = testgen::random_ranks(rng, 3, 2);
    const auto s = complex_of(rs, testgen::random_boundary(rng, rs, 0));
    const auto t = complex_of(rt, testgen::random_boundary(rng, rt, 0));
    std::vector<PolyMatrix> zero;
    for (std::size_t k = 0; k < 3; ++k) zero.push_back(empty(rt[k], rs[k]));
    const auto cone = mapping_cone(ChainMap<GroupRingElement>{s, t, zero});
    CHECK(cone.euler_characteristic() == t.euler_characteristic() - s.euler_characteristic());
    const auto hc = homology_int(cone);
    const auto hs = homology_int(s);
    const auto ht = homology_int(t);
    for (std::size_t k = 0; k < cone.degrees(); ++k) {
      const std::size_t from_t = k < ht.betti.size() ? ht.betti[k] : 0;
      const std::size_t from_s = k >= 1 && k - 1 < hs.betti.size() ? hs.betti[k - 1] : 0;
      CHECK(hc.betti[k] == from_t + from_s);
      std::vector<mpz_class> tors;
      if (k < ht.torsion.size()) tors = ht.torsion[k];
      if (k >= 1 && k - 1 < hs.torsion.size()) tors.insert(tors.end(), hs.torsion[k - 1].begin(), hs.torsion[k - 1].end());
      // the torsion subgroups have equal order
      mpz_class a = 1, b = 1;
      for (const auto& x : tors) a *= x;
      for (const auto& x : hc.torsion[k]) b *= x;
      CHECK(a == b);
    }
  }
}

TEST_CASE("extend_ring") {
  const auto zh = complex_of({1, 1}, {empty(0, 1), mat({{"1 - h1"}})});
  CHECK(validate(extend_ring(zh, RingLevel::ZHTheta)).ok());
  CHECK(localize(zh).boundary[1](0, 0) == LocalizedElement(el("1 - h1")));
  const auto poly = complex_of({1, 1}, {empty(0, 1), mat({{"1 - t"}})});
  CHECK_THROWS_AS(extend_ring(poly, RingLevel::ZH), UnsupportedExtension);
  const auto laurent = complex_of({1, 1}, {empty(0, 1), mat({{"1 - t^-1"}})});
  CHECK_THROWS_AS(extend_ring(laurent, RingLevel::ZHTheta), UnsupportedExtension);
}
