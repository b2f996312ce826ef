#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nvlab/errors.hpp"
#include "nvlab/torsion.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

using namespace nvlab;
using namespace nvlab::testutil;
using nvlab::testgen::Rng;

namespace {

const LocalizedElement kZero{GroupRingElement(CoeffRing::Integer)};

LocMatrix lmat(std::initializer_list<std::initializer_list<const char*>> rows) { return localize(mat(rows)); }
LocMatrix lempty(std::size_t r, std::size_t c) { return LocMatrix(r, c, kZero); }

K1Class cls(const std::string& num, const std::string& den = "1") { return K1Class::of_fraction(el(num), el(den)); }

LocComplex direct_sum(const LocComplex& a, const LocComplex& b) {
  const std::size_t n = std::max(a.degrees(), b.degrees());
  LocComplex out;
  out.zero = kZero;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::string> labels;
    if (k < a.degrees()) labels = a.basis[k];
    if (k < b.degrees()) {
      for (const auto& s : b.basis[k]) labels.push_back(s + "b");
    }
    out.basis.push_back(labels);
  }
  for (std::size_t k = 0; k < n; ++k) {
    LocMatrix d(k == 0 ? 0 : out.rank(k - 1), out.rank(k), kZero);
    if (k >= 1) {
      if (k < a.degrees()) d.set_block(0, 0, a.boundary[k]);
      if (k < b.degrees()) d.set_block(a.rank(k - 1), a.rank(k), b.boundary[k]);
    }
    out.boundary.push_back(d);
  }
  return out;
}

LocComplex one_step(const char* unit) { return LocComplex{{{"x"}, {"y"}}, {lempty(0, 1), lmat({{unit}})}, kZero}; }

}  // namespace

TEST_CASE("torsion of a single unit differential") {
  // d_1 = u contributes [u]^-1 under the alternating-minor convention
  CHECK(k1_eq(torsion_acyclic(one_step("1 - t")), cls("1", "1 - t")));
  CHECK(k1_eq(torsion_acyclic(one_step("-t^2 * h1")), K1Class()));
  const LocComplex three{{{}, {"a"}, {"b"}}, {lempty(0, 0), lempty(0, 1), lmat({{"1 - 2*t"}})}, kZero};
  CHECK(k1_eq(torsion_acyclic(three), cls("1 - 2*t")));
}

TEST_CASE("torsion of the cone of the identity is trivial") {
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto ranks = testgen::random_ranks(rng, 3, 2);
    LocComplex c{{}, {}, kZero};
    for (std::size_t k = 0; k < ranks.size(); ++k) c.basis.push_back(testgen::labels("c", k, ranks[k]));
    for (const auto& d : testgen::random_boundary(rng, ranks, 1)) c.boundary.push_back(localize(d));
    std::vector<LocMatrix> id;
    for (const auto r : ranks) id.push_back(identity_matrix(r, kZero));
    const ChainMap<LocalizedElement> f{c, c, id};
    CHECK(torsion_of_map(f).is_identity());
    CHECK(torsion_acyclic(mapping_cone(f)).is_identity());
  }
}

TEST_CASE("torsion_of_map of multiplication by a unit") {
  const LocComplex c{{{"x"}}, {lempty(0, 1)}, kZero};
  const ChainMap<LocalizedElement> f{c, c, {lmat({{"1 - t*h1"}})}};
  CHECK(k1_eq(torsion_of_map(f), cls("1", "1 - t*h1")));
}

TEST_CASE("torsion_acyclic rejects non-acyclic complexes") {
  CHECK_THROWS_AS(torsion_acyclic(one_step("0")), NotAcyclic);
  const LocComplex bad{{{"x"}, {"y"}, {"z"}}, {lempty(0, 1), lmat({{"1"}}), lmat({{"1"}})}, kZero};
  CHECK_THROWS_AS(torsion_acyclic(bad), InvalidComplex);
}

TEST_CASE("cone_torsion_closed_form examples") {
  ConeLikeDatum ids{LocComplex{{{"a"}, {"b"}}, {lempty(0, 1), lmat({{"1 - t"}})}, kZero},
                    {lmat({{"1"}}), lmat({{"1"}})},
                    {lempty(0, 1), lmat({{"-1 + t"}})}};
  CHECK(cone_torsion_closed_form(ids).is_identity());
  CHECK(torsion_acyclic(assemble_cone_like(ids)).is_identity());

  const ConeLikeDatum single{LocComplex{{{"a"}}, {lempty(0, 1)}, kZero}, {lmat({{"1 - t"}})}, {lempty(0, 1)}};
  CHECK(k1_eq(cone_torsion_closed_form(single), cls("1", "1 - t")));
  CHECK(k1_eq(torsion_acyclic(assemble_cone_like(single)), cls("1", "1 - t")));

  // the doubling map on the circle: A_k = 1 - t h_k with h_0 = 1, h_1 = 2 and zero boundaries
  const ConeLikeDatum doubling{LocComplex{{{"a"}, {"c"}}, {lempty(0, 1), lmat({{"0"}})}, kZero},
                               {lmat({{"1 - t"}}), lmat({{"1 - 2*t"}})},
                               {lempty(0, 1), lmat({{"0"}})}};
  CHECK(k1_eq(cone_torsion_closed_form(doubling), cls("1 - 2*t", "1 - t")));
  CHECK(k1_eq(torsion_acyclic(assemble_cone_like(doubling)), cls("1 - 2*t", "1 - t")));
}

TEST_CASE("check_cone_like rejects malformed data") {
  ConeLikeDatum d{LocComplex{{{"a"}, {"b"}}, {lempty(0, 1), lmat({{"1"}})}, kZero},
                  {lmat({{"1"}}), lmat({{"1"}})},
                  {lempty(0, 1), lmat({{"1"}})}};
  CHECK_THROWS_AS(check_cone_like(d), InvalidComplex);
  d.d_prime[1] = lmat({{"-1"}});
  CHECK_NOTHROW(check_cone_like(d));
  d.a[0] = lmat({{"0"}});
  CHECK_THROWS_AS(check_cone_like(d), NotInvertible);
  d.a[0] = lmat({{"1", "0"}});
  CHECK_THROWS_AS(check_cone_like(d), DimensionMismatch);
}

TEST_CASE("cone lemma and pivot independence on random cone-like data") {
  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const auto d = testgen::random_cone_like(rng, static_cast<std::size_t>(testgen::uniform(rng, 1, 3)), 3, 1);
    const auto e = assemble_cone_like(d);
    const auto greedy = torsion_acyclic(e);
    CHECK(k1_eq(greedy, cone_torsion_closed_form(d)));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) CHECK(k1_eq(torsion_acyclic(e, seed), greedy));
  }
}

TEST_CASE("torsion is multiplicative on direct sums") {
  Rng rng(43);
  for (int i = 0; i < 30; ++i) {
    const auto a = assemble_cone_like(testgen::random_cone_like(rng, 2, 2, 1));
    const auto b = assemble_cone_like(testgen::random_cone_like(rng, 2, 2, 1));
    CHECK(k1_eq(torsion_acyclic(direct_sum(a, b)), torsion_acyclic(a) * torsion_acyclic(b)));
  }
}
