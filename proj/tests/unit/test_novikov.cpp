#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nvlab/errors.hpp"
#include "nvlab/novikov.hpp"
#include "nvlab/scenario.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

using namespace nvlab;
using namespace nvlab::testutil;
using nvlab::testgen::Rng;

namespace {

const GroupRingElement kZero(CoeffRing::Integer);

CyclicCobordismDatum bundled(const std::string& name) {
  return *parse_scenario(std::string(NVLAB_SCENARIO_DIR) + "/" + name + ".json").datum;
}

K1Class cls(const std::string& num, const std::string& den = "1") { return K1Class::of_fraction(el(num), el(den)); }

bool is_identity(const LocMatrix& m) { return m == identity_matrix(m.rows(), LocalizedElement(kZero)); }

/// S^1 with a minimum p and a maximum q, built directly.
CyclicCobordismDatum circle() {
  CyclicCobordismDatum d;
  d.group = GradedGroup(0);
  d.labels_u = {{"b"}, {}};
  d.labels_v = {{"p"}, {"q"}};
  d.bdry1 = {empty(0, 1), empty(1, 0)};
  d.bdryv = {empty(0, 1), mat({{"1"}}, 0)};
  d.p = {empty(0, 1), mat({{"t"}}, 0)};
  d.n = {mat({{"1"}}, 0), empty(1, 0)};
  d.h = {mat({{"0"}}, 0), empty(0, 0)};
  return d;
}

}  // namespace

TEST_CASE("assemble_E examples") {
  CyclicCobordismDatum empty_datum;
  CHECK(assemble_E(empty_datum).degrees() == 0);

  const auto doubling = mapping_torus_datum({mat({{"1"}}, 0), mat({{"2"}}, 0)}, {empty(0, 1), mat({{"0"}}, 0)});
  const auto e = assemble_E(doubling);
  CHECK(validate(e).ok());
  REQUIRE(e.degrees() == 3);
  CHECK(e.boundary[1] == mat({{"0", "1 - t"}}, 0));
  CHECK(e.boundary[2] == mat({{"1 - 2*t"}, {"0"}}, 0));

  const auto s1 = assemble_E(circle());
  CHECK(validate(s1).ok());
  CHECK(s1.degrees() == 3);
  CHECK(s1.basis[1] == std::vector<std::string>{"q", "[[b]]"});
}

TEST_CASE("mapping_torus_datum examples") {
  CHECK(validate_datum(mapping_torus_datum({mat({{"1"}}, 0), mat({{"1"}}, 0)}, {empty(0, 1), mat({{"0"}}, 0)})).ok());
  const auto doubling = mapping_torus_datum({mat({{"1"}}, 0), mat({{"2"}}, 0)}, {empty(0, 1), mat({{"0"}}, 0)});
  CHECK(validate_datum(doubling).ok());
  CHECK(doubling.labels_u[1] == std::vector<std::string>{"x1_0"});
  CHECK_THROWS_AS(mapping_torus_datum({mat({{"1"}}, 0), mat({{"2"}}, 0)}, {empty(0, 1), mat({{"1"}}, 0)}),
                  NotAChainMap);
  CHECK_THROWS_AS(mapping_torus_datum({mat({{"1", "0"}}, 0)}, {empty(0, 1)}), NonSquare);
}

TEST_CASE("validate_datum names the failing block") {
  auto d = bundled("coupled_pair");
  CHECK(validate_datum(d).ok());
  d.bdryv[1] = mat({{"1 - 2*h1"}}, 1);
  const auto r = validate_datum(d);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].block_row == 2);
  CHECK(r.violations[0].block_col == 3);
  CHECK(r.violations[0].describe().find("block (row2,col3)") != std::string::npos);
  CHECK_THROWS_AS(check_datum(d), InvalidDatum);

  auto e = bundled("coupled_pair");
  e.p[1] = mat({{"1 - h1"}}, 1);
  CHECK_THROWS_AS(check_datum(e), InvalidDatum);
  auto f = bundled("coupled_pair");
  f.h[0] = mat({{"t"}}, 1);
  CHECK_THROWS_AS(check_datum(f), InvalidDatum);
}

TEST_CASE("change_of_base examples") {
  const auto doubling = mapping_torus_datum({mat({{"1"}}, 0), mat({{"2"}}, 0)}, {empty(0, 1), mat({{"0"}}, 0)});
  for (const auto& t : change_of_base(doubling).t) CHECK(is_identity(t));

  auto no_p = bundled("coupled_pair");
  no_p.p[1] = empty(1, 1);
  no_p.h[1] = mat({{"h1"}}, 1);
  REQUIRE(validate_datum(no_p).ok());
  for (const auto& t : change_of_base(no_p).t) CHECK(is_identity(t));

  // S^1: E_1 = (q, [[b]]) and T_1 moves q by -(1 - h_0 t)^-1 P_1 = -t into the b' coordinate
  const auto cb = change_of_base(circle());
  REQUIRE(cb.t.size() == 3);
  LocMatrix t1 = identity_matrix(2, LocalizedElement(kZero));
  t1(1, 0) = LocalizedElement(el("-t", 0));
  CHECK(cb.t[1] == t1);
  // rows (b, p), columns (q, [[b]]): the u-to-v block vanishes and delta = 1 - t sits at (p, q)
  const auto& d1 = cb.transformed.boundary[1];
  CHECK(d1(0, 0).is_zero());
  CHECK(d1(1, 0) == LocalizedElement(el("1 - t", 0)));
  CHECK(d1(0, 1) == LocalizedElement(el("1", 0)));
  CHECK(validate(cb.transformed).ok());
}

TEST_CASE("novikov_complex examples") {
  const auto r = novikov_complex(circle());
  REQUIRE(r.incidences.size() == 1);
  CHECK(r.incidences[0].r == "q");
  CHECK(r.incidences[0].s == "p");
  CHECK(equal_up_to_signed_monomial(r.incidences[0].value.num() * el("1", 0),
                                    el("1 - t", 0) * r.incidences[0].value.den()));
  CHECK(novikov_betti(r.complex) == std::vector<std::size_t>{0, 0});

  const auto torus = novikov_complex(bundled("doubling_torus"));
  for (std::size_t k = 0; k < torus.complex.degrees(); ++k) CHECK(torus.complex.rank(k) == 0);
  CHECK(torus.incidences.empty());

  auto h0 = bundled("coupled_pair");
  h0.h = {mat({{"0"}}, 1), mat({{"0"}}, 1)};
  h0.p[1] = empty(1, 1);
  REQUIRE(validate_datum(h0).ok());
  const auto flat = novikov_complex(h0);
  CHECK(flat.complex.boundary[1](0, 0) == LocalizedElement(el("1 - h1", 1)));
}

TEST_CASE("incidence_series examples") {
  const auto d = circle();
  const auto r = novikov_complex(d);
  CHECK(incidence_series(d, "q", "p", 10) == expand(r.incidences[0].value, 10));
  CHECK(incidence_series(d, "q", "p", 10).terms() == el("1 - t", 0));
  CHECK_THROWS_AS(incidence_series(d, "q", "nope", 10), LabelNotFound);

  const auto pair = bundled("coupled_pair");
  const auto s = incidence_series(pair, "b1", "b0", 6);
  CHECK(s == expand(novikov_complex(pair).incidences[0].value, 6));
  CHECK(s.coefficient(3) == el("-h1^2 + h1^3", 1));
}

TEST_CASE("torsion_of_inclusion examples") {
  const auto doubling = torsion_of_inclusion(bundled("doubling_torus"));
  CHECK(k1_eq(doubling.path_b, cls("1 - 2*t", "1 - t")));
  CHECK(k1_eq(doubling.path_a, doubling.path_b));
  CHECK(k1_eq(determinant_product({mat({{"1"}}, 0), mat({{"2"}}, 0)}), cls("1 - 2*t", "1 - t")));

  const auto s1 = torsion_of_inclusion(circle());
  CHECK(s1.path_a.is_identity());
  CHECK(s1.path_b.is_identity());
}

TEST_CASE("properties of random valid data") {
  Rng rng(51);
  int plus_fails = 0;
  for (int i = 0; i < 60; ++i) {
    const auto d = testgen::random_datum(rng, static_cast<std::size_t>(testgen::uniform(rng, 2, 4)), 2, 1);
    REQUIRE(validate_datum(d).ok());
    CHECK(validate(assemble_E(d)).ok());
    const auto r = novikov_complex(d);
    CHECK(validate(r.complex).ok());
    plus_fails += !r.plus_sign_squares_to_zero;
    int chi = 0;
    for (std::size_t k = 0; k < d.degrees(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<int>(d.rank_v(k));
    CHECK(r.complex.euler_characteristic() == chi);
    for (const auto& inc : r.incidences) {
      CHECK(incidence_series(d, inc.r, inc.s, 12) == expand(inc.value, 12));
    }
    for (const auto& t : change_of_base(d).t) {
      if (t.rows() > 0) CHECK(k1_of_quotient(det(t)).is_identity());
    }
    const auto tau = torsion_of_inclusion(d);
    CHECK(k1_eq(tau.path_a, tau.path_b));
    if (tau.cone_route) CHECK(k1_eq(*tau.cone_route, tau.path_a));
  }
  CHECK(plus_fails > 0);
}
