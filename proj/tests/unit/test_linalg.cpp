#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "nvlab/errors.hpp"
#include "nvlab/linalg.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

using namespace nvlab;
using namespace nvlab::testutil;
using nvlab::testgen::Rng;

namespace {

/// Leibniz expansion over all permutations.
GroupRingElement leibniz(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GroupRingElement out(CoeffRing::Integer);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    GroupRingElement term = GroupRingElement::constant(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    out += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

PolyMatrix power(const PolyMatrix& a, int k) {
  PolyMatrix out = identity_matrix(a.rows(), GroupRingElement(CoeffRing::Integer));
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

}  // namespace

TEST_CASE("det examples") {
  CHECK(det(identity_matrix(3, GroupRingElement(CoeffRing::Integer))) == el("1"));
  CHECK(det(mat({{"1 - t", "-t"}, {"-t", "1"}})) == el("1 - t - t^2"));
  CHECK(det(empty(0, 0)) == el("1"));
  CHECK_THROWS_AS(det(empty(2, 3)), NonSquare);
}

TEST_CASE("det agrees with the Leibniz expansion") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const auto m = testgen::random_matrix(rng, n, n, 2, 2);
    CHECK(det(m) == leibniz(m));
  }
}

TEST_CASE("det of block upper-triangular matrices") {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const auto a = testgen::random_matrix(rng, 2, 2, 2, 1);
    const auto b = testgen::random_matrix(rng, 2, 2, 2, 1);
    const auto c = testgen::random_matrix(rng, 2, 2, 2, 1);
    PolyMatrix m = empty(4, 4);
    m.set_block(0, 0, a);
    m.set_block(0, 2, c);
    m.set_block(2, 2, b);
    CHECK(det(m) == det(a) * det(b));
    CHECK(det(m) == leibniz(m));
  }
}

TEST_CASE("det is multiplicative") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const auto m = testgen::random_matrix(rng, n, n, 2, 1);
    const auto p = testgen::random_matrix(rng, n, n, 2, 1);
    CHECK(det(multiply(m, p)) == det(m) * det(p));
  }
}

TEST_CASE("det over the localization") {
  LocMatrix m(2, 2, LocalizedElement());
  m(0, 0) = frac("1", "1 - t");
  m(0, 1) = frac("t", "1");
  m(1, 0) = frac("1", "1");
  m(1, 1) = frac("1", "1 - 2*t");
  CHECK(det(m) == frac("1", "1 - t") * frac("1", "1 - 2*t") - frac("t", "1"));
}

TEST_CASE("snf examples") {
  const auto a = snf(mat({{"2", "0"}, {"0", "3"}}));
  CHECK(a.rank == 2);
  CHECK(a.diagonal == std::vector<mpz_class>{1, 6});
  CHECK(snf(mat({{"0", "0"}, {"0", "0"}})).rank == 0);
  const auto c = snf(mat({{"1", "1"}, {"1", "1"}}));
  CHECK(c.rank == 1);
  CHECK(c.diagonal == std::vector<mpz_class>{1});
  CHECK_THROWS(snf(mat({{"t"}})));
}

TEST_CASE("snf divisibility chain and determinant") {
  Rng rng(24);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    PolyMatrix m = empty(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = GroupRingElement::constant(testgen::uniform(rng, -6, 6));
    }
    const auto s = snf(m);
    for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k) {
      CHECK(s.diagonal[k] > 0);
      CHECK(s.diagonal[k + 1] % s.diagonal[k] == 0);
    }
    CHECK(s.rank == rank(m));
    const auto d = det(m);
    if (!d.is_zero()) {
      mpz_class prod = 1;
      for (const auto& x : s.diagonal) prod *= x;
      CHECK(prod == abs(d.coefficient(GroupElement{}).get_num()));
    }
  }
}

TEST_CASE("rank and independent rows") {
  CHECK(rank(mat({{"1", "t"}, {"h1", "h1 * t"}})) == 1);
  CHECK(rank(mat({{"1", "t"}, {"h1", "t"}})) == 2);
  const auto rows = independent_rows(mat({{"0", "0"}, {"1", "0"}, {"0", "1 - t"}}));
  CHECK(rows == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(independent_rows(mat({{"1", "2"}, {"2", "4"}})), PivotFailure);
}

TEST_CASE("adjugate satisfies A adj(A) = det(A) I and matches the serial path") {
  Rng rng(25);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const auto a = testgen::random_matrix(rng, n, n, 2, 1);
    const auto adj = adjugate(a);
    CHECK(adj == adjugate_serial(a));
    PolyMatrix expect = empty(n, n);
    for (std::size_t k = 0; k < n; ++k) expect(k, k) = det(a);
    CHECK(multiply(a, adj) == expect);
  }
}

TEST_CASE("resolvent_series examples") {
  const auto id = resolvent_series(mat({{"0", "0"}, {"0", "0"}}), 5);
  CHECK(id(0, 0).terms() == el("1"));
  CHECK(id(0, 1).is_zero());
  const auto fib = resolvent_series(mat({{"1", "1"}, {"1", "0"}}), 4);
  CHECK(fib(0, 0).terms() == el("1 + t + 2*t^2 + 3*t^3 + 5*t^4"));
  const auto c = resolvent_series(mat({{"3*h1"}}), 3);
  CHECK(c(0, 0).terms() == el("1 + 3*h1*t + 9*h1^2*t^2 + 27*h1^3*t^3"));
}

TEST_CASE("resolvent_series equals the sum of matrix powers") {
  Rng rng(26);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    const auto a = testgen::random_monomial_matrix(rng, n, 2);
    const int order = 6;
    const auto s = resolvent_series(a, order);
    CHECK(s == resolvent_series_serial(a, order));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        GroupRingElement expect(CoeffRing::Integer);
        for (int k = 0; k <= order; ++k) expect += power(a, k)(r, c).shifted(GroupElement::theta_power(k));
        CHECK(s(r, c).terms() == expect);
      }
    }
  }
}

TEST_CASE("resolvent_rational examples") {
  const auto fib = resolvent_rational(mat({{"1", "1"}, {"1", "0"}}));
  CHECK(fib(0, 0) == frac("1", "1 - t - t^2"));
  std::vector<long> f{1, 1};
  for (int k = 2; k <= 12; ++k) f.push_back(f[k - 1] + f[k - 2]);
  GroupRingElement brute(CoeffRing::Integer);
  for (int k = 0; k <= 12; ++k) brute += GroupRingElement::monomial(GroupElement::theta_power(k), f[k]);
  CHECK(expand(fib(0, 0), 12).terms() == brute);
  CHECK(fib(0, 0).den() == el("1 - t - t^2"));
  CHECK_FALSE(fib(0, 0).den() == el("1 + t"));
  const auto zero = resolvent_rational(mat({{"0", "0"}, {"0", "0"}}));
  CHECK(zero(0, 0) == LocalizedElement(el("1")));
  CHECK(zero(1, 0).is_zero());
}

TEST_CASE("(1 - A t) resolvent_rational(A) = identity") {
  Rng rng(27);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const auto a = testgen::random_monomial_matrix(rng, n, 2);
    const auto prod = multiply(localize(one_minus_theta(a)), resolvent_rational(a));
    CHECK(prod == identity_matrix(n, LocalizedElement()));
  }
}

TEST_CASE("expand(resolvent_rational) equals resolvent_series") {
  Rng rng(28);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
    const auto a = testgen::random_monomial_matrix(rng, n, 2);
    CHECK(expand(resolvent_rational(a), 25) == resolvent_series(a, 25));
  }
}

TEST_CASE("inverse over the localization") {
  const auto m = localize(mat({{"1 - t", "t"}, {"0", "1"}}));
  CHECK(multiply(m, inverse(m)) == identity_matrix(2, LocalizedElement()));
  CHECK_THROWS_AS(inverse(localize(mat({{"2"}}))), NotInvertible);
}
