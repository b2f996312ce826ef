#include "nvlab/torsion.hpp"

#include <algorithm>
#include <random>

#include "nvlab/errors.hpp"

namespace nvlab {

K1Class k1_of_quotient(const LocalizedElement& x) {
  if (x.is_zero()) throw NotAUnit("zero has no K1 class");
  return K1Class::of_fraction(x.num(), x.den());
}

K1Class torsion_acyclic(const LocComplex& c, std::optional<std::uint64_t> pivot_seed) {
  const ValidationReport report = validate(c);
  if (!report.ok()) throw InvalidComplex("torsion of an invalid complex");
  const auto betti = novikov_betti(c);
  for (std::size_t k = 0; k < betti.size(); ++k) {
    if (betti[k] != 0) {
      throw NotAcyclic("homology of rank " + std::to_string(betti[k]) + " in degree " + std::to_string(k));
    }
  }

  std::optional<std::mt19937_64> rng;
  if (pivot_seed) rng.emplace(*pivot_seed);

  K1Class tau;
  std::vector<std::size_t> used_rows;  // S_{k+1}, a subset of the basis of C_k
  for (std::size_t k = c.degrees(); k-- > 1;) {
    std::vector<std::size_t> columns;
    for (std::size_t j = 0; j < c.rank(k); ++j) {
      if (std::find(used_rows.begin(), used_rows.end(), j) == used_rows.end()) columns.push_back(j);
    }
    std::vector<std::size_t> all_rows(c.rank(k - 1));
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
    const LocMatrix restricted = c.boundary[k].select(all_rows, columns);
    std::vector<std::size_t> rows;
    if (!columns.empty()) rows = independent_rows(clear_row_denominators(restricted), rng ? &*rng : nullptr);
    if (!rows.empty()) {
      const LocalizedElement minor = det(c.boundary[k].select(rows, columns));
      if (minor.is_zero()) throw PivotFailure("selected minor of d_" + std::to_string(k) + " is singular");
      const K1Class factor = k1_of_quotient(minor);
      tau *= k % 2 == 0 ? factor : factor.inverse();
    }
    used_rows = std::move(rows);
  }
  if (c.degrees() > 0 && used_rows.size() != c.rank(0)) {
    throw PivotFailure("degree 0 is not exhausted by the image of d_1");
  }
  return tau;
}

K1Class torsion_acyclic(const PolyComplex& c, std::optional<std::uint64_t> pivot_seed) {
  return torsion_acyclic(localize(c), pivot_seed);
}

void check_cone_like(const ConeLikeDatum& datum) {
  const LocComplex& c = datum.base;
  const std::size_t n = c.degrees();
  if (datum.a.size() != n || datum.d_prime.size() != n) {
    throw InvalidComplex("cone-like datum needs one A_k and one d'_k per degree");
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = datum.a[k];
    if (a.rows() != c.rank(k) || a.cols() != c.rank(k)) throw DimensionMismatch("A_" + std::to_string(k) + " shape");
    if (rank(a) != c.rank(k)) throw NotInvertible("A_" + std::to_string(k) + " is singular");
    const auto& dp = datum.d_prime[k];
    const std::size_t rows = k == 0 ? 0 : c.rank(k - 1);
    if (dp.rows() != rows || dp.cols() != c.rank(k)) throw DimensionMismatch("d'_" + std::to_string(k) + " shape");
  }
  const LocComplex prime{c.basis, datum.d_prime, c.zero};
  if (!validate(prime).ok()) throw InvalidComplex("d' is not a boundary operator");
  for (std::size_t k = 1; k < n; ++k) {
    const LocMatrix lhs = multiply(c.boundary[k], datum.a[k]) + multiply(datum.a[k - 1], datum.d_prime[k]);
    if (!lhs.is_zero()) throw InvalidComplex("d_k A_k + A_{k-1} d'_k != 0 in degree " + std::to_string(k));
  }
}

LocComplex assemble_cone_like(const ConeLikeDatum& datum) {
  check_cone_like(datum);
  const LocComplex& c = datum.base;
  const std::size_t n = c.degrees();
  LocComplex e;
  e.zero = c.zero;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::string> labels = k < n ? c.basis[k] : std::vector<std::string>{};
    if (k >= 1) {
      for (const auto& s : c.basis[k - 1]) labels.push_back(s + "'");
    }
    e.basis.push_back(std::move(labels));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t rows = k == 0 ? 0 : e.basis[k - 1].size();
    LocMatrix d(rows, e.basis[k].size(), c.zero);
    if (k >= 1) {
      const std::size_t ck = c.rank(k), ck1 = c.rank(k - 1);
      if (k < n) d.set_block(0, 0, c.boundary[k]);
      d.set_block(0, ck, datum.a[k - 1]);
      if (k >= 2) d.set_block(ck1, ck, datum.d_prime[k - 1]);
    }
    e.boundary.push_back(std::move(d));
  }
  return make_complex(std::move(e.basis), std::move(e.boundary), e.zero);
}

K1Class cone_torsion_closed_form(const ConeLikeDatum& datum) {
  check_cone_like(datum);
  K1Class tau;
  for (std::size_t i = 0; i < datum.a.size(); ++i) {
    if (datum.a[i].rows() == 0) continue;
    const K1Class cls = k1_of_quotient(det(datum.a[i]));
    tau *= i % 2 == 1 ? cls : cls.inverse();
  }
  return tau;
}

K1Class torsion_of_map(const ChainMap<LocalizedElement>& f, std::optional<std::uint64_t> pivot_seed) {
  return torsion_acyclic(mapping_cone(f), pivot_seed);
}

}  // namespace nvlab
