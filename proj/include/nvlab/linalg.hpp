#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "nvlab/group_ring.hpp"
#include "nvlab/localized.hpp"
#include "nvlab/matrix.hpp"
#include "nvlab/parallel.hpp"
#include "nvlab/series.hpp"

namespace nvlab {

using PolyMatrix = Matrix<GroupRingElement>;
using LocMatrix = Matrix<LocalizedElement>;
using SeriesMatrix = Matrix<NovikovSeries>;

/// OpenMP matrix product, one task per output entry. Agrees exactly with multiply_serial.
template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) return multiply_serial(a, b);  // reports the shape error
  Matrix<T> out(a.rows(), b.cols(), a.zero());
  const std::size_t cols = b.cols();
  parallel_for(a.rows() * cols, [&](std::size_t idx) {
    const std::size_t i = idx / cols, j = idx % cols;
    out(i, j) = entry_product(a, b, i, j);
  });
  return out;
}

/// Fraction-free (Bareiss) determinant over the Laurent polynomial ring.
GroupRingElement det(const PolyMatrix& m);
/// Determinant over the localization: rows are cleared to a common denominator first.
LocalizedElement det(const LocMatrix& m);

/// Multiplies each row by the product of its denominators. `row_multipliers`
/// receives the per-row factors (all in S_xi).
PolyMatrix clear_row_denominators(const LocMatrix& m,
                                  std::vector<GroupRingElement>* row_multipliers = nullptr);

/// Rank over the field of fractions.
std::size_t rank(const PolyMatrix& m);
std::size_t rank(const LocMatrix& m);

/// Row indices S with |S| = cols() such that m[S, :] is nonsingular over the
/// field of fractions. Pivot rows are chosen column by column; with `rng`
/// the choice among admissible rows is random. Throws PivotFailure when the
/// columns are dependent.
std::vector<std::size_t> independent_rows(const PolyMatrix& m, std::mt19937_64* rng = nullptr);

struct SmithForm {
  std::vector<mpz_class> diagonal;  ///< nonzero invariant factors d1 | d2 | ...
  std::size_t rank = 0;
};

/// Smith normal form of a matrix whose entries are integer constants.
SmithForm snf(const PolyMatrix& m);

PolyMatrix adjugate(const PolyMatrix& m);         ///< OpenMP over cofactors
PolyMatrix adjugate_serial(const PolyMatrix& m);  ///< reference

/// sum_{k=0..order} A^k t^k for A over ZH.
SeriesMatrix resolvent_series(const PolyMatrix& a, int order);
SeriesMatrix resolvent_series_serial(const PolyMatrix& a, int order);

/// adj(1 - At) / det(1 - At), every entry with denominator det(1 - At).
LocMatrix resolvent_rational(const PolyMatrix& a);

/// Entrywise expansion to the given theta order.
SeriesMatrix expand(const LocMatrix& m, int order);

LocMatrix localize(const PolyMatrix& m);

/// Inverse over the localization; throws NotInvertible unless det is a unit there.
LocMatrix inverse(const LocMatrix& m);

/// 1 - t*A for a square A.
PolyMatrix one_minus_theta(const PolyMatrix& a);

}  // namespace nvlab
