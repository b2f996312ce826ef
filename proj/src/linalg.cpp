#include "nvlab/linalg.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <utility>

#include "nvlab/errors.hpp"

namespace nvlab {

int max_threads() noexcept { return omp_get_max_threads(); }

namespace {

GroupRingElement divide_exactly(const GroupRingElement& a, const GroupRingElement& b) {
  auto q = exact_divide(a, b);
  if (!q) throw Error("fraction-free elimination: inexact division of " + render(a) + " by " + render(b));
  return std::move(*q);
}

GroupRingElement ring_zero(const PolyMatrix& m) { return zero_like(m.zero()); }

/// One Bareiss elimination step on rows below `r` using pivot (r, c).
void bareiss_step(PolyMatrix& m, std::size_t r, std::size_t c, const GroupRingElement& prev) {
  const GroupRingElement& pivot = m(r, c);
  for (std::size_t i = r + 1; i < m.rows(); ++i) {
    const GroupRingElement factor = m(i, c);
    for (std::size_t j = c + 1; j < m.cols(); ++j) {
      GroupRingElement value = pivot * m(i, j);
      if (!factor.is_zero() && !m(r, j).is_zero()) value -= factor * m(r, j);
      m(i, j) = prev.is_one() ? std::move(value) : divide_exactly(value, prev);
    }
    m(i, c) = ring_zero(m);
  }
}

void swap_rows(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

GroupRingElement det(const PolyMatrix& input) {
  if (!input.is_square()) {
    throw NonSquare("determinant of a " + std::to_string(input.rows()) + "x" + std::to_string(input.cols()) +
                    " matrix");
  }
  const std::size_t n = input.rows();
  if (n == 0) return one_like(input.zero());
  PolyMatrix m = input;
  GroupRingElement prev = one_like(input.zero());
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return ring_zero(m);
    if (p != k) {
      swap_rows(m, p, k);
      sign = -sign;
    }
    bareiss_step(m, k, k, prev);
    prev = m(k, k);
  }
  GroupRingElement out = m(n - 1, n - 1);
  return sign > 0 ? out : -out;
}

PolyMatrix clear_row_denominators(const LocMatrix& m, std::vector<GroupRingElement>* row_multipliers) {
  const GroupRingElement zero = zero_like(m.zero().num());
  PolyMatrix out(m.rows(), m.cols(), zero);
  if (row_multipliers) row_multipliers->assign(m.rows(), one_like(zero));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    // distinct denominators of the row, structurally
    std::vector<GroupRingElement> dens;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& d = m(i, j).den();
      if (m(i, j).is_zero() || d.is_one()) continue;
      if (std::find(dens.begin(), dens.end(), d) == dens.end()) dens.push_back(d);
    }
    GroupRingElement multiplier = one_like(zero);
    for (const auto& d : dens) multiplier *= d;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& x = m(i, j);
      if (x.is_zero()) continue;
      GroupRingElement value = x.num();
      for (const auto& d : dens) {
        if (!(d == x.den())) value *= d;
      }
      out(i, j) = std::move(value);
    }
    if (row_multipliers) (*row_multipliers)[i] = std::move(multiplier);
  }
  return out;
}

LocalizedElement det(const LocMatrix& m) {
  if (!m.is_square()) throw NonSquare("determinant of a non-square matrix");
  std::vector<GroupRingElement> multipliers;
  const PolyMatrix cleared = clear_row_denominators(m, &multipliers);
  GroupRingElement den = one_like(cleared.zero());
  for (const auto& x : multipliers) den *= x;
  return LocalizedElement::normalize(det(cleared), den);
}

std::size_t rank(const PolyMatrix& input) {
  PolyMatrix m = input;
  GroupRingElement prev = one_like(input.zero());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, p, r);
    bareiss_step(m, r, c, prev);
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::size_t rank(const LocMatrix& m) { return rank(clear_row_denominators(m)); }

std::vector<std::size_t> independent_rows(const PolyMatrix& input, std::mt19937_64* rng) {
  PolyMatrix m = input;
  std::vector<std::size_t> origin(m.rows());
  std::iota(origin.begin(), origin.end(), 0);
  GroupRingElement prev = one_like(input.zero());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::vector<std::size_t> candidates;
    for (std::size_t p = c; p < m.rows(); ++p) {
      if (!m(p, c).is_zero()) candidates.push_back(p);
    }
    if (candidates.empty()) {
      throw PivotFailure("column " + std::to_string(c) + " has no admissible pivot row");
    }
    std::size_t p = candidates.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      p = candidates[pick(*rng)];
    }
    swap_rows(m, p, c);
    std::swap(origin[p], origin[c]);
    bareiss_step(m, c, c, prev);
    prev = m(c, c);
  }
  std::vector<std::size_t> rows(origin.begin(), origin.begin() + static_cast<std::ptrdiff_t>(m.cols()));
  std::sort(rows.begin(), rows.end());
  return rows;
}

SmithForm snf(const PolyMatrix& input) {
  const std::size_t rows = input.rows(), cols = input.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& x = input(i, j);
      if (!x.is_integer_constant()) throw Unsupported("Smith normal form needs integer entries, got " + render(x));
      if (!x.is_zero()) a[i][j] = x.terms().front().c.get_num();
    }
  }

  SmithForm out;
  const std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == rows) break;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] == 0) break;
    out.diagonal.push_back(abs(a[t][t]));
  }
  out.rank = out.diagonal.size();
  return out;
}

namespace {

GroupRingElement cofactor(const PolyMatrix& m, std::size_t i, std::size_t j) {
  // adj(M)_{ij} = (-1)^{i+j} det(M without row j and column i)
  const std::size_t n = m.rows();
  std::vector<std::size_t> keep_rows, keep_cols;
  for (std::size_t r = 0; r < n; ++r) {
    if (r != j) keep_rows.push_back(r);
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (c != i) keep_cols.push_back(c);
  }
  GroupRingElement minor = det(m.select(keep_rows, keep_cols));
  return (i + j) % 2 == 0 ? minor : -minor;
}

void check_square(const PolyMatrix& m, const char* what) {
  if (!m.is_square()) throw NonSquare(std::string(what) + " needs a square matrix");
}

}  // namespace

PolyMatrix adjugate_serial(const PolyMatrix& m) {
  check_square(m, "adjugate");
  const std::size_t n = m.rows();
  if (n == 1) return identity_matrix(1, m.zero());
  PolyMatrix out(n, n, m.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = cofactor(m, i, j);
  }
  return out;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  check_square(m, "adjugate");
  const std::size_t n = m.rows();
  if (n == 1) return identity_matrix(1, m.zero());
  PolyMatrix out(n, n, m.zero());
  parallel_for(n * n, [&](std::size_t idx) { out(idx / n, idx % n) = cofactor(m, idx / n, idx % n); });
  return out;
}

PolyMatrix one_minus_theta(const PolyMatrix& a) {
  check_square(a, "1 - tA");
  PolyMatrix out = identity_matrix(a.rows(), a.zero());
  const GroupElement t = GroupElement::theta_power(1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= a(i, j).shifted(t);
  }
  return out;
}

namespace {

template <typename Mul>
SeriesMatrix resolvent_series_impl(const PolyMatrix& a, int order, Mul mul) {
  check_square(a, "resolvent");
  if (order < 0) throw SeriesDomainError("negative truncation order");
  const std::size_t n = a.rows();
  const CoeffRing ring = a.zero().ring();
  PolyMatrix power = identity_matrix(n, a.zero());
  // Powers occupy disjoint theta degrees, so terms are collected and each entry is built once.
  std::vector<std::vector<Term>> collected(n * n);
  for (std::size_t i = 0; i < n; ++i) collected[i * n + i].push_back({GroupElement{}, 1});
  for (int k = 1; k <= order; ++k) {
    power = mul(power, a);
    if (power.is_zero()) break;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& t : power(i, j).terms()) {
          GroupElement g = t.g;
          g.theta += k;
          collected[i * n + j].push_back({g, t.c});
        }
      }
    }
  }
  SeriesMatrix out(n, n, NovikovSeries(ring, order));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = NovikovSeries(GroupRingElement::from_terms(std::move(collected[i * n + j]), ring), order);
    }
  }
  return out;
}

}  // namespace

SeriesMatrix resolvent_series(const PolyMatrix& a, int order) {
  return resolvent_series_impl(a, order, [](const PolyMatrix& x, const PolyMatrix& y) { return multiply(x, y); });
}

SeriesMatrix resolvent_series_serial(const PolyMatrix& a, int order) {
  return resolvent_series_impl(a, order,
                               [](const PolyMatrix& x, const PolyMatrix& y) { return multiply_serial(x, y); });
}

LocMatrix resolvent_rational(const PolyMatrix& a) {
  check_square(a, "resolvent");
  const PolyMatrix m = one_minus_theta(a);
  const GroupRingElement d = det(m);
  const PolyMatrix adj = adjugate(m);
  const LocalizedElement zero{zero_like(a.zero())};
  LocMatrix out(a.rows(), a.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = LocalizedElement::normalize(adj(i, j), d);
  }
  return out;
}

SeriesMatrix expand(const LocMatrix& m, int order) {
  const NovikovSeries zero(m.zero().ring(), order);
  return map_entries(m, zero, [order](const LocalizedElement& x) { return expand(x, order); });
}

LocMatrix localize(const PolyMatrix& m) {
  const LocalizedElement zero{zero_like(m.zero())};
  return map_entries(m, zero, [](const GroupRingElement& x) { return LocalizedElement(x); });
}

LocMatrix inverse(const LocMatrix& m) {
  if (!m.is_square()) throw NonSquare("inverse of a non-square matrix");
  std::vector<GroupRingElement> multipliers;
  const PolyMatrix cleared = clear_row_denominators(m, &multipliers);
  const GroupRingElement d = det(cleared);
  if (d.is_zero() || !d.lowest_theta_part().is_signed_monomial()) {
    throw NotInvertible("determinant " + render(d) + " is not a unit of the localized ring");
  }
  // (D M)^{-1} = adj(DM)/det(DM), so M^{-1} = adj(DM) D / det(DM)
  const PolyMatrix adj = adjugate(cleared);
  LocMatrix out(m.rows(), m.cols(), m.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = LocalizedElement::normalize(adj(i, j) * multipliers[j], d);
    }
  }
  return out;
}

}  // namespace nvlab
