#pragma once

#include <string>
#include <vector>

#include "nvlab/linalg.hpp"

namespace nvlab {

/// A bounded free based chain complex C_0 <- C_1 <- ... <- C_n.
///
/// `boundary[k]` is the matrix of d_k : C_k -> C_{k-1} (rows indexed by the
/// basis of C_{k-1}); `boundary[0]` is 0 x rank(C_0).
template <typename T>
struct BasedComplex {
  std::vector<std::vector<std::string>> basis;
  std::vector<Matrix<T>> boundary;
  T zero{};

  std::size_t degrees() const noexcept { return basis.size(); }
  std::size_t rank(std::size_t k) const noexcept { return k < basis.size() ? basis[k].size() : 0; }
  int euler_characteristic() const {
    int chi = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<int>(rank(k));
    return chi;
  }
};

using PolyComplex = BasedComplex<GroupRingElement>;
using LocComplex = BasedComplex<LocalizedElement>;

/// One entry (row, col) of d_k * d_{k+1} that fails to vanish.
struct BoundaryViolation {
  std::size_t degree = 0;  ///< k in d_k * d_{k+1}
  std::size_t row = 0;
  std::size_t col = 0;
  std::string value;
};

struct ValidationReport {
  std::vector<std::string> shape_errors;
  std::vector<BoundaryViolation> violations;
  bool ok() const noexcept { return shape_errors.empty() && violations.empty(); }
};

template <typename T>
ValidationReport validate(const BasedComplex<T>& c) {
  ValidationReport report;
  if (c.boundary.size() != c.basis.size()) {
    report.shape_errors.push_back("expected " + std::to_string(c.basis.size()) + " boundary matrices, got " +
                                  std::to_string(c.boundary.size()));
    return report;
  }
  for (std::size_t k = 0; k < c.degrees(); ++k) {
    const auto& d = c.boundary[k];
    const std::size_t rows = k == 0 ? 0 : c.rank(k - 1);
    if (d.rows() != rows || d.cols() != c.rank(k)) {
      report.shape_errors.push_back("d_" + std::to_string(k) + " is " + std::to_string(d.rows()) + "x" +
                                    std::to_string(d.cols()) + ", expected " + std::to_string(rows) + "x" +
                                    std::to_string(c.rank(k)));
    }
  }
  if (!report.shape_errors.empty()) return report;
  for (std::size_t k = 1; k + 1 < c.degrees(); ++k) {
    const Matrix<T> dd = multiply(c.boundary[k], c.boundary[k + 1]);
    for (std::size_t i = 0; i < dd.rows(); ++i) {
      for (std::size_t j = 0; j < dd.cols(); ++j) {
        if (!dd(i, j).is_zero()) report.violations.push_back({k, i, j, render(dd(i, j))});
      }
    }
  }
  return report;
}

/// Builds a complex and throws InvalidComplex unless validate() passes.
template <typename T>
BasedComplex<T> make_complex(std::vector<std::vector<std::string>> basis, std::vector<Matrix<T>> boundary,
                             const T& zero) {
  BasedComplex<T> c{std::move(basis), std::move(boundary), zero};
  const ValidationReport report = validate(c);
  if (!report.ok()) {
    std::string what = "invalid chain complex";
    for (const auto& e : report.shape_errors) what += "; " + e;
    for (const auto& v : report.violations) {
      what += "; d_" + std::to_string(v.degree) + "*d_" + std::to_string(v.degree + 1) + " != 0 at (" +
              std::to_string(v.row) + "," + std::to_string(v.col) + ")";
    }
    throw InvalidComplex(what);
  }
  return c;
}

/// f_k : source_k -> target_k commuting with the boundaries.
template <typename T>
struct ChainMap {
  BasedComplex<T> source;
  BasedComplex<T> target;
  std::vector<Matrix<T>> maps;
};

/// Checks shapes and d^target f = f d^source; throws NotAChainMap.
template <typename T>
void check_chain_map(const ChainMap<T>& f) {
  const std::size_t n = std::max(f.source.degrees(), f.target.degrees());
  if (f.maps.size() != n) throw NotAChainMap("chain map needs one matrix per degree");
  for (std::size_t k = 0; k < n; ++k) {
    if (f.maps[k].rows() != f.target.rank(k) || f.maps[k].cols() != f.source.rank(k)) {
      throw NotAChainMap("f_" + std::to_string(k) + " has the wrong shape");
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const bool has_t = k < f.target.degrees();
    const bool has_s = k < f.source.degrees();
    Matrix<T> lhs(f.target.rank(k - 1), f.source.rank(k), f.target.zero);
    Matrix<T> rhs = lhs;
    if (has_t) lhs = multiply(f.target.boundary[k], f.maps[k]);
    if (has_s) rhs = multiply(f.maps[k - 1], f.source.boundary[k]);
    if (!(lhs == rhs)) throw NotAChainMap("d f != f d in degree " + std::to_string(k));
  }
}

/// Cone(f)_k = target_k (+) source_{k-1} with boundary [[d^T, f], [0, -d^S]].
template <typename T>
BasedComplex<T> mapping_cone(const ChainMap<T>& f) {
  check_chain_map(f);
  const std::size_t n = std::max(f.source.degrees() + 1, f.target.degrees());
  const T& zero = f.target.zero;
  BasedComplex<T> cone;
  cone.zero = zero;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::string> labels = k < f.target.degrees() ? f.target.basis[k] : std::vector<std::string>{};
    if (k >= 1 && k - 1 < f.source.degrees()) {
      for (const auto& s : f.source.basis[k - 1]) labels.push_back(s + "'");
    }
    cone.basis.push_back(std::move(labels));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rows = k == 0 ? 0 : cone.basis[k - 1].size();
    Matrix<T> d(rows, cone.basis[k].size(), zero);
    if (k >= 1) {
      const std::size_t tk = f.target.rank(k), tk1 = f.target.rank(k - 1);
      if (k < f.target.degrees()) d.set_block(0, 0, f.target.boundary[k]);
      // f_{k-1} : source_{k-1} -> target_{k-1}
      if (k - 1 < f.maps.size()) d.set_block(0, tk, f.maps[k - 1]);
      if (k >= 2 && k - 1 < f.source.degrees()) d.set_block(tk1, tk, -f.source.boundary[k - 1]);
    }
    cone.boundary.push_back(std::move(d));
  }
  return cone;
}

/// Per-degree Betti numbers and torsion coefficients of a complex over Z.
struct IntegralHomology {
  std::vector<std::size_t> betti;
  std::vector<std::vector<mpz_class>> torsion;
};

IntegralHomology homology_int(const PolyComplex& c);

/// Ranks of the homology over the field of fractions of the entry ring.
std::vector<std::size_t> novikov_betti(const PolyComplex& c);
std::vector<std::size_t> novikov_betti(const LocComplex& c);

enum class RingLevel { ZH, ZHTheta, Localized };

/// Reinterprets a complex over a larger ring of the tower ZH < ZH[t] < localization.
/// Throws UnsupportedExtension when an entry is not in the stated target.
PolyComplex extend_ring(const PolyComplex& c, RingLevel target);
LocComplex localize(const PolyComplex& c);

}  // namespace nvlab
