#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvlab/chain.hpp"
#include "nvlab/k1.hpp"
#include "nvlab/torsion.hpp"

namespace nvlab {

/// Morse complexes of a level surface (u) and of the cobordism (v) together
/// with the gluing data P, N and the homological gradient descent h.
///
/// Every vector is indexed by degree k = 0..degrees()-1. Shapes:
///   bdry1[k] : rank_u[k] -> rank_u[k-1]     bdryv[k] : rank_v[k] -> rank_v[k-1]
///   p[k]     : rank_v[k] -> rank_u[k-1]     n[k]     : rank_u[k] -> rank_v[k]
///   h[k]     : rank_u[k] -> rank_u[k]  (entries in ZH)
/// Degree-0 boundaries and p[0] have zero rows. Entries of bdry1, bdryv, p and n
/// lie in ZH[t]; p carries its factor t explicitly.
struct CyclicCobordismDatum {
  GradedGroup group;
  std::vector<std::vector<std::string>> labels_u;
  std::vector<std::vector<std::string>> labels_v;
  std::vector<PolyMatrix> bdry1, bdryv, p, n, h;

  std::size_t degrees() const noexcept { return labels_u.size(); }
  std::size_t rank_u(std::size_t k) const noexcept { return k < labels_u.size() ? labels_u[k].size() : 0; }
  std::size_t rank_v(std::size_t k) const noexcept { return k < labels_v.size() ? labels_v[k].size() : 0; }
  CoeffRing ring() const noexcept { return CoeffRing::Integer; }
};

/// A nonzero entry of D_k * D_{k+1} for the assembled boundary D, located by
/// block (1 = u_k, 2 = v_k, 3 = u_{k-1}) and entry within the block.
struct DatumViolation {
  std::size_t degree = 0;
  int block_row = 0;
  int block_col = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string value;

  std::string describe() const;
};

struct DatumReport {
  std::vector<std::string> shape_errors;
  std::vector<DatumViolation> violations;
  bool ok() const noexcept { return shape_errors.empty() && violations.empty(); }
};

DatumReport validate_datum(const CyclicCobordismDatum& d);
/// Throws InvalidDatum carrying every shape error and failing block.
void check_datum(const CyclicCobordismDatum& d);

/// E_k = C_k(u) (+) C_k(v) (+) C_{k-1}(u) with boundary
///   [[bdry1, P, 1 - t h], [0, bdryv, N], [0, 0, -bdry1]].
/// Basis labels: u and v labels as given, shifted copies as [[label]].
/// No validation; see check_datum.
PolyComplex assemble_E_unchecked(const CyclicCobordismDatum& d);
PolyComplex assemble_E(const CyclicCobordismDatum& d);

/// Datum with no v cells: P = N = 0. Throws NotAChainMap unless bdry1 h = h bdry1,
/// InvalidComplex unless bdry1 squares to zero.
CyclicCobordismDatum mapping_torus_datum(const std::vector<PolyMatrix>& h, const std::vector<PolyMatrix>& bdry1,
                                         const GradedGroup& group = GradedGroup(0));

struct ChangeOfBase {
  /// T_k on E_k: identity except the block C_k(v) -> C_{k-1}(u), which is -(1 - h t)^-1 P_k.
  std::vector<LocMatrix> t;
  /// T_{k-1}^-1 D_k T_k, with block pattern [[bdry1, 0, 1 - h t], [0, delta, N], [0, 0, Delta]].
  LocComplex transformed;
};

ChangeOfBase change_of_base(const CyclicCobordismDatum& d);

struct IncidenceEntry {
  std::size_t degree = 0;  ///< degree of r
  std::string r;
  std::string s;
  LocalizedElement value;
};

struct NovikovComplexResult {
  /// delta_k = bdryv_k - N_{k-1} (1 - h_{k-1} t)^-1 P_k over the localized ring.
  LocComplex complex;
  std::vector<IncidenceEntry> incidences;
  /// The opposite sign bdryv + N (1 - h t)^-1 P, kept for the report.
  bool plus_sign_squares_to_zero = false;
};

NovikovComplexResult novikov_complex(const CyclicCobordismDatum& d);

/// bdryv[s, r] - sum_{j=0..order} (N h^j P)[s, r] t^j, computed by iterating h
/// on the P column of r. Throws LabelNotFound unless r and s are labels of
/// adjacent degrees deg(r) = deg(s) + 1.
NovikovSeries incidence_series(const CyclicCobordismDatum& d, const std::string& r, const std::string& s,
                               int order);

struct InclusionTorsion {
  /// Torsion of the quotient E / C(v) = [[bdry1, 1 - h t], [0, Delta]] by the general algorithm.
  K1Class path_a;
  /// prod_k [det(1 - h_k t)]^((-1)^(k+1)).
  K1Class path_b;
  /// Torsion of the mapping cone of C(v) -> E after the change of base, when acyclic.
  std::optional<K1Class> cone_route;
};

InclusionTorsion torsion_of_inclusion(const CyclicCobordismDatum& d);

/// prod_k [det(1 - h_k t)]^((-1)^(k+1)) for per-degree square matrices over ZH.
K1Class determinant_product(const std::vector<PolyMatrix>& h);

}  // namespace nvlab
