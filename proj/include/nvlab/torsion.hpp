#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nvlab/chain.hpp"
#include "nvlab/k1.hpp"

namespace nvlab {

/// Torsion of an acyclic based complex in K1 modulo +-G.
///
/// From the top degree down, pick rows S_k of d_k against the columns not
/// already used as rows of d_{k+1}; the torsion is prod_k det(d_k[S_k, .])^((-1)^k).
/// With a seed, pivot rows are chosen at random among the admissible ones.
/// Throws NotAcyclic when some homology rank over the fraction field is nonzero.
K1Class torsion_acyclic(const LocComplex& c, std::optional<std::uint64_t> pivot_seed = std::nullopt);
K1Class torsion_acyclic(const PolyComplex& c, std::optional<std::uint64_t> pivot_seed = std::nullopt);

/// E_k = C_k (+) C_{k-1} with boundary [[d_k, A_{k-1}], [0, d'_{k-1}]].
///
/// `a[k]` : C_k -> C_k is invertible and `d_prime[k]` : C_k -> C_{k-1}; index k
/// runs over the degrees of `base`.
struct ConeLikeDatum {
  LocComplex base;
  std::vector<LocMatrix> a;
  std::vector<LocMatrix> d_prime;
};

/// Checks d' * d' = 0, d_k A_k + A_{k-1} d'_k = 0 and invertibility of every A_k.
/// Throws InvalidComplex or NotInvertible.
void check_cone_like(const ConeLikeDatum& datum);

LocComplex assemble_cone_like(const ConeLikeDatum& datum);

/// prod_i [det A_i]^((-1)^(i+1)).
K1Class cone_torsion_closed_form(const ConeLikeDatum& datum);

/// Torsion of the mapping cone of f.
K1Class torsion_of_map(const ChainMap<LocalizedElement>& f,
                       std::optional<std::uint64_t> pivot_seed = std::nullopt);

/// Class of a nonzero element of the fraction field given as num/den.
K1Class k1_of_quotient(const LocalizedElement& x);

}  // namespace nvlab
