#pragma once

#include <string>
#include <vector>

#include "nvlab/group.hpp"
#include "nvlab/linalg.hpp"
#include "nvlab/series.hpp"

namespace nvlab {

/// A closed orbit with homology class g (xi(g) <= -1), index +-1 and multiplicity m.
struct ClosedOrbit {
  GroupElement g;
  int index = 1;
  int multiplicity = 1;

  friend bool operator==(const ClosedOrbit&, const ClosedOrbit&) = default;
};

/// One piece of the image of a cell: the cell is mapped over `target` with
/// degree `sign` and shifted by the H element `label`.
struct Branch {
  std::size_t target = 0;
  int sign = 1;
  GroupElement label;
};

struct Cell {
  std::string name;
  std::vector<Branch> branches;
};

/// A cellular self-map of a wedge of spheres, one cell set per degree, composed with t.
///
/// The induced matrix h_s has entry [target][source] = sum of sign * label over
/// the branches of `source` landing on `target`.
struct GraphSelfMap {
  GradedGroup group;
  std::vector<std::vector<Cell>> cells;

  /// Throws InvalidDatum on a branch with an unknown target, a sign other than
  /// +-1 or a label outside H.
  void check() const;
  std::vector<PolyMatrix> induced_matrices() const;
};

/// A G-fixed point of the k-th iterate: a closed walk of k branches in one degree.
struct GFixedPoint {
  std::size_t degree = 0;
  GroupElement g;     ///< t^k times the product of the labels
  int index = 1;      ///< (-1)^degree times the product of the signs
  int multiplicity = 1;  ///< k divided by the primitive period of the walk
  std::vector<std::size_t> cells;  ///< c_0, ..., c_{k-1}
};

/// Walk count above which enumeration is refused with Unsupported.
inline constexpr double kMaxFixedPoints = 4.0e6;

std::vector<GFixedPoint> enumerate_gfixed(const GraphSelfMap& m, int k);         ///< OpenMP over start branches
std::vector<GFixedPoint> enumerate_gfixed_serial(const GraphSelfMap& m, int k);  ///< reference

/// One orbit per quasiorbit (rotation class of walks) of every period 1..order.
std::vector<ClosedOrbit> orbit_census(const GraphSelfMap& m, int order);         ///< OpenMP over periods
std::vector<ClosedOrbit> orbit_census_serial(const GraphSelfMap& m, int order);  ///< reference

/// sum eps/m * g over the orbits, truncated at t^order. Throws InvalidOrbit on
/// xi(g) >= 0, an index other than +-1 or a multiplicity below 1.
NovikovSeries eta_from_orbits(const std::vector<ClosedOrbit>& orbits, int order);

/// sum_k 1/k sum_a ind(a) g(a) over the G-fixed points of the iterates k <= order.
NovikovSeries nu_from_gfixed(const GraphSelfMap& m, int order);

NovikovSeries zeta_from_eta(const NovikovSeries& eta);

/// sum_s (-1)^s sum_{k=1..order} Tr((t h_s)^k) / k.
NovikovSeries eta_from_traces(const std::vector<PolyMatrix>& h, int order);

/// prod_s det(1 - t h_s)^((-1)^(s+1)).
LocalizedElement zeta_rational(const std::vector<PolyMatrix>& h);

bool has_integer_coefficients(const NovikovSeries& s);

}  // namespace nvlab
