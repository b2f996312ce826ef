#pragma once

#include <string>

#include "nvlab/group_ring.hpp"
#include "nvlab/localized.hpp"

namespace nvlab {

/// A determinant class num/den in K1 modulo +-G.
///
/// Units of the localized ring enter through of_unit(). Torsions of complexes
/// over the localization are produced as quotients of minors, which are
/// nonzero elements of the fraction field; of_fraction() holds those without
/// requiring the individual factors to be units. Two classes are equal iff
/// num1*den2 = +-g*num2*den1 for some g in G.
class K1Class {
 public:
  K1Class() : num_(GroupRingElement::constant(1)), den_(GroupRingElement::constant(1)) {}

  static K1Class of_unit(const LocalizedElement& u);  ///< throws NotAUnit
  static K1Class of_fraction(const GroupRingElement& num, const GroupRingElement& den);

  const GroupRingElement& num() const noexcept { return num_; }
  const GroupRingElement& den() const noexcept { return den_; }

  K1Class inverse() const;
  K1Class pow(int exponent) const;
  bool is_identity() const;
  /// Both num and den are of the form +-g(1 + mu), i.e. the class is visibly that of a unit.
  bool is_evident_unit() const;

  friend K1Class operator*(const K1Class& a, const K1Class& b);
  K1Class& operator*=(const K1Class& b) { return *this = *this * b; }

 private:
  K1Class(GroupRingElement num, GroupRingElement den);

  GroupRingElement num_;
  GroupRingElement den_;
};

K1Class k1_of_unit(const LocalizedElement& u);
K1Class k1_mul(const K1Class& a, const K1Class& b);
bool k1_eq(const K1Class& a, const K1Class& b);

/// `[num]` or `[num] * [den]^-1`.
std::string render(const K1Class& k);

}  // namespace nvlab
