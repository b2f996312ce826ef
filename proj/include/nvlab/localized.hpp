#pragma once

#include <string>

#include "nvlab/group_ring.hpp"

namespace nvlab {

/// True iff x = 1 + mu with every term of mu strictly xi-negative (theta >= 1).
bool in_s_xi(const GroupRingElement& x);

/// An element num/den of the localization of ZG at S_xi.
///
/// The denominator is always of the form 1 + mu with mu strictly xi-negative.
/// No gcd reduction is attempted; equality is decided by cross-multiplication.
class LocalizedElement {
 public:
  LocalizedElement() : num_(), den_(GroupRingElement::constant(1)) {}
  explicit LocalizedElement(GroupRingElement num);

  /// Moves a monomial unit out of `den` and checks den in S_xi. Throws NotLocalizable.
  static LocalizedElement normalize(GroupRingElement num, GroupRingElement den);

  const GroupRingElement& num() const noexcept { return num_; }
  const GroupRingElement& den() const noexcept { return den_; }
  CoeffRing ring() const noexcept { return num_.ring(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Units of the localization: numerator of the form +-g(1 + mu).
  bool is_unit() const;
  LocalizedElement inverse() const;  ///< throws NotAUnit

  LocalizedElement operator-() const;
  friend LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b);
  friend LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b);
  friend LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b);
  LocalizedElement& operator+=(const LocalizedElement& b) { return *this = *this + b; }
  LocalizedElement& operator-=(const LocalizedElement& b) { return *this = *this - b; }
  LocalizedElement& operator*=(const LocalizedElement& b) { return *this = *this * b; }

  friend bool operator==(const LocalizedElement& a, const LocalizedElement& b);

 private:
  LocalizedElement(GroupRingElement num, GroupRingElement den, int)
      : num_(std::move(num)), den_(std::move(den)) {}

  GroupRingElement num_;
  GroupRingElement den_;
};

LocalizedElement loc_normalize(GroupRingElement num, GroupRingElement den);

LocalizedElement one_like(const LocalizedElement& x);
LocalizedElement zero_like(const LocalizedElement& x);

/// `num` when the denominator is 1, otherwise `(num) / (den)`.
std::string render(const LocalizedElement& x);

}  // namespace nvlab
