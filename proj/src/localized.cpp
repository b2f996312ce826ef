#include "nvlab/localized.hpp"

#include "nvlab/errors.hpp"

namespace nvlab {

bool in_s_xi(const GroupRingElement& x) {
  if (x.is_zero()) return false;
  const GroupRingElement low = x.lowest_theta_part();
  return low.is_one() && x.min_theta() == 0;
}

LocalizedElement::LocalizedElement(GroupRingElement num)
    : num_(std::move(num)), den_(GroupRingElement::constant(1, num_.ring())) {}

LocalizedElement LocalizedElement::normalize(GroupRingElement num, GroupRingElement den) {
  if (num.ring() != den.ring()) throw RingMismatch("localized element mixes coefficient rings");
  if (den.is_zero()) throw NotLocalizable("zero denominator");
  const GroupRingElement top = den.lowest_theta_part();
  if (!top.is_monomial()) {
    throw NotLocalizable("denominator " + render(den) + " has a non-monomial xi-maximal part " +
                         render(top));
  }
  const Term& unit = top.terms().front();
  const bool integer = den.ring() == CoeffRing::Integer;
  if (integer && unit.c != 1 && unit.c != -1) {
    throw NotLocalizable("xi-maximal part " + render(top) + " of " + render(den) +
                         " is not a unit +-g");
  }
  const Coefficient inv = 1 / unit.c;
  const GroupElement ginv = unit.g.inverse();
  return LocalizedElement(num.shifted(ginv, inv), den.shifted(ginv, inv), 0);
}

LocalizedElement loc_normalize(GroupRingElement num, GroupRingElement den) {
  return LocalizedElement::normalize(std::move(num), std::move(den));
}

bool LocalizedElement::is_unit() const {
  if (num_.is_zero()) return false;
  const GroupRingElement top = num_.lowest_theta_part();
  if (!top.is_monomial()) return false;
  if (ring() == CoeffRing::Rational) return true;
  return top.is_signed_monomial();
}

LocalizedElement LocalizedElement::inverse() const {
  if (!is_unit()) throw NotAUnit(render(*this) + " is not a unit of the localized ring");
  return normalize(den_, num_);
}

LocalizedElement LocalizedElement::operator-() const { return LocalizedElement(-num_, den_, 0); }

LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.den_ == b.den_) return LocalizedElement(a.num_ + b.num_, a.den_, 0);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return LocalizedElement(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, 0);
}

LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) { return a + (-b); }

LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.ring() != b.ring()) throw RingMismatch("localized product mixes coefficient rings");
  if (a.is_zero() || b.is_zero()) return LocalizedElement(GroupRingElement(a.ring()));
  if (a.den_.is_one()) return LocalizedElement(a.num_ * b.num_, b.den_, 0);
  if (b.den_.is_one()) return LocalizedElement(a.num_ * b.num_, a.den_, 0);
  return LocalizedElement(a.num_ * b.num_, a.den_ * b.den_, 0);
}

bool operator==(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.ring() != b.ring()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

LocalizedElement one_like(const LocalizedElement& x) {
  return LocalizedElement(GroupRingElement::constant(1, x.ring()));
}

LocalizedElement zero_like(const LocalizedElement& x) { return LocalizedElement(GroupRingElement(x.ring())); }

std::string render(const LocalizedElement& x) {
  if (x.den().is_one()) return render(x.num());
  return "(" + render(x.num()) + ") / (" + render(x.den()) + ")";
}

}  // namespace nvlab
