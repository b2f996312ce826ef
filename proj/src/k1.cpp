#include "nvlab/k1.hpp"

#include "nvlab/errors.hpp"

namespace nvlab {
namespace {

/// Divides out the monomial +-g of the lowest term so that it becomes +1.
GroupRingElement strip_leading_unit(const GroupRingElement& x) {
  const Term& lead = x.terms().front();
  const Coefficient sign = lead.c < 0 ? -1 : 1;
  return x.shifted(lead.g.inverse(), sign);
}

bool has_unit_form(const GroupRingElement& x) {
  if (x.is_zero()) return false;
  return x.lowest_theta_part().is_signed_monomial();
}

}  // namespace

K1Class::K1Class(GroupRingElement num, GroupRingElement den) {
  if (num.is_zero() || den.is_zero()) throw NotAUnit("zero has no K1 class");
  if (num.ring() != CoeffRing::Integer || den.ring() != CoeffRing::Integer) {
    throw RingMismatch("K1 classes are taken over the integral group ring");
  }
  num_ = strip_leading_unit(num);
  den_ = strip_leading_unit(den);
  if (num_ == den_) {
    num_ = GroupRingElement::constant(1);
    den_ = GroupRingElement::constant(1);
  }
}

K1Class K1Class::of_unit(const LocalizedElement& u) {
  if (!u.is_unit() || u.ring() != CoeffRing::Integer) {
    throw NotAUnit(render(u) + " is not a unit of the localized integral group ring");
  }
  return K1Class(u.num(), u.den());
}

K1Class K1Class::of_fraction(const GroupRingElement& num, const GroupRingElement& den) {
  return K1Class(num, den);
}

K1Class K1Class::inverse() const { return K1Class(den_, num_); }

K1Class K1Class::pow(int exponent) const {
  K1Class base = exponent >= 0 ? *this : inverse();
  K1Class out;
  for (int i = 0; i < (exponent >= 0 ? exponent : -exponent); ++i) out *= base;
  return out;
}

bool K1Class::is_identity() const { return k1_eq(*this, K1Class()); }

bool K1Class::is_evident_unit() const { return has_unit_form(num_) && has_unit_form(den_); }

K1Class operator*(const K1Class& a, const K1Class& b) {
  if (a.den_ == b.num_) return K1Class(a.num_, b.den_);
  if (b.den_ == a.num_) return K1Class(b.num_, a.den_);
  return K1Class(a.num_ * b.num_, a.den_ * b.den_);
}

K1Class k1_of_unit(const LocalizedElement& u) { return K1Class::of_unit(u); }

K1Class k1_mul(const K1Class& a, const K1Class& b) { return a * b; }

bool k1_eq(const K1Class& a, const K1Class& b) {
  if (a.num() == b.num() && a.den() == b.den()) return true;
  return equal_up_to_signed_monomial(a.num() * b.den(), b.num() * a.den());
}

std::string render(const K1Class& k) {
  if (k.den().is_one()) return "[" + render(k.num()) + "]";
  if (k.num().is_one()) return "[" + render(k.den()) + "]^-1";
  return "[" + render(k.num()) + "] * [" + render(k.den()) + "]^-1";
}

}  // namespace nvlab
