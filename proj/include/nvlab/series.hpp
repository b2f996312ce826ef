#pragma once

#include <limits>
#include <string>

#include "nvlab/group_ring.hpp"
#include "nvlab/localized.hpp"

namespace nvlab {

/// Order value used for series that are exact (finite sums with nothing truncated).
inline constexpr int kExactOrder = std::numeric_limits<int>::max() / 4;

/// A theta-truncated element of the Novikov completion.
///
/// Every term with theta exponent <= order() is exact; terms above the order
/// are unknown and never stored.
class NovikovSeries {
 public:
  explicit NovikovSeries(CoeffRing ring = CoeffRing::Integer, int order = kExactOrder)
      : terms_(ring), order_(order) {}
  NovikovSeries(const GroupRingElement& polynomial, int order)
      : terms_(polynomial.truncated(order)), order_(order) {}

  const GroupRingElement& terms() const noexcept { return terms_; }
  int order() const noexcept { return order_; }
  CoeffRing ring() const noexcept { return terms_.ring(); }
  bool is_exact() const noexcept { return order_ >= kExactOrder; }
  bool is_zero() const noexcept { return terms_.is_zero(); }

  /// The ZH coefficient of theta^k (k <= order()).
  GroupRingElement coefficient(int k) const;
  NovikovSeries truncated(int order) const;
  NovikovSeries as_ring(CoeffRing ring) const { return {terms_.as_ring(ring), order_}; }

  /// True iff both series agree on every theta exponent <= order.
  bool equals_up_to(const NovikovSeries& other, int order) const;

  NovikovSeries operator-() const { return {-terms_, order_}; }
  friend NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b);
  friend NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b);
  friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
  NovikovSeries& operator+=(const NovikovSeries& b) { return *this = *this + b; }
  NovikovSeries& operator*=(const NovikovSeries& b) { return *this = *this * b; }

  friend bool operator==(const NovikovSeries& a, const NovikovSeries& b) {
    return a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  /// Lowest exponent that can carry a nonzero term.
  int valuation() const;

  GroupRingElement terms_;
  int order_;
};

NovikovSeries one_like(const NovikovSeries& x);
NovikovSeries zero_like(const NovikovSeries& x);

/// Expansion of num/den to theta order N, solving den * s = num degree by degree.
NovikovSeries expand(const LocalizedElement& x, int order);

enum class SeriesFunction { Exp, Log };

/// Truncated exp (constant term 0) or log (constant term 1) over Q.
NovikovSeries series_exp_log(const NovikovSeries& s, SeriesFunction fn);
NovikovSeries series_exp(const NovikovSeries& s);
NovikovSeries series_log(const NovikovSeries& s);

/// `terms + O(t^(order+1))`.
std::string render(const NovikovSeries& s);

}  // namespace nvlab
