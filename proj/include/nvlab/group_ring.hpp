#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvlab/group.hpp"

namespace nvlab {

/// Coefficient ring of a group-ring element: Z or Q.
enum class CoeffRing { Integer, Rational };

using Coefficient = mpq_class;

struct Term {
  GroupElement g;
  Coefficient c;

  friend bool operator==(const Term& a, const Term& b) { return a.g == b.g && a.c == b.c; }
};

/// A finite Z- or Q-linear combination of elements of G.
///
/// Terms are kept sorted by the lexicographic order on (theta, h) with no zero
/// coefficients, so structural equality is mathematical equality. Mixing the
/// two coefficient rings in one operation raises RingMismatch.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(CoeffRing ring) : ring_(ring) {}

  static GroupRingElement constant(const Coefficient& c, CoeffRing ring = CoeffRing::Integer);
  static GroupRingElement monomial(const GroupElement& g, const Coefficient& c = 1,
                                   CoeffRing ring = CoeffRing::Integer);
  /// Canonicalizes an arbitrary term list (sorts, merges, drops zeros).
  static GroupRingElement from_terms(std::vector<Term> terms, CoeffRing ring = CoeffRing::Integer);

  CoeffRing ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// A single term +-g.
  bool is_signed_monomial() const;

  /// Smallest / largest theta exponent present. Requires a nonzero element.
  int min_theta() const;
  int max_theta() const;

  /// Terms with theta exponent exactly k, as an element of ZH (times theta^k).
  GroupRingElement theta_slice(int k) const;
  /// The xi-maximal part: terms of minimal theta exponent.
  GroupRingElement lowest_theta_part() const { return theta_slice(min_theta()); }
  /// Terms with theta exponent <= max_theta.
  GroupRingElement truncated(int max_theta) const;

  const Term& leading_term() const;  ///< lexicographically largest term
  const Term& trailing_term() const;  ///< lexicographically smallest term

  Coefficient coefficient(const GroupElement& g) const;

  /// Multiplication by the monomial c*g.
  GroupRingElement shifted(const GroupElement& g, const Coefficient& c = 1) const;
  GroupRingElement scaled(const Coefficient& c) const;

  /// Same terms over another coefficient ring; converting to Integer requires integral coefficients.
  GroupRingElement as_ring(CoeffRing ring) const;

  bool in_h() const;         ///< every theta exponent is 0
  bool in_h_theta() const;   ///< every theta exponent is >= 0
  bool is_integer_constant() const;

  GroupRingElement operator-() const;
  GroupRingElement& operator+=(const GroupRingElement& other);
  GroupRingElement& operator-=(const GroupRingElement& other);
  GroupRingElement& operator*=(const GroupRingElement& other);

  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement sum_of_products(
      const std::vector<std::pair<const GroupRingElement*, const GroupRingElement*>>& pairs, const GroupRingElement& zero);

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  void check_same_ring(const GroupRingElement& other) const;

  CoeffRing ring_ = CoeffRing::Integer;
  std::vector<Term> terms_;
};

/// Sum of a_i * b_i, accumulated in one pass; `zero` fixes the coefficient ring.
GroupRingElement sum_of_products(const std::vector<std::pair<const GroupRingElement*, const GroupRingElement*>>& pairs,
                                 const GroupRingElement& zero);

enum class ArithOp { Add, Sub, Mul };

GroupRingElement gr_arith(const GroupRingElement& a, const GroupRingElement& b, ArithOp op);

/// Exact quotient a / b in the Laurent polynomial ring, or nullopt when b does not divide a.
std::optional<GroupRingElement> exact_divide(const GroupRingElement& a, const GroupRingElement& b);

/// True iff a == u*g*b for a sign u and some g in G. Returns the witness monomial through `witness`.
bool equal_up_to_signed_monomial(const GroupRingElement& a, const GroupRingElement& b,
                                 Term* witness = nullptr);

GroupRingElement one_like(const GroupRingElement& x);
GroupRingElement zero_like(const GroupRingElement& x);

/// Renders as `c * t^k * h1^a1 ... hn^an` terms joined by ` + ` / ` - `.
std::string render(const GroupRingElement& x);
std::string render(const GroupElement& g);
std::string render(const Coefficient& c);

/// Parses the rendering grammar. Factors may repeat; `*` separates factors.
/// Unknown variables or h-indices beyond the group rank raise ParseError; a
/// fractional coefficient with ring == Integer raises ParseError.
GroupRingElement parse_group_ring_element(std::string_view text, const GradedGroup& group,
                                          CoeffRing ring = CoeffRing::Integer);

}  // namespace nvlab
