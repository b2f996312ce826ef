#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <span>

namespace nvlab {

/// Largest supported rank of H = ker(xi).
inline constexpr std::size_t kMaxHRank = 6;

/// An element of G = H (+) Z*theta, written multiplicatively.
///
/// `theta` is the exponent of theta; xi(g) = -theta. The components of `h`
/// beyond the rank of the ambient GradedGroup are always zero.
struct GroupElement {
  int theta = 0;
  std::array<int, kMaxHRank> h{};

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  GroupElement operator*(const GroupElement& other) const noexcept {
    GroupElement out;
    out.theta = theta + other.theta;
    for (std::size_t i = 0; i < kMaxHRank; ++i) out.h[i] = h[i] + other.h[i];
    return out;
  }

  GroupElement inverse() const noexcept {
    GroupElement out;
    out.theta = -theta;
    for (std::size_t i = 0; i < kMaxHRank; ++i) out.h[i] = -h[i];
    return out;
  }

  int xi() const noexcept { return -theta; }

  bool is_identity() const noexcept { return *this == GroupElement{}; }
  bool in_h() const noexcept { return theta == 0; }

  static GroupElement theta_power(int k) noexcept {
    GroupElement g;
    g.theta = k;
    return g;
  }

  /// Builds an element of H from its exponent vector.
  static GroupElement from_h(std::span<const int> exponents);
};

GroupElement pow(const GroupElement& g, int k) noexcept;

/// The split presentation G = H (+) Z*theta with xi(theta) = -1 and xi|H = 0.
class GradedGroup {
 public:
  explicit GradedGroup(std::size_t h_rank = 0);

  std::size_t h_rank() const noexcept { return h_rank_; }

  /// True when every H component beyond the rank is zero.
  bool contains(const GroupElement& g) const noexcept;

  GroupElement theta() const noexcept { return GroupElement::theta_power(1); }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

 private:
  std::size_t h_rank_ = 0;
};

}  // namespace nvlab
