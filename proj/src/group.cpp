#include "nvlab/group.hpp"

#include <string>

#include "nvlab/errors.hpp"

namespace nvlab {

GroupElement GroupElement::from_h(std::span<const int> exponents) {
  if (exponents.size() > kMaxHRank) {
    throw DimensionMismatch("h exponent vector longer than the supported rank " +
                            std::to_string(kMaxHRank));
  }
  GroupElement g;
  for (std::size_t i = 0; i < exponents.size(); ++i) g.h[i] = exponents[i];
  return g;
}

GroupElement pow(const GroupElement& g, int k) noexcept {
  GroupElement out;
  out.theta = g.theta * k;
  for (std::size_t i = 0; i < kMaxHRank; ++i) out.h[i] = g.h[i] * k;
  return out;
}

GradedGroup::GradedGroup(std::size_t h_rank) : h_rank_(h_rank) {
  if (h_rank > kMaxHRank) {
    throw DimensionMismatch("h_rank " + std::to_string(h_rank) + " exceeds the supported maximum " +
                            std::to_string(kMaxHRank));
  }
}

bool GradedGroup::contains(const GroupElement& g) const noexcept {
  for (std::size_t i = h_rank_; i < kMaxHRank; ++i) {
    if (g.h[i] != 0) return false;
  }
  return true;
}

}  // namespace nvlab
