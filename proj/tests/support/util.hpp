#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "nvlab/group_ring.hpp"
#include "nvlab/linalg.hpp"

namespace nvlab::testutil {

inline GroupRingElement el(const std::string& text, std::size_t h_rank = 2, CoeffRing ring = CoeffRing::Integer) {
  return parse_group_ring_element(text, GradedGroup(h_rank), ring);
}

inline GroupRingElement q(const std::string& text, std::size_t h_rank = 2) {
  return el(text, h_rank, CoeffRing::Rational);
}

inline PolyMatrix mat(std::initializer_list<std::initializer_list<const char*>> rows, std::size_t h_rank = 2) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  PolyMatrix m(r, c, GroupRingElement(CoeffRing::Integer));
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* x : row) m(i, j++) = el(x, h_rank);
    ++i;
  }
  return m;
}

inline PolyMatrix empty(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, cols, GroupRingElement(CoeffRing::Integer));
}

inline LocalizedElement frac(const std::string& num, const std::string& den, std::size_t h_rank = 2) {
  return loc_normalize(el(num, h_rank), el(den, h_rank));
}

}  // namespace nvlab::testutil
