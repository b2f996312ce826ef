#include "nvlab/chain.hpp"

#include "nvlab/errors.hpp"

namespace nvlab {

IntegralHomology homology_int(const PolyComplex& c) {
  const std::size_t n = c.degrees();
  std::vector<SmithForm> forms;
  forms.reserve(n);
  for (std::size_t k = 0; k < n; ++k) forms.push_back(snf(c.boundary[k]));
  IntegralHomology out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t rank_in = k + 1 < n ? forms[k + 1].rank : 0;
    out.betti.push_back(c.rank(k) - forms[k].rank - rank_in);
    std::vector<mpz_class> torsion;
    if (k + 1 < n) {
      for (const auto& d : forms[k + 1].diagonal) {
        if (d > 1) torsion.push_back(d);
      }
    }
    out.torsion.push_back(std::move(torsion));
  }
  return out;
}

namespace {

template <typename T>
std::vector<std::size_t> betti_over_fractions(const BasedComplex<T>& c) {
  const std::size_t n = c.degrees();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t k = 1; k < n; ++k) ranks[k] = rank(c.boundary[k]);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(c.rank(k) - ranks[k] - ranks[k + 1]);
  return out;
}

}  // namespace

std::vector<std::size_t> novikov_betti(const PolyComplex& c) { return betti_over_fractions(c); }
std::vector<std::size_t> novikov_betti(const LocComplex& c) { return betti_over_fractions(c); }

PolyComplex extend_ring(const PolyComplex& c, RingLevel target) {
  if (target == RingLevel::Localized) {
    throw UnsupportedExtension("use localize() to extend to the localized ring");
  }
  for (std::size_t k = 0; k < c.degrees(); ++k) {
    const auto& d = c.boundary[k];
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        const bool ok = target == RingLevel::ZH ? d(i, j).in_h() : d(i, j).in_h_theta();
        if (!ok) {
          throw UnsupportedExtension("entry " + render(d(i, j)) + " of d_" + std::to_string(k) +
                                     " does not lie in the target ring");
        }
      }
    }
  }
  return c;
}

LocComplex localize(const PolyComplex& c) {
  LocComplex out;
  out.basis = c.basis;
  out.zero = LocalizedElement(zero_like(c.zero));
  for (const auto& d : c.boundary) out.boundary.push_back(localize(d));
  return out;
}

}  // namespace nvlab
