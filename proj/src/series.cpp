#include "nvlab/series.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "nvlab/errors.hpp"

namespace nvlab {
namespace {

int clamp_order(long long order) {
  return static_cast<int>(std::min<long long>(order, kExactOrder));
}

bool word_sized(const GroupRingElement& x) {
  for (const auto& t : x.terms()) {
    if (t.c.get_den() != 1 || !t.c.get_num().fits_slong_p()) return false;
  }
  return true;
}

/// One theta slice held densely over its box of H exponents.
struct DenseSlice {
  std::array<int, kMaxHRank> lo{};
  std::array<int, kMaxHRank> extent{};
  std::array<long, kMaxHRank> stride{};
  std::vector<long> values;

  void allocate() {
    long volume = 1;
    for (std::size_t d = kMaxHRank; d-- > 0;) {
      stride[d] = volume;
      volume *= extent[d];
    }
    values.assign(static_cast<std::size_t>(volume), 0);
  }
  long index(const std::array<int, kMaxHRank>& h) const {
    long i = 0;
    for (std::size_t d = 0; d < kMaxHRank; ++d) i += (h[d] - lo[d]) * stride[d];
    return i;
  }
  std::array<int, kMaxHRank> decode(long i) const {
    std::array<int, kMaxHRank> h{};
    for (std::size_t d = 0; d < kMaxHRank; ++d) {
      h[d] = static_cast<int>(i / stride[d]) + lo[d];
      i %= stride[d];
    }
    return h;
  }
};

/// Expansion with machine-word coefficients; nullopt on overflow or an oversized box.
std::optional<std::vector<Term>> expand_word_sized(const GroupRingElement& num, const std::vector<GroupRingElement>& mu_slices,
                                                   int start, int order) {
  constexpr long kMaxVolume = 1L << 22;
  std::vector<DenseSlice> slices;
  slices.reserve(static_cast<std::size_t>(order - start + 1));
  for (int n = start; n <= order; ++n) {
    const GroupRingElement num_n = num.theta_slice(n);
    const int reach = std::min<int>(n - start, static_cast<int>(mu_slices.size()) - 1);
    std::array<int, kMaxHRank> lo{}, hi{};
    bool empty = true;
    auto include = [&](const std::array<int, kMaxHRank>& l, const std::array<int, kMaxHRank>& h) {
      for (std::size_t d = 0; d < kMaxHRank; ++d) {
        lo[d] = empty ? l[d] : std::min(lo[d], l[d]);
        hi[d] = empty ? h[d] : std::max(hi[d], h[d]);
      }
      empty = false;
    };
    for (const auto& t : num_n.terms()) include(t.g.h, t.g.h);
    for (int j = 1; j <= reach; ++j) {
      const auto& prev = slices[static_cast<std::size_t>(n - j - start)];
      if (prev.values.empty()) continue;
      for (const auto& t : mu_slices[static_cast<std::size_t>(j)].terms()) {
        std::array<int, kMaxHRank> l{}, h{};
        for (std::size_t d = 0; d < kMaxHRank; ++d) {
          l[d] = prev.lo[d] + t.g.h[d];
          h[d] = prev.lo[d] + prev.extent[d] - 1 + t.g.h[d];
        }
        include(l, h);
      }
    }
    DenseSlice s;
    if (!empty) {
      long volume = 1;
      for (std::size_t d = 0; d < kMaxHRank; ++d) {
        s.lo[d] = lo[d];
        s.extent[d] = hi[d] - lo[d] + 1;
        volume *= s.extent[d];
        if (volume > kMaxVolume) return std::nullopt;
      }
      s.allocate();
      for (const auto& t : num_n.terms()) s.values[static_cast<std::size_t>(s.index(t.g.h))] = t.c.get_num().get_si();
      for (int j = 1; j <= reach; ++j) {
        const auto& prev = slices[static_cast<std::size_t>(n - j - start)];
        if (prev.values.empty()) continue;
        std::vector<std::pair<long, long>> shifts;
        for (const auto& t : mu_slices[static_cast<std::size_t>(j)].terms()) {
          long shift = 0;
          for (std::size_t d = 0; d < kMaxHRank; ++d) shift += t.g.h[d] * s.stride[d];
          shifts.emplace_back(shift, t.c.get_num().get_si());
        }
        for (long i = 0; i < static_cast<long>(prev.values.size()); ++i) {
          const long pv = prev.values[static_cast<std::size_t>(i)];
          if (pv == 0) continue;
          const long base = s.index(prev.decode(i));
          for (const auto& [shift, mc] : shifts) {
            long c = 0;
            auto& slot = s.values[static_cast<std::size_t>(base + shift)];
            if (__builtin_mul_overflow(mc, pv, &c) || __builtin_sub_overflow(slot, c, &slot)) return std::nullopt;
          }
        }
      }
    }
    slices.push_back(std::move(s));
  }
  std::vector<Term> out;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const auto& s = slices[k];
    for (long i = 0; i < static_cast<long>(s.values.size()); ++i) {
      const long v = s.values[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      GroupElement g;
      g.theta = start + static_cast<int>(k);
      g.h = s.decode(i);
      out.push_back({g, Coefficient(v)});
    }
  }
  return out;
}

}  // namespace

int NovikovSeries::valuation() const {
  if (!terms_.is_zero()) return terms_.min_theta();
  return is_exact() ? kExactOrder : order_ + 1;
}

GroupRingElement NovikovSeries::coefficient(int k) const {
  if (k > order_) throw SeriesDomainError("coefficient beyond the truncation order");
  return terms_.theta_slice(k).shifted(GroupElement::theta_power(-k));
}

NovikovSeries NovikovSeries::truncated(int order) const {
  return {terms_, std::min(order, order_)};
}

bool NovikovSeries::equals_up_to(const NovikovSeries& other, int order) const {
  if (order > order_ || order > other.order_) return false;
  return terms_.truncated(order) == other.terms_.truncated(order);
}

NovikovSeries operator+(const NovikovSeries& a, const NovikovSeries& b) {
  const int order = std::min(a.order_, b.order_);
  return {(a.terms_ + b.terms_).truncated(order), order};
}

NovikovSeries operator-(const NovikovSeries& a, const NovikovSeries& b) {
  const int order = std::min(a.order_, b.order_);
  return {(a.terms_ - b.terms_).truncated(order), order};
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
  long long order;
  if (a.is_exact() && b.is_exact()) {
    order = kExactOrder;
  } else {
    order = std::min(static_cast<long long>(a.order_) + b.valuation(),
                     static_cast<long long>(b.order_) + a.valuation());
  }
  const int o = clamp_order(order);
  // Truncating the factors first keeps the product small.
  GroupRingElement lhs = a.terms_.truncated(o - std::min(b.valuation(), o));
  GroupRingElement rhs = b.terms_.truncated(o - std::min(a.valuation(), o));
  if (a.terms_.is_zero() || b.terms_.is_zero()) return NovikovSeries(a.ring(), o);
  return {(lhs * rhs).truncated(o), o};
}

NovikovSeries one_like(const NovikovSeries& x) {
  return {GroupRingElement::constant(1, x.ring()), kExactOrder};
}

NovikovSeries zero_like(const NovikovSeries& x) { return NovikovSeries(x.ring(), kExactOrder); }

NovikovSeries expand(const LocalizedElement& x, int order) {
  const GroupRingElement& num = x.num();
  if (num.is_zero() || num.min_theta() > order) return NovikovSeries(x.ring(), order);
  const GroupRingElement mu = x.den() - one_like(x.den());

  // mu has theta >= 1, so s_n = num_n - sum_{j>=1} mu_j s_{n-j}
  std::vector<GroupRingElement> mu_slices;
  if (!mu.is_zero()) {
    mu_slices.resize(static_cast<std::size_t>(mu.max_theta()) + 1, GroupRingElement(x.ring()));
    for (const auto& t : mu.terms()) {
      mu_slices[static_cast<std::size_t>(t.g.theta)] += GroupRingElement::monomial(t.g, t.c, x.ring());
    }
  }
  const int start = num.min_theta();
  if (word_sized(num) && word_sized(mu)) {
    if (auto fast = expand_word_sized(num, mu_slices, start, order)) {
      return {GroupRingElement::from_terms(std::move(*fast), x.ring()), order};
    }
  }
  std::vector<GroupRingElement> slices;
  slices.reserve(static_cast<std::size_t>(order - start + 1));
  for (int n = start; n <= order; ++n) {
    GroupRingElement s = num.theta_slice(n);
    const int reach = std::min<int>(n - start, static_cast<int>(mu_slices.size()) - 1);
    for (int j = 1; j <= reach; ++j) {
      const auto& m = mu_slices[static_cast<std::size_t>(j)];
      const auto& prev = slices[static_cast<std::size_t>(n - j - start)];
      if (!m.is_zero() && !prev.is_zero()) s -= m * prev;
    }
    slices.push_back(std::move(s));
  }
  std::vector<Term> all;
  for (const auto& s : slices) all.insert(all.end(), s.terms().begin(), s.terms().end());
  return {GroupRingElement::from_terms(std::move(all), x.ring()), order};
}

NovikovSeries series_exp_log(const NovikovSeries& s, SeriesFunction fn) {
  return fn == SeriesFunction::Exp ? series_exp(s) : series_log(s);
}

NovikovSeries series_exp(const NovikovSeries& input) {
  const NovikovSeries s = input.as_ring(CoeffRing::Rational);
  if (!s.terms().is_zero() && s.terms().min_theta() < 1) {
    throw SeriesDomainError("exp needs a series with zero constant term, got " + render(s));
  }
  if (s.terms().is_zero()) return {GroupRingElement::constant(1, CoeffRing::Rational), s.order()};
  if (s.is_exact()) throw SeriesDomainError("exp of an exact nonzero series needs a truncation order");

  const int order = s.order();
  NovikovSeries result(GroupRingElement::constant(1, CoeffRing::Rational), order);
  NovikovSeries power(GroupRingElement::constant(1, CoeffRing::Rational), order);
  for (int j = 1; j <= order; ++j) {
    power = power * s;
    power = NovikovSeries(power.terms().scaled(Coefficient(1, j)), order);
    if (power.terms().is_zero()) break;
    result = result + power;
  }
  return result;
}

NovikovSeries series_log(const NovikovSeries& input) {
  const NovikovSeries s = input.as_ring(CoeffRing::Rational);
  const GroupRingElement one = GroupRingElement::constant(1, CoeffRing::Rational);
  if (s.terms().truncated(0) != one) {
    throw SeriesDomainError("log needs a series with constant term 1, got " + render(s));
  }
  if (s.is_exact() && s.terms() == one) return NovikovSeries(CoeffRing::Rational, kExactOrder);
  if (s.is_exact()) throw SeriesDomainError("log of an exact series needs a truncation order");

  const int order = s.order();
  const NovikovSeries mu(s.terms() - one, order);
  NovikovSeries result(CoeffRing::Rational, order);
  NovikovSeries power(one, order);
  for (int j = 1; j <= order; ++j) {
    power = power * mu;
    if (power.terms().is_zero()) break;
    const Coefficient weight(j % 2 == 1 ? 1 : -1, j);
    result = result + NovikovSeries(power.terms().scaled(weight), order);
  }
  return result;
}

std::string render(const NovikovSeries& s) {
  if (s.is_exact()) return render(s.terms());
  return render(s.terms()) + " + O(t^" + std::to_string(s.order() + 1) + ")";
}

}  // namespace nvlab
