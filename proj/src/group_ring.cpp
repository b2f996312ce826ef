#include "nvlab/group_ring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include "nvlab/errors.hpp"

namespace nvlab {
namespace {

bool less_by_group(const Term& a, const Term& b) { return a.g < b.g; }

/// Merges two canonical term lists, scaling the second by `sign`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].g < b[j].g)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].g < a[i].g) {
      out.push_back({b[j].g, sign > 0 ? b[j].c : Coefficient(-b[j].c)});
      ++j;
    } else {
      Coefficient c = sign > 0 ? Coefficient(a[i].c + b[j].c) : Coefficient(a[i].c - b[j].c);
      if (c != 0) out.push_back({a[i].g, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

bool is_integral(const Coefficient& c) { return c.get_den() == 1; }

bool word_sized(const std::vector<Term>& ts) {
  for (const auto& t : ts) {
    if (t.c.get_den() != 1 || !t.c.get_num().fits_slong_p()) return false;
  }
  return true;
}

using TermPair = std::pair<const std::vector<Term>*, const std::vector<Term>*>;

/// Sum of products of word-sized integer term lists; nullopt on overflow.
std::optional<std::vector<Term>> sum_word_sized(const std::vector<TermPair>& pairs) {
  constexpr std::size_t kDims = kMaxHRank + 1;
  auto coord = [](const GroupElement& g, std::size_t d) { return d == 0 ? g.theta : g.h[d - 1]; };
  std::array<long, kDims> lo{}, hi{};
  lo.fill(std::numeric_limits<long>::max());
  hi.fill(std::numeric_limits<long>::min());
  long count = 0;
  for (const auto& [a, b] : pairs) {
    count += static_cast<long>(a->size() * b->size());
    for (std::size_t d = 0; d < kDims; ++d) {
      auto by = [&](const Term& l, const Term& r) { return coord(l.g, d) < coord(r.g, d); };
      auto [amin, amax] = std::minmax_element(a->begin(), a->end(), by);
      auto [bmin, bmax] = std::minmax_element(b->begin(), b->end(), by);
      lo[d] = std::min<long>(lo[d], static_cast<long>(coord(amin->g, d)) + coord(bmin->g, d));
      hi[d] = std::max<long>(hi[d], static_cast<long>(coord(amax->g, d)) + coord(bmax->g, d));
    }
  }
  long volume = 1;
  for (std::size_t d = 0; d < kDims && volume > 0; ++d) {
    const long extent = hi[d] - lo[d] + 1;
    volume = volume > (1L << 24) / extent ? -1 : volume * extent;
  }

  // Dense accumulation over the exponent box when it is not much larger than the product count.
  if (volume > 0 && volume <= std::max(4 * count, 4096L)) {
    std::array<long, kDims> stride{};
    stride[kDims - 1] = 1;
    for (std::size_t d = kDims - 1; d > 0; --d) stride[d - 1] = stride[d] * (hi[d] - lo[d] + 1);
    auto index = [&](const GroupElement& g) {
      long i = 0;
      for (std::size_t d = 0; d < kDims; ++d) i += coord(g, d) * stride[d];
      return i;
    };
    long origin = 0;
    for (std::size_t d = 0; d < kDims; ++d) origin += lo[d] * stride[d];
    std::vector<long> acc(static_cast<std::size_t>(volume), 0);
    std::vector<long> bidx, bc;
    for (const auto& [a, b] : pairs) {
      bidx.resize(b->size());
      bc.resize(b->size());
      for (std::size_t j = 0; j < b->size(); ++j) {
        bidx[j] = index((*b)[j].g) - origin;
        bc[j] = (*b)[j].c.get_num().get_si();
      }
      for (const auto& x : *a) {
        const long xi = index(x.g);
        const long xc = x.c.get_num().get_si();
        for (std::size_t j = 0; j < b->size(); ++j) {
          long c = 0;
          long& slot = acc[static_cast<std::size_t>(xi + bidx[j])];
          if (__builtin_mul_overflow(xc, bc[j], &c) || __builtin_add_overflow(slot, c, &slot)) return std::nullopt;
        }
      }
    }
    std::vector<Term> out;
    for (long k = 0; k < volume; ++k) {
      if (acc[static_cast<std::size_t>(k)] == 0) continue;
      GroupElement g;
      long rest = k;
      for (std::size_t d = 0; d < kDims; ++d) {
        const int v = static_cast<int>(rest / stride[d] + lo[d]);
        rest %= stride[d];
        if (d == 0) {
          g.theta = v;
        } else {
          g.h[d - 1] = v;
        }
      }
      out.push_back({g, Coefficient(acc[static_cast<std::size_t>(k)])});
    }
    return out;
  }

  std::vector<std::pair<GroupElement, long>> products;
  products.reserve(static_cast<std::size_t>(count));
  for (const auto& [a, b] : pairs) {
    for (const auto& x : *a) {
      const long xc = x.c.get_num().get_si();
      for (const auto& y : *b) {
        long c = 0;
        if (__builtin_mul_overflow(xc, y.c.get_num().get_si(), &c)) return std::nullopt;
        products.emplace_back(x.g * y.g, c);
      }
    }
  }
  std::sort(products.begin(), products.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Term> out;
  long running = 0;
  for (std::size_t i = 0; i < products.size(); ++i) {
    if (__builtin_add_overflow(running, products[i].second, &running)) return std::nullopt;
    if (i + 1 < products.size() && products[i + 1].first == products[i].first) continue;
    if (running != 0) out.push_back({products[i].first, Coefficient(running)});
    running = 0;
  }
  return out;
}

}  // namespace

GroupRingElement GroupRingElement::constant(const Coefficient& c, CoeffRing ring) {
  return monomial(GroupElement{}, c, ring);
}

GroupRingElement GroupRingElement::monomial(const GroupElement& g, const Coefficient& c,
                                            CoeffRing ring) {
  GroupRingElement out(ring);
  if (ring == CoeffRing::Integer && !is_integral(c)) {
    throw RingMismatch("non-integral coefficient " + c.get_str() + " in an integer group ring");
  }
  if (c != 0) out.terms_.push_back({g, c});
  return out;
}

GroupRingElement GroupRingElement::from_terms(std::vector<Term> terms, CoeffRing ring) {
  if (!std::is_sorted(terms.begin(), terms.end(), less_by_group)) std::sort(terms.begin(), terms.end(), less_by_group);
  GroupRingElement out(ring);
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (ring == CoeffRing::Integer && !is_integral(t.c)) {
      throw RingMismatch("non-integral coefficient " + t.c.get_str() + " in an integer group ring");
    }
    if (!out.terms_.empty() && out.terms_.back().g == t.g) {
      out.terms_.back().c += t.c;
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms_, [](const Term& t) { return t.c == 0; });
  return out;
}

bool GroupRingElement::is_one() const {
  return terms_.size() == 1 && terms_[0].g.is_identity() && terms_[0].c == 1;
}

bool GroupRingElement::is_signed_monomial() const {
  return terms_.size() == 1 && (terms_[0].c == 1 || terms_[0].c == -1);
}

int GroupRingElement::min_theta() const {
  if (terms_.empty()) throw Error("min_theta of zero element");
  return terms_.front().g.theta;  // lex order puts theta first
}

int GroupRingElement::max_theta() const {
  if (terms_.empty()) throw Error("max_theta of zero element");
  return terms_.back().g.theta;
}

GroupRingElement GroupRingElement::theta_slice(int k) const {
  GroupRingElement out(ring_);
  for (const auto& t : terms_) {
    if (t.g.theta == k) out.terms_.push_back(t);
  }
  return out;
}

GroupRingElement GroupRingElement::truncated(int max_theta) const {
  GroupRingElement out(ring_);
  for (const auto& t : terms_) {
    if (t.g.theta > max_theta) break;
    out.terms_.push_back(t);
  }
  return out;
}

const Term& GroupRingElement::leading_term() const {
  if (terms_.empty()) throw Error("leading term of zero element");
  return terms_.back();
}

const Term& GroupRingElement::trailing_term() const {
  if (terms_.empty()) throw Error("trailing term of zero element");
  return terms_.front();
}

Coefficient GroupRingElement::coefficient(const GroupElement& g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{g, 0}, less_by_group);
  if (it != terms_.end() && it->g == g) return it->c;
  return 0;
}

GroupRingElement GroupRingElement::shifted(const GroupElement& g, const Coefficient& c) const {
  if (ring_ == CoeffRing::Integer && !is_integral(c)) {
    throw RingMismatch("non-integral scalar in an integer group ring");
  }
  GroupRingElement out(ring_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  // translation preserves the lexicographic order
  for (const auto& t : terms_) out.terms_.push_back({t.g * g, t.c * c});
  return out;
}

GroupRingElement GroupRingElement::scaled(const Coefficient& c) const {
  return shifted(GroupElement{}, c);
}

GroupRingElement GroupRingElement::as_ring(CoeffRing ring) const {
  if (ring == CoeffRing::Integer) {
    for (const auto& t : terms_) {
      if (!is_integral(t.c)) {
        throw RingMismatch("cannot view " + render(*this) + " over the integers");
      }
    }
  }
  GroupRingElement out = *this;
  out.ring_ = ring;
  return out;
}

bool GroupRingElement::in_h() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.g.theta == 0; });
}

bool GroupRingElement::in_h_theta() const {
  return terms_.empty() || terms_.front().g.theta >= 0;
}

bool GroupRingElement::is_integer_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].g.is_identity() && is_integral(terms_[0].c));
}

void GroupRingElement::check_same_ring(const GroupRingElement& other) const {
  if (ring_ != other.ring_) {
    throw RingMismatch("group-ring operation mixes integer and rational coefficients");
  }
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out = *this;
  for (auto& t : out.terms_) t.c = -t.c;
  return out;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  check_same_ring(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, +1);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& other) {
  check_same_ring(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const GroupRingElement& other) {
  *this = *this * other;
  return *this;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  a.check_same_ring(b);
  GroupRingElement out(a.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (b.terms_.size() == 1) return a.shifted(b.terms_[0].g, b.terms_[0].c);
  if (a.terms_.size() == 1) return b.shifted(a.terms_[0].g, a.terms_[0].c);
  if (word_sized(a.terms_) && word_sized(b.terms_)) {
    if (auto fast = sum_word_sized({{&a.terms_, &b.terms_}})) {
      out.terms_ = std::move(*fast);
      return out;
    }
  }
  std::vector<Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) products.push_back({x.g * y.g, x.c * y.c});
  }
  std::sort(products.begin(), products.end(), less_by_group);
  out.terms_.reserve(products.size());
  for (auto& t : products) {
    if (!out.terms_.empty() && out.terms_.back().g == t.g) {
      out.terms_.back().c += t.c;
    } else {
      if (!out.terms_.empty() && out.terms_.back().c == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().c == 0) out.terms_.pop_back();
  return out;
}

GroupRingElement sum_of_products(const std::vector<std::pair<const GroupRingElement*, const GroupRingElement*>>& pairs,
                                 const GroupRingElement& zero) {
  std::vector<TermPair> lists;
  bool small = true;
  for (const auto& [a, b] : pairs) {
    zero.check_same_ring(*a);
    zero.check_same_ring(*b);
    if (a->is_zero() || b->is_zero()) continue;
    lists.emplace_back(&a->terms(), &b->terms());
    small = small && word_sized(a->terms()) && word_sized(b->terms());
  }
  GroupRingElement out(zero.ring());
  if (lists.empty()) return out;
  if (small) {
    if (auto fast = sum_word_sized(lists)) {
      out.terms_ = std::move(*fast);
      return out;
    }
  }
  for (const auto& [a, b] : pairs) {
    if (!a->is_zero() && !b->is_zero()) out += *a * *b;
  }
  return out;
}

GroupRingElement gr_arith(const GroupRingElement& a, const GroupRingElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
  }
  throw Error("unknown arithmetic operation");
}

std::optional<GroupRingElement> exact_divide(const GroupRingElement& a, const GroupRingElement& b) {
  if (a.ring() != b.ring()) throw RingMismatch("exact_divide mixes coefficient rings");
  if (b.is_zero()) throw DivisionByZero("exact_divide by zero");
  if (a.is_zero()) return GroupRingElement(a.ring());
  if (b.size() == 1) {
    const Term& t = b.terms().front();
    const GroupElement g_inv = t.g.inverse();
    std::vector<Term> terms;
    terms.reserve(a.size());
    for (const auto& s : a.terms()) {
      Coefficient c = s.c / t.c;
      if (a.ring() == CoeffRing::Integer && !is_integral(c)) return std::nullopt;
      terms.push_back({s.g * g_inv, std::move(c)});
    }
    return GroupRingElement::from_terms(std::move(terms), a.ring());
  }

  // Per-coordinate exponent ranges are additive under multiplication in a
  // Laurent polynomial domain, so any quotient lives in this box.
  constexpr std::size_t kCoords = kMaxHRank + 1;
  auto coord = [](const GroupElement& g, std::size_t i) { return i == 0 ? g.theta : g.h[i - 1]; };
  std::array<int, kCoords> lo{}, hi{};
  for (std::size_t i = 0; i < kCoords; ++i) {
    int amin = coord(a.terms().front().g, i), amax = amin;
    for (const auto& t : a.terms()) {
      amin = std::min(amin, coord(t.g, i));
      amax = std::max(amax, coord(t.g, i));
    }
    int bmin = coord(b.terms().front().g, i), bmax = bmin;
    for (const auto& t : b.terms()) {
      bmin = std::min(bmin, coord(t.g, i));
      bmax = std::max(bmax, coord(t.g, i));
    }
    lo[i] = amin - bmin;
    hi[i] = amax - bmax;
    if (lo[i] > hi[i]) return std::nullopt;
  }

  const Term& lead_b = b.leading_term();
  const GroupElement lead_b_inv = lead_b.g.inverse();
  std::vector<Term> quotient;
  GroupRingElement remainder = a;
  while (!remainder.is_zero()) {
    const Term& lead_r = remainder.leading_term();
    GroupElement g = lead_r.g * lead_b_inv;
    Coefficient c = lead_r.c / lead_b.c;
    if (a.ring() == CoeffRing::Integer && !is_integral(c)) return std::nullopt;
    for (std::size_t i = 0; i < kCoords; ++i) {
      int x = coord(g, i);
      if (x < lo[i] || x > hi[i]) return std::nullopt;
    }
    quotient.push_back({g, c});
    remainder -= b.shifted(g, c);
  }
  return GroupRingElement::from_terms(std::move(quotient), a.ring());
}

bool equal_up_to_signed_monomial(const GroupRingElement& a, const GroupRingElement& b,
                                 Term* witness) {
  if (a.size() != b.size()) return false;
  if (a.is_zero()) {
    if (witness) *witness = {GroupElement{}, 1};
    return true;
  }
  const Term& la = a.leading_term();
  const Term& lb = b.leading_term();
  Coefficient ratio = la.c / lb.c;
  if (ratio != 1 && ratio != -1) return false;
  GroupElement g = la.g * lb.g.inverse();
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].g != tb[i].g * g || ta[i].c != tb[i].c * ratio) return false;
  }
  if (witness) *witness = {g, ratio};
  return true;
}

GroupRingElement one_like(const GroupRingElement& x) { return GroupRingElement::constant(1, x.ring()); }
GroupRingElement zero_like(const GroupRingElement& x) { return GroupRingElement(x.ring()); }

std::string render(const Coefficient& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string render(const GroupElement& g) {
  std::string out;
  auto append = [&out](const std::string& var, int e) {
    if (e == 0) return;
    if (!out.empty()) out += " * ";
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  };
  append("t", g.theta);
  for (std::size_t i = 0; i < kMaxHRank; ++i) append("h" + std::to_string(i + 1), g.h[i]);
  return out.empty() ? "1" : out;
}

std::string render(const GroupRingElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : x.terms()) {
    const bool negative = t.c < 0;
    Coefficient mag = negative ? Coefficient(-t.c) : t.c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.g.is_identity()) {
      out += render(mag);
    } else if (mag == 1) {
      out += render(t.g);
    } else {
      out += render(mag) + " * " + render(t.g);
    }
  }
  return out;
}

namespace {

class RingParser {
 public:
  RingParser(std::string_view text, const GradedGroup& group, CoeffRing ring)
      : text_(text), group_(group), ring_(ring) {}

  GroupRingElement parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty ring element");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    terms.push_back(parse_term(sign));
    skip_ws();
    while (!at_end()) {
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-', found '") + op + "'");
      ++pos_;
      terms.push_back(parse_term(op == '-' ? -1 : 1));
      skip_ws();
    }
    return GroupRingElement::from_terms(std::move(terms), ring_);
  }

 private:
  Term parse_term(int sign) {
    Term t{GroupElement{}, sign};
    parse_factor(t);
    skip_ws();
    while (!at_end() && peek() == '*') {
      ++pos_;
      parse_factor(t);
      skip_ws();
    }
    return t;
  }

  void parse_factor(Term& t) {
    skip_ws();
    if (at_end()) fail("expected a factor");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(read_digits());
      mpz_class den = 1;
      if (!at_end() && peek() == '/') {
        ++pos_;
        den = mpz_class(read_digits());
        if (den == 0) fail("zero denominator");
        if (ring_ == CoeffRing::Integer) fail("fractional coefficient in an integer ring element");
      }
      Coefficient q(num, den);
      q.canonicalize();
      t.c *= q;
      return;
    }
    if (c == 't') {
      ++pos_;
      t.g.theta += read_exponent();
      return;
    }
    if (c == 'h') {
      ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected h-index after 'h'");
      const std::size_t index = std::stoul(read_digits());
      if (index == 0 || index > group_.h_rank()) {
        fail("variable h" + std::to_string(index) + " outside H of rank " +
             std::to_string(group_.h_rank()));
      }
      t.g.h[index - 1] += read_exponent();
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  int read_exponent() {
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    int sign = 1;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    return sign * std::stoi(read_digits());
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse \"" + std::string(text_) + "\" at column " +
                     std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  const GradedGroup& group_;
  CoeffRing ring_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElement parse_group_ring_element(std::string_view text, const GradedGroup& group,
                                          CoeffRing ring) {
  return RingParser(text, group, ring).parse();
}

}  // namespace nvlab
