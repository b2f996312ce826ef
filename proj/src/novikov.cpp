#include "nvlab/novikov.hpp"

#include <algorithm>

#include "nvlab/errors.hpp"

namespace nvlab {

namespace {

GroupRingElement poly_zero() { return GroupRingElement(CoeffRing::Integer); }
LocalizedElement loc_zero() { return LocalizedElement(poly_zero()); }

std::string entry_at(const char* name, std::size_t k, std::size_t i, std::size_t j) {
  return std::string(name) + "_" + std::to_string(k) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_shape(std::vector<std::string>& errors, const PolyMatrix& m, const char* name, std::size_t k,
                 std::size_t rows, std::size_t cols) {
  if (m.rows() != rows || m.cols() != cols) {
    errors.push_back(std::string(name) + "_" + std::to_string(k) + " is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

template <typename Pred>
void check_entries(std::vector<std::string>& errors, const PolyMatrix& m, const char* name, std::size_t k, Pred ok,
                   const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!ok(m(i, j))) errors.push_back(entry_at(name, k, i, j) + " " + what + ": " + render(m(i, j)));
    }
  }
}

// Offsets of the three summands u_k, v_k, u_{k-1} inside E_k.
struct Layout {
  std::size_t u, v, w;
  std::size_t size() const { return u + v + w; }
  int block_of(std::size_t idx) const { return idx < u ? 1 : idx < u + v ? 2 : 3; }
  std::size_t offset_in_block(std::size_t idx) const { return idx < u ? idx : idx < u + v ? idx - u : idx - u - v; }
};

Layout layout(const CyclicCobordismDatum& d, std::size_t k) {
  return {d.rank_u(k), d.rank_v(k), k >= 1 ? d.rank_u(k - 1) : 0};
}

std::vector<std::size_t> iota(std::size_t from, std::size_t count) {
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + i;
  return out;
}

// (1 - h_k t)^-1 for every degree.
std::vector<LocMatrix> resolvents(const CyclicCobordismDatum& d) {
  std::vector<LocMatrix> out;
  for (std::size_t k = 0; k < d.degrees(); ++k) out.push_back(resolvent_rational(d.h[k]));
  return out;
}

}  // namespace

std::string DatumViolation::describe() const {
  return "D_" + std::to_string(degree) + "*D_" + std::to_string(degree + 1) + " block (row" +
         std::to_string(block_row) + ",col" + std::to_string(block_col) + ") entry (" + std::to_string(row) + "," +
         std::to_string(col) + ") = " + value;
}

DatumReport validate_datum(const CyclicCobordismDatum& d) {
  DatumReport report;
  auto& errors = report.shape_errors;
  const std::size_t n = d.degrees();
  if (d.labels_v.size() != n) errors.push_back("labels_v has " + std::to_string(d.labels_v.size()) + " degrees, expected " + std::to_string(n));
  for (const auto* list : {&d.bdry1, &d.bdryv, &d.p, &d.n, &d.h}) {
    if (list->size() != n) {
      errors.push_back("expected " + std::to_string(n) + " matrices per block, got " + std::to_string(list->size()));
      return report;
    }
  }
  if (!errors.empty()) return report;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t u_prev = k == 0 ? 0 : d.rank_u(k - 1);
    const std::size_t v_prev = k == 0 ? 0 : d.rank_v(k - 1);
    check_shape(errors, d.bdry1[k], "bdry1", k, u_prev, d.rank_u(k));
    check_shape(errors, d.bdryv[k], "bdryv", k, v_prev, d.rank_v(k));
    check_shape(errors, d.p[k], "P", k, u_prev, d.rank_v(k));
    check_shape(errors, d.n[k], "N", k, d.rank_v(k), d.rank_u(k));
    check_shape(errors, d.h[k], "h", k, d.rank_u(k), d.rank_u(k));
  }
  if (!errors.empty()) return report;
  const auto nonneg = [](const GroupRingElement& x) { return x.ring() == CoeffRing::Integer && x.in_h_theta(); };
  for (std::size_t k = 0; k < n; ++k) {
    check_entries(errors, d.bdry1[k], "bdry1", k, nonneg, "is not in ZH[t]");
    check_entries(errors, d.bdryv[k], "bdryv", k, nonneg, "is not in ZH[t]");
    check_entries(errors, d.n[k], "N", k, nonneg, "is not in ZH[t]");
    check_entries(
        errors, d.p[k], "P", k,
        [&](const GroupRingElement& x) { return nonneg(x) && (x.is_zero() || x.min_theta() >= 1); },
        "is not in t*ZH[t]");
    check_entries(
        errors, d.h[k], "h", k,
        [](const GroupRingElement& x) { return x.ring() == CoeffRing::Integer && x.in_h(); }, "is not in ZH");
    for (const auto& g : {&d.bdry1[k], &d.bdryv[k], &d.p[k], &d.n[k], &d.h[k]}) {
      for (std::size_t i = 0; i < g->rows(); ++i) {
        for (std::size_t j = 0; j < g->cols(); ++j) {
          for (const auto& term : (*g)(i, j).terms()) {
            if (!d.group.contains(term.g)) {
              errors.push_back("entry " + render((*g)(i, j)) + " in degree " + std::to_string(k) +
                               " uses an H generator beyond rank " + std::to_string(d.group.h_rank()));
            }
          }
        }
      }
    }
  }
  if (!errors.empty()) return report;

  const PolyComplex e = assemble_E_unchecked(d);
  for (std::size_t k = 1; k + 1 < e.degrees(); ++k) {
    const PolyMatrix dd = multiply(e.boundary[k], e.boundary[k + 1]);
    const Layout rows = layout(d, k - 1);
    const Layout cols = layout(d, k + 1);
    for (std::size_t i = 0; i < dd.rows(); ++i) {
      for (std::size_t j = 0; j < dd.cols(); ++j) {
        if (dd(i, j).is_zero()) continue;
        report.violations.push_back({k, rows.block_of(i), cols.block_of(j), rows.offset_in_block(i),
                                     cols.offset_in_block(j), render(dd(i, j))});
      }
    }
  }
  return report;
}

void check_datum(const CyclicCobordismDatum& d) {
  const DatumReport report = validate_datum(d);
  if (report.ok()) return;
  std::string what = "invalid cyclic cobordism datum";
  for (const auto& e : report.shape_errors) what += "; " + e;
  for (const auto& v : report.violations) what += "; " + v.describe();
  throw InvalidDatum(what);
}

PolyComplex assemble_E_unchecked(const CyclicCobordismDatum& d) {
  const std::size_t n = d.degrees();
  PolyComplex e;
  e.zero = poly_zero();
  if (n == 0) return e;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::string> labels;
    if (k < n) {
      labels = d.labels_u[k];
      labels.insert(labels.end(), d.labels_v[k].begin(), d.labels_v[k].end());
    }
    if (k >= 1) {
      for (const auto& s : d.labels_u[k - 1]) labels.push_back("[[" + s + "]]");
    }
    e.basis.push_back(std::move(labels));
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const Layout cols = layout(d, k);
    if (k == 0) {
      e.boundary.emplace_back(0, cols.size(), e.zero);
      continue;
    }
    const Layout rows = layout(d, k - 1);
    PolyMatrix m(rows.size(), cols.size(), e.zero);
    if (k < n) {
      m.set_block(0, 0, d.bdry1[k]);
      m.set_block(0, cols.u, d.p[k]);
      m.set_block(rows.u, cols.u, d.bdryv[k]);
    }
    m.set_block(0, cols.u + cols.v, one_minus_theta(d.h[k - 1]));
    m.set_block(rows.u, cols.u + cols.v, d.n[k - 1]);
    m.set_block(rows.u + rows.v, cols.u + cols.v, -d.bdry1[k - 1]);
    e.boundary.push_back(std::move(m));
  }
  return e;
}

PolyComplex assemble_E(const CyclicCobordismDatum& d) {
  check_datum(d);
  return assemble_E_unchecked(d);
}

CyclicCobordismDatum mapping_torus_datum(const std::vector<PolyMatrix>& h, const std::vector<PolyMatrix>& bdry1,
                                         const GradedGroup& group) {
  const std::size_t n = h.size();
  if (bdry1.size() != n) throw DimensionMismatch("mapping torus needs one boundary matrix per degree of h");
  CyclicCobordismDatum d;
  d.group = group;
  for (std::size_t k = 0; k < n; ++k) {
    if (!h[k].is_square()) throw NonSquare("h_" + std::to_string(k) + " is not square");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < h[k].rows(); ++i) labels.push_back("x" + std::to_string(k) + "_" + std::to_string(i));
    d.labels_u.push_back(std::move(labels));
    d.labels_v.emplace_back();
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t prev = k == 0 ? 0 : d.rank_u(k - 1);
    if (bdry1[k].rows() != prev || bdry1[k].cols() != d.rank_u(k)) {
      throw DimensionMismatch("bdry1_" + std::to_string(k) + " shape does not match h");
    }
  }
  PolyComplex c{d.labels_u, bdry1, poly_zero()};
  if (!validate(c).ok()) throw InvalidComplex("bdry1 does not square to zero");
  ChainMap<GroupRingElement> f{c, c, h};
  check_chain_map(f);
  d.bdry1 = bdry1;
  d.h = h;
  for (std::size_t k = 0; k < n; ++k) {
    d.bdryv.emplace_back(0, 0, poly_zero());
    d.p.emplace_back(k == 0 ? 0 : d.rank_u(k - 1), 0, poly_zero());
    d.n.emplace_back(0, d.rank_u(k), poly_zero());
  }
  check_datum(d);
  return d;
}

ChangeOfBase change_of_base(const CyclicCobordismDatum& d) {
  check_datum(d);
  const std::size_t n = d.degrees();
  ChangeOfBase out;
  if (n == 0) {
    out.transformed.zero = loc_zero();
    return out;
  }
  const PolyComplex e = assemble_E_unchecked(d);
  const auto r = resolvents(d);
  std::vector<LocMatrix> t_inv;
  for (std::size_t k = 0; k <= n; ++k) {
    const Layout l = layout(d, k);
    LocMatrix t = identity_matrix(l.size(), loc_zero());
    LocMatrix ti = t;
    if (k >= 1 && k < n && l.v > 0 && l.w > 0) {
      const LocMatrix shift = multiply(r[k - 1], localize(d.p[k]));
      t.set_block(l.u + l.v, l.u, -shift);
      ti.set_block(l.u + l.v, l.u, shift);
    }
    out.t.push_back(std::move(t));
    t_inv.push_back(std::move(ti));
  }
  std::vector<LocMatrix> boundary;
  for (std::size_t k = 0; k <= n; ++k) {
    const LocMatrix dk = localize(e.boundary[k]);
    boundary.push_back(k == 0 ? dk : multiply(multiply(t_inv[k - 1], dk), out.t[k]));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    const Layout rows = layout(d, k - 1);
    const Layout cols = layout(d, k);
    const auto& m = boundary[k];
    const std::pair<int, int> zero_blocks[] = {{1, 2}, {2, 1}, {3, 1}, {3, 2}};
    for (const auto& [br, bc] : zero_blocks) {
      const std::size_t r0 = br == 1 ? 0 : br == 2 ? rows.u : rows.u + rows.v;
      const std::size_t nr = br == 1 ? rows.u : br == 2 ? rows.v : rows.w;
      const std::size_t c0 = bc == 1 ? 0 : cols.u;
      const std::size_t nc = bc == 1 ? cols.u : cols.v;
      if (!m.block(r0, c0, nr, nc).is_zero()) {
        throw InvalidDatum("change of base leaves block (row" + std::to_string(br) + ",col" + std::to_string(bc) +
                           ") nonzero in degree " + std::to_string(k));
      }
    }
  }
  out.transformed = make_complex(e.basis, std::move(boundary), loc_zero());
  return out;
}

namespace {

std::vector<LocMatrix> delta_matrices(const CyclicCobordismDatum& d, const std::vector<LocMatrix>& r, int sign) {
  std::vector<LocMatrix> out;
  for (std::size_t k = 0; k < d.degrees(); ++k) {
    if (k == 0) {
      out.emplace_back(0, d.rank_v(0), loc_zero());
      continue;
    }
    const LocMatrix correction = multiply(multiply(localize(d.n[k - 1]), r[k - 1]), localize(d.p[k]));
    const LocMatrix base = localize(d.bdryv[k]);
    out.push_back(sign < 0 ? base - correction : base + correction);
  }
  return out;
}

}  // namespace

NovikovComplexResult novikov_complex(const CyclicCobordismDatum& d) {
  check_datum(d);
  const auto r = resolvents(d);
  NovikovComplexResult out;
  out.complex = make_complex(d.labels_v, delta_matrices(d, r, -1), loc_zero());
  const LocComplex plus{d.labels_v, delta_matrices(d, r, +1), loc_zero()};
  out.plus_sign_squares_to_zero = validate(plus).ok();
  for (std::size_t k = 1; k < d.degrees(); ++k) {
    const auto& m = out.complex.boundary[k];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        out.incidences.push_back({k, d.labels_v[k][j], d.labels_v[k - 1][i], m(i, j)});
      }
    }
  }
  return out;
}

NovikovSeries incidence_series(const CyclicCobordismDatum& d, const std::string& r, const std::string& s, int order) {
  std::size_t k = 0, col = 0;
  bool found = false;
  for (std::size_t deg = 0; deg < d.labels_v.size() && !found; ++deg) {
    const auto& labels = d.labels_v[deg];
    const auto it = std::find(labels.begin(), labels.end(), r);
    if (it != labels.end()) {
      k = deg;
      col = static_cast<std::size_t>(it - labels.begin());
      found = true;
    }
  }
  if (!found) throw LabelNotFound("no critical point labelled '" + r + "'");
  if (k == 0) throw LabelNotFound("'" + r + "' has degree 0, so no '" + s + "' below it");
  const auto& below = d.labels_v[k - 1];
  const auto it = std::find(below.begin(), below.end(), s);
  if (it == below.end()) {
    throw LabelNotFound("no critical point labelled '" + s + "' in degree " + std::to_string(k - 1));
  }
  const std::size_t row = static_cast<std::size_t>(it - below.begin());

  GroupRingElement acc = d.bdryv[k](row, col).truncated(order);
  std::vector<GroupRingElement> x(d.rank_u(k - 1), poly_zero());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = d.p[k](i, col).truncated(order);
  const PolyMatrix& h = d.h[k - 1];
  const PolyMatrix& nmat = d.n[k - 1];
  for (int j = 0; j <= order; ++j) {
    bool any = false;
    GroupRingElement term = poly_zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      any = true;
      if (!nmat(row, i).is_zero()) term += nmat(row, i) * x[i];
    }
    if (!any) break;
    acc -= term.shifted(GroupElement::theta_power(j));
    std::vector<GroupRingElement> next(x.size(), poly_zero());
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (!h(a, b).is_zero() && !x[b].is_zero()) next[a] += h(a, b) * x[b];
      }
      next[a] = next[a].truncated(order - j - 1);
    }
    x = std::move(next);
  }
  return NovikovSeries(acc, order);
}

K1Class determinant_product(const std::vector<PolyMatrix>& h) {
  K1Class out;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h[k].rows() == 0) continue;
    const K1Class cls = K1Class::of_unit(LocalizedElement(det(one_minus_theta(h[k]))));
    out *= k % 2 == 1 ? cls : cls.inverse();
  }
  return out;
}

InclusionTorsion torsion_of_inclusion(const CyclicCobordismDatum& d) {
  const ChangeOfBase cb = change_of_base(d);
  const LocComplex& e = cb.transformed;
  const std::size_t n = e.degrees();

  // Quotient by the v summands: keep u_k and the shifted copy of u_{k-1}.
  std::vector<std::vector<std::size_t>> keep(n), v_part(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Layout l = layout(d, k);
    keep[k] = iota(0, l.u);
    const auto w = iota(l.u + l.v, l.w);
    keep[k].insert(keep[k].end(), w.begin(), w.end());
    v_part[k] = iota(l.u, l.v);
  }
  LocComplex q;
  q.zero = loc_zero();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::string> labels;
    for (const auto i : keep[k]) labels.push_back(e.basis[k][i]);
    q.basis.push_back(std::move(labels));
    q.boundary.push_back(k == 0 ? LocMatrix(0, keep[0].size(), q.zero)
                                : e.boundary[k].select(keep[k - 1], keep[k]));
  }
  q = make_complex(std::move(q.basis), std::move(q.boundary), q.zero);

  InclusionTorsion out;
  out.path_a = torsion_acyclic(q);
  out.path_b = determinant_product(d.h);

  if (n > 0) {
    ChainMap<LocalizedElement> inclusion;
    inclusion.target = e;
    inclusion.source.zero = loc_zero();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      inclusion.source.basis.push_back(d.labels_v[k]);
      inclusion.source.boundary.push_back(
          k == 0 ? LocMatrix(0, v_part[0].size(), loc_zero()) : e.boundary[k].select(v_part[k - 1], v_part[k]));
    }
    for (std::size_t k = 0; k < n; ++k) {
      LocMatrix m(e.rank(k), inclusion.source.rank(k), loc_zero());
      for (std::size_t j = 0; j < v_part[k].size() && j < m.cols(); ++j) m(v_part[k][j], j) = one_like(loc_zero());
      inclusion.maps.push_back(std::move(m));
    }
    try {
      out.cone_route = torsion_of_map(inclusion);
    } catch (const NotAcyclic&) {
      out.cone_route.reset();
    }
  }
  return out;
}

}  // namespace nvlab
