#include "nvlab/zeta.hpp"

#include <algorithm>

#include "nvlab/errors.hpp"

namespace nvlab {

void GraphSelfMap::check() const {
  for (std::size_t s = 0; s < cells.size(); ++s) {
    for (const auto& cell : cells[s]) {
      for (const auto& b : cell.branches) {
        if (b.target >= cells[s].size()) {
          throw InvalidDatum("cell '" + cell.name + "' in degree " + std::to_string(s) + " maps to unknown cell #" +
                             std::to_string(b.target));
        }
        if (b.sign != 1 && b.sign != -1) throw InvalidDatum("branch of '" + cell.name + "' has sign " + std::to_string(b.sign));
        if (!b.label.in_h() || !group.contains(b.label)) {
          throw InvalidDatum("branch of '" + cell.name + "' has label " + render(b.label) + " outside H");
        }
      }
    }
  }
}

std::vector<PolyMatrix> GraphSelfMap::induced_matrices() const {
  check();
  std::vector<PolyMatrix> out;
  const GroupRingElement zero(CoeffRing::Integer);
  for (std::size_t s = 0; s < cells.size(); ++s) {
    PolyMatrix h(cells[s].size(), cells[s].size(), zero);
    for (std::size_t src = 0; src < cells[s].size(); ++src) {
      for (const auto& b : cells[s][src].branches) h(b.target, src) += GroupRingElement::monomial(b.label, b.sign);
    }
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

struct StartTask {
  std::size_t degree;
  std::size_t cell;
  std::size_t branch;
};

// Number of closed walks of length k, from the trace of the k-th power of the branch-count matrix.
double closed_walk_count(const GraphSelfMap& m, int k) {
  double total = 0;
  for (const auto& cells : m.cells) {
    const std::size_t n = cells.size();
    std::vector<double> b(n * n, 0.0);
    for (std::size_t src = 0; src < n; ++src) {
      for (const auto& br : cells[src].branches) b[br.target * n + src] += 1.0;
    }
    std::vector<double> p = b;
    for (int step = 1; step < k; ++step) {
      std::vector<double> next(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          if (b[i * n + l] == 0) continue;
          for (std::size_t j = 0; j < n; ++j) next[i * n + j] += b[i * n + l] * p[l * n + j];
        }
      }
      p = std::move(next);
    }
    for (std::size_t i = 0; i < n; ++i) total += p[i * n + i];
  }
  return total;
}

std::vector<StartTask> start_tasks(const GraphSelfMap& m, int k) {
  if (k < 1) throw InvalidOrbit("iterate must be at least 1, got " + std::to_string(k));
  m.check();
  const double count = closed_walk_count(m, k);
  if (count > kMaxFixedPoints) {
    throw Unsupported("iterate " + std::to_string(k) + " has about " + std::to_string(static_cast<long long>(count)) +
                      " fixed points; enumeration is capped");
  }
  std::vector<StartTask> tasks;
  for (std::size_t s = 0; s < m.cells.size(); ++s) {
    for (std::size_t c = 0; c < m.cells[s].size(); ++c) {
      for (std::size_t b = 0; b < m.cells[s][c].branches.size(); ++b) tasks.push_back({s, c, b});
    }
  }
  return tasks;
}

int primitive_period(const std::vector<std::pair<std::size_t, std::size_t>>& seq) {
  const std::size_t k = seq.size();
  for (std::size_t p = 1; p < k; ++p) {
    if (k % p != 0) continue;
    if (std::equal(seq.begin(), seq.end() - p, seq.begin() + p)) return static_cast<int>(p);
  }
  return static_cast<int>(k);
}

bool is_least_rotation(const std::vector<std::pair<std::size_t, std::size_t>>& seq) {
  const std::size_t k = seq.size();
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto& a = seq[(i + r) % k];
      if (a < seq[i]) return false;
      if (seq[i] < a) break;
    }
  }
  return true;
}

// All closed walks of length k starting with the given branch; with `canonical`
// only the least rotation of each walk is kept.
void walks_from(const GraphSelfMap& m, const StartTask& task, int k, bool canonical, std::vector<GFixedPoint>& out) {
  const auto& cells = m.cells[task.degree];
  std::vector<std::pair<std::size_t, std::size_t>> seq;  // (cell, branch)
  seq.reserve(static_cast<std::size_t>(k));
  seq.emplace_back(task.cell, task.branch);

  const auto emit = [&] {
    if (canonical && !is_least_rotation(seq)) return;
    GFixedPoint fp;
    fp.degree = task.degree;
    fp.g = GroupElement::theta_power(k);
    fp.index = task.degree % 2 == 0 ? 1 : -1;
    for (const auto& [c, b] : seq) {
      const Branch& br = cells[c].branches[b];
      fp.g = fp.g * br.label;
      fp.index *= br.sign;
      fp.cells.push_back(c);
    }
    fp.multiplicity = k / primitive_period(seq);
    out.push_back(std::move(fp));
  };

  // Iterative depth-first search over branch choices.
  std::vector<std::size_t> next_branch;
  next_branch.reserve(static_cast<std::size_t>(k));
  next_branch.push_back(0);
  while (true) {
    const std::size_t depth = seq.size();
    const std::size_t here = cells[seq.back().first].branches[seq.back().second].target;
    if (depth == static_cast<std::size_t>(k)) {
      if (here == task.cell) emit();
    } else if (next_branch.back() < cells[here].branches.size()) {
      seq.emplace_back(here, next_branch.back()++);
      next_branch.push_back(0);
      continue;
    }
    // backtrack
    if (depth == 1) break;
    seq.pop_back();
    next_branch.pop_back();
  }
}

std::vector<GFixedPoint> enumerate(const GraphSelfMap& m, int k, bool canonical, bool parallel) {
  const auto tasks = start_tasks(m, k);
  std::vector<std::vector<GFixedPoint>> parts(tasks.size());
  const auto body = [&](std::size_t i) { walks_from(m, tasks[i], k, canonical, parts[i]); };
  if (parallel) {
    parallel_for(tasks.size(), body);
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) body(i);
  }
  std::vector<GFixedPoint> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

std::vector<ClosedOrbit> census(const GraphSelfMap& m, int order, bool parallel) {
  if (order < 1) return {};
  std::vector<std::vector<ClosedOrbit>> per_period(static_cast<std::size_t>(order));
  const auto body = [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    for (const auto& fp : enumerate(m, k, true, false)) {
      per_period[i].push_back({fp.g, fp.index, fp.multiplicity});
    }
  };
  if (parallel) {
    parallel_for(per_period.size(), body);
  } else {
    for (std::size_t i = 0; i < per_period.size(); ++i) body(i);
  }
  std::vector<ClosedOrbit> out;
  for (auto& p : per_period) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::vector<GFixedPoint> enumerate_gfixed(const GraphSelfMap& m, int k) { return enumerate(m, k, false, true); }
std::vector<GFixedPoint> enumerate_gfixed_serial(const GraphSelfMap& m, int k) { return enumerate(m, k, false, false); }

std::vector<ClosedOrbit> orbit_census(const GraphSelfMap& m, int order) { return census(m, order, true); }
std::vector<ClosedOrbit> orbit_census_serial(const GraphSelfMap& m, int order) { return census(m, order, false); }

NovikovSeries eta_from_orbits(const std::vector<ClosedOrbit>& orbits, int order) {
  std::vector<Term> terms;
  for (const auto& o : orbits) {
    if (o.g.xi() >= 0) throw InvalidOrbit("orbit class " + render(o.g) + " has xi >= 0");
    if (o.index != 1 && o.index != -1) throw InvalidOrbit("orbit index " + std::to_string(o.index));
    if (o.multiplicity < 1) throw InvalidOrbit("orbit multiplicity " + std::to_string(o.multiplicity));
    if (o.g.theta > order) continue;
    terms.push_back({o.g, Coefficient(o.index, o.multiplicity)});
  }
  for (auto& t : terms) t.c.canonicalize();
  return NovikovSeries(GroupRingElement::from_terms(std::move(terms), CoeffRing::Rational), order);
}

NovikovSeries nu_from_gfixed(const GraphSelfMap& m, int order) {
  std::vector<Term> terms;
  for (int k = 1; k <= order; ++k) {
    for (const auto& fp : enumerate_gfixed(m, k)) {
      Coefficient c(fp.index, k);
      c.canonicalize();
      terms.push_back({fp.g, c});
    }
  }
  return NovikovSeries(GroupRingElement::from_terms(std::move(terms), CoeffRing::Rational), order);
}

NovikovSeries zeta_from_eta(const NovikovSeries& eta) { return series_exp(eta); }

NovikovSeries eta_from_traces(const std::vector<PolyMatrix>& h, int order) {
  GroupRingElement acc(CoeffRing::Rational);
  for (std::size_t s = 0; s < h.size(); ++s) {
    const PolyMatrix& a = h[s];
    if (!a.is_square()) throw NonSquare("h_" + std::to_string(s) + " is not square");
    if (a.rows() == 0) continue;
    PolyMatrix power = a;
    for (int k = 1; k <= order; ++k) {
      if (k > 1) power = multiply(power, a);
      GroupRingElement trace(power.zero().ring());
      for (std::size_t i = 0; i < power.rows(); ++i) trace += power(i, i);
      Coefficient c(s % 2 == 0 ? 1 : -1, k);
      c.canonicalize();
      acc += trace.as_ring(CoeffRing::Rational).shifted(GroupElement::theta_power(k), c);
    }
  }
  return NovikovSeries(acc, order);
}

LocalizedElement zeta_rational(const std::vector<PolyMatrix>& h) {
  GroupRingElement num = GroupRingElement::constant(1), den = GroupRingElement::constant(1);
  for (std::size_t s = 0; s < h.size(); ++s) {
    if (h[s].rows() == 0) continue;
    const GroupRingElement d = det(one_minus_theta(h[s]));
    if (s % 2 == 1) {
      num *= d;
    } else {
      den *= d;
    }
  }
  return LocalizedElement::normalize(num, den);
}

bool has_integer_coefficients(const NovikovSeries& s) {
  for (const auto& t : s.terms().terms()) {
    if (t.c.get_den() != 1) return false;
  }
  return true;
}

}  // namespace nvlab
