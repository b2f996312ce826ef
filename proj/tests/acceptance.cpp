// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "nvlab/novikov.hpp"
#include "nvlab/scenario.hpp"
#include "nvlab/torsion.hpp"
#include "nvlab/zeta.hpp"
#include "support/generators.hpp"
#include "support/util.hpp"

using namespace nvlab;
using nvlab::testgen::Rng;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kScenarios = NVLAB_SCENARIO_DIR;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s  %d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::vector<Scenario> bundled() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(kScenarios)) {
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(parse_scenario(f));
  return out;
}

/// Binary necklaces of length k, each with its primitive period.
std::vector<int> necklace_periods(int k) {
  std::set<unsigned> seen;
  std::vector<int> periods;
  for (unsigned w = 0; w < (1u << k); ++w) {
    unsigned least = w;
    int period = k;
    for (int r = 1; r < k; ++r) {
      const unsigned rot = ((w << r) | (w >> (k - r))) & ((1u << k) - 1);
      least = std::min(least, rot);
      if (rot == w && period == k) period = r;
    }
    if (seen.insert(least).second) periods.push_back(period);
  }
  return periods;
}

void criterion_resolvent() {
  const auto start = Clock::now();
  Rng rng(1001);
  int agree = 0;
  const int cases = 120;
  for (int i = 0; i < cases; ++i) {
    const std::size_t n = static_cast<std::size_t>(testgen::uniform(rng, 1, 4));
    const std::size_t h_rank = static_cast<std::size_t>(testgen::uniform(rng, 0, 2));
    const auto a = testgen::random_monomial_matrix(rng, n, h_rank);
    agree += expand(resolvent_rational(a), 25) == resolvent_series(a, 25);
  }
  const auto fib = resolvent_rational(testutil::mat({{"1", "1"}, {"1", "0"}}, 0));
  const bool fib_den = fib(0, 0).den() == testutil::el("1 - t - t^2", 0) && !(fib(0, 0).den() == testutil::el("1 + t", 0));
  const double secs = seconds_since(start);
  char detail[256];
  std::snprintf(detail, sizeof detail, "%d/%d random matrices agree at order 25; Fibonacci denominator 1 - t - t^2: %s; %.2f s",
                agree, cases, fib_den ? "yes" : "no", secs);
  report(1, "resolvent identity", agree == cases && fib_den && secs < 10.0, detail);
}

std::vector<ConeLikeDatum> cone_instances() {
  Rng rng(2002);
  std::vector<ConeLikeDatum> out;
  for (int i = 0; i < 120; ++i) {
    out.push_back(testgen::random_cone_like(rng, static_cast<std::size_t>(testgen::uniform(rng, 1, 4)), 3,
                                            static_cast<std::size_t>(testgen::uniform(rng, 0, 2))));
  }
  return out;
}

void criterion_cone_lemma(const std::vector<ConeLikeDatum>& instances) {
  const auto start = Clock::now();
  int agree = 0;
  for (const auto& d : instances) agree += k1_eq(torsion_acyclic(assemble_cone_like(d)), cone_torsion_closed_form(d));
  const double secs = seconds_since(start);
  char detail[256];
  std::snprintf(detail, sizeof detail, "%d/%zu random cone-like data match the closed form; %.2f s", agree,
                instances.size(), secs);
  report(2, "cone lemma", agree == static_cast<int>(instances.size()) && secs < 10.0, detail);
}

void criterion_two_path(const std::vector<Scenario>& scenarios) {
  const auto start = Clock::now();
  std::vector<CyclicCobordismDatum> data;
  for (const auto& sc : scenarios) {
    if (sc.datum) data.push_back(*sc.datum);
  }
  const std::size_t from_files = data.size();
  Rng rng(3003);
  for (int i = 0; i < 60; ++i) {
    data.push_back(testgen::random_datum(rng, static_cast<std::size_t>(testgen::uniform(rng, 2, 4)), 2,
                                         static_cast<std::size_t>(testgen::uniform(rng, 0, 2))));
  }
  std::size_t pairs = 0, pair_ok = 0, square_ok = 0;
  for (const auto& d : data) {
    const auto r = novikov_complex(d);
    square_ok += validate(r.complex).ok();
    for (const auto& inc : r.incidences) {
      ++pairs;
      pair_ok += incidence_series(d, inc.r, inc.s, 25) == expand(inc.value, 25);
    }
  }
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "%zu data (%zu bundled + %zu random): %zu/%zu incidence pairs agree at order 25, delta^2 = 0 on %zu; %.2f s",
                data.size(), from_files, data.size() - from_files, pair_ok, pairs, square_ok, seconds_since(start));
  report(3, "Novikov two-path identity", pair_ok == pairs && pairs > 0 && square_ok == data.size(), detail);
}

void criterion_main_theorem(const std::vector<Scenario>& scenarios) {
  std::size_t checked = 0, ok = 0, with_orbits = 0, zeta_ok = 0;
  double worst = 0;
  for (const auto& sc : scenarios) {
    if (!sc.datum) continue;
    const auto start = Clock::now();
    ++checked;
    const auto tau = torsion_of_inclusion(*sc.datum);
    ok += k1_eq(tau.path_a, tau.path_b);
    if (sc.orbit_model) {
      ++with_orbits;
      zeta_ok += k1_eq(tau.path_a, k1_of_unit(zeta_rational(sc.orbit_model->induced_matrices())));
    }
    worst = std::max(worst, seconds_since(start));
  }
  char detail[256];
  std::snprintf(detail, sizeof detail, "path_a = path_b on %zu/%zu scenarios, tau = [zeta] on %zu/%zu; slowest %.3f s",
                ok, checked, zeta_ok, with_orbits, worst);
  report(4, "main-theorem torsion", checked > 0 && ok == checked && zeta_ok == with_orbits && worst < 2.0, detail);
}

void criterion_three_path_zeta() {
  const int n = 12;
  const auto sc = parse_scenario(kScenarios + "/doubling_torus.json");
  const auto& m = *sc.orbit_model;
  GroupRingElement oracle(CoeffRing::Rational);
  for (int k = 1; k <= n; ++k) {
    // vertex orbit of index +1 plus one index -1 orbit per necklace, weighted 1/multiplicity
    mpq_class c(1, k);
    for (const int p : necklace_periods(k)) c -= mpq_class(p, k);
    c.canonicalize();
    oracle += GroupRingElement::monomial(GroupElement::theta_power(k), c, CoeffRing::Rational);
  }
  const NovikovSeries eta_oracle(oracle, n);
  const auto eta_census = eta_from_orbits(orbit_census(m, n), n);
  const auto eta_traces = eta_from_traces(sc.datum->h, n);
  const auto zeta_expansion = expand(testutil::frac("1 - 2*t", "1 - t", 0), n).as_ring(CoeffRing::Rational);
  const auto zeta_oracle = series_exp(eta_oracle);
  int agree = 0;
  for (int k = 0; k <= n; ++k) {
    const bool eta_same = k == 0 || (eta_census.coefficient(k) == eta_oracle.coefficient(k) &&
                                     eta_traces.coefficient(k) == eta_oracle.coefficient(k));
    const bool zeta_same = series_exp(eta_census).coefficient(k) == zeta_expansion.coefficient(k) &&
                           series_exp(eta_traces).coefficient(k) == zeta_expansion.coefficient(k) &&
                           zeta_oracle.coefficient(k) == zeta_expansion.coefficient(k);
    agree += eta_same && zeta_same;
  }
  char detail[256];
  std::snprintf(detail, sizeof detail, "%d/%d coefficients agree across census, traces, (1 - 2t)/(1 - t) and the necklace oracle",
                agree, n + 1);
  report(5, "three-path zeta on doubling_torus", agree == n + 1, detail);
}

void criterion_circle() {
  const auto sc = parse_scenario(kScenarios + "/circle_two_crit.json");
  const auto r = novikov_complex(*sc.datum);
  bool incidence = false;
  for (const auto& inc : r.incidences) {
    if (inc.r == "q" && inc.s == "p") {
      incidence = equal_up_to_signed_monomial(inc.value.num(), testutil::el("1 - t", 0) * inc.value.den());
    }
  }
  bool acyclic = true;
  for (const auto b : novikov_betti(r.complex)) acyclic = acyclic && b == 0;
  const auto h = sc.orbit_model->induced_matrices();
  const bool zeta_one = zeta_rational(h) == LocalizedElement(testutil::el("1", 0)) &&
                        series_exp(eta_from_orbits(orbit_census(*sc.orbit_model, 12), 12)).terms() ==
                            testutil::q("1", 0);
  const auto tau = torsion_of_inclusion(*sc.datum);
  const bool tau_trivial = tau.path_a.is_identity() && tau.path_b.is_identity();
  std::string detail = std::string("n(q,p) = +-g(1 - t): ") + (incidence ? "yes" : "no") +
                       "; Novikov betti zero: " + (acyclic ? "yes" : "no") + "; zeta = 1: " + (zeta_one ? "yes" : "no") +
                       "; tau trivial: " + (tau_trivial ? "yes" : "no");
  report(6, "circle_two_crit", incidence && acyclic && zeta_one && tau_trivial, detail);
}

void criterion_pivots(const std::vector<ConeLikeDatum>& instances) {
  const auto start = Clock::now();
  int agree = 0;
  for (const auto& d : instances) {
    const auto e = assemble_cone_like(d);
    const auto greedy = torsion_acyclic(e);
    bool all = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) all = all && k1_eq(torsion_acyclic(e, seed), greedy);
    agree += all;
  }
  char detail[256];
  std::snprintf(detail, sizeof detail, "%d/%zu instances give one class under 5 random pivot orders; %.2f s", agree,
                instances.size(), seconds_since(start));
  report(7, "pivot independence", agree == static_cast<int>(instances.size()), detail);
}

template <typename F>
void guarded(int id, const std::string& title, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  std::vector<Scenario> scenarios;
  std::vector<ConeLikeDatum> cones;
  try {
    scenarios = bundled();
    cones = cone_instances();
  } catch (const std::exception& e) {
    std::printf("FAIL  setup: %s\n", e.what());
    return 1;
  }
  guarded(1, "resolvent identity", criterion_resolvent);
  guarded(2, "cone lemma", [&] { criterion_cone_lemma(cones); });
  guarded(3, "Novikov two-path identity", [&] { criterion_two_path(scenarios); });
  guarded(4, "main-theorem torsion", [&] { criterion_main_theorem(scenarios); });
  guarded(5, "three-path zeta on doubling_torus", criterion_three_path_zeta);
  guarded(6, "circle_two_crit", criterion_circle);
  guarded(7, "pivot independence", [&] { criterion_pivots(cones); });
  return failures == 0 ? 0 : 1;
}
