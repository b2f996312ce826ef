#include "nvlab/run.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "nvlab/errors.hpp"
#include "nvlab/parallel.hpp"

namespace nvlab {

namespace {

constexpr const char* kAnchorAssembly = "D^2 = 0 for D = [[bdry1, P, 1 - t h], [0, bdryv, N], [0, 0, -bdry1]]";
constexpr const char* kAnchorDelta = "delta = bdryv - N (1 - h t)^-1 P";
constexpr const char* kAnchorSeries = "n(r,s) = bdryv(s,r) - sum_j (N h^j P)(s,r) t^j";
constexpr const char* kAnchorBase = "T = 1 - (1 - h t)^-1 P on C(v) -> C(u)[-1]; [det T] = 1";
constexpr const char* kAnchorTorsion = "tau(E / C(v)) = prod_k [det(1 - h_k t)]^((-1)^(k+1))";
constexpr const char* kAnchorZeta = "exp(sum_s (-1)^s sum_k Tr((t h_s)^k) / k) = prod_s det(1 - t h_s)^((-1)^(s+1))";
constexpr const char* kAnchorOrbits = "eta = sum_gamma eps(gamma) / m(gamma) [gamma]";
constexpr const char* kAnchorFixed = "sum_{a in Fix(k)} ind(a) g(a) = (-1)^s Tr((t h_s)^k)";
constexpr const char* kAnchorMain = "tau = [zeta]";

std::string render_matrix(const PolyMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + render(m(i, j));
    out += "]";
  }
  return out + "]";
}

std::string render_matrix(const LocMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + render(m(i, j));
    out += "]";
  }
  return out + "]";
}

std::string render_list(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

std::string render_fraction(const GroupRingElement& num, const GroupRingElement& den) {
  if (den.is_one()) return render(num);
  return "(" + render(num) + ") / (" + render(den) + ")";
}

std::vector<PolyMatrix> h_of(const Scenario& sc) {
  if (sc.datum) return sc.datum->h;
  if (!sc.orbit_model) throw Unsupported("scenario has neither a datum nor an orbit model");
  return sc.orbit_model->induced_matrices();
}

void validate_checks(const Scenario& sc, VerificationReport& rep) {
  if (sc.datum) {
    const auto& d = *sc.datum;
    std::vector<std::size_t> ru, rv;
    for (std::size_t k = 0; k < d.degrees(); ++k) {
      ru.push_back(d.rank_u(k));
      rv.push_back(d.rank_v(k));
    }
    rep.note("rank_u", render_list(ru));
    rep.note("rank_v", render_list(rv));
    const DatumReport dr = validate_datum(d);
    for (const auto& e : dr.shape_errors) rep.add("datum shape", false, e, "consistent shapes", kAnchorAssembly);
    for (const auto& v : dr.violations) {
      rep.add("D_" + std::to_string(v.degree) + "*D_" + std::to_string(v.degree + 1) + " block (row" +
                  std::to_string(v.block_row) + ",col" + std::to_string(v.block_col) + ") entry (" +
                  std::to_string(v.row) + "," + std::to_string(v.col) + ")",
              false, v.value, "0", kAnchorAssembly);
    }
    if (dr.ok()) rep.add("assembled boundary squares to zero", true, "D^2", "0", kAnchorAssembly);
  }
  if (sc.orbit_model) {
    sc.orbit_model->check();
    rep.add("orbit model well-formed", true, "branches", "valid targets, signs and labels", "wedge model");
    if (sc.datum) {
      auto induced = sc.orbit_model->induced_matrices();
      auto h = sc.datum->h;
      const std::size_t n = std::max(induced.size(), h.size());
      while (induced.size() < n) induced.emplace_back(0, 0, GroupRingElement(CoeffRing::Integer));
      while (h.size() < n) h.emplace_back(0, 0, GroupRingElement(CoeffRing::Integer));
      bool same = true;
      std::string left, right;
      for (std::size_t s = 0; s < n; ++s) {
        left += (s ? "; " : "") + render_matrix(induced[s]);
        right += (s ? "; " : "") + render_matrix(h[s]);
        if (!(induced[s] == h[s])) same = false;
      }
      rep.add("orbit model induces h", same, left, right, "h_s[target][source] = sum sign * label");
    }
  }
}

bool fraction_matches(const LocalizedElement& value, const ExpectedEntry& e) {
  const GroupRingElement lhs = value.num() * e.den;
  const GroupRingElement rhs = e.num * value.den();
  if (e.exact) return lhs == rhs;
  if (lhs.is_zero() || rhs.is_zero()) return lhs.is_zero() && rhs.is_zero();
  return equal_up_to_signed_monomial(lhs, rhs);
}

void novikov_checks(const Scenario& sc, VerificationReport& rep) {
  const auto& d = *sc.datum;
  const NovikovComplexResult nc = novikov_complex(d);
  for (std::size_t k = 1; k < nc.complex.degrees(); ++k) {
    rep.note("delta_" + std::to_string(k), render_matrix(nc.complex.boundary[k]));
  }
  for (const auto& inc : nc.incidences) rep.note("n(" + inc.r + "," + inc.s + ")", render(inc.value));
  rep.note("convention", std::string(kAnchorDelta) + "; the + sign " +
                             (nc.plus_sign_squares_to_zero ? "also squares to zero here" : "fails d^2 = 0 here"));
  rep.add("delta squares to zero", validate(nc.complex).ok(), "delta_k delta_(k+1)", "0", kAnchorDelta);

  int chi = 0;
  for (std::size_t k = 0; k < d.degrees(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<int>(d.rank_v(k));
  rep.add("Euler characteristic", nc.complex.euler_characteristic() == chi,
          std::to_string(nc.complex.euler_characteristic()), std::to_string(chi), "chi = sum (-1)^k rank_v[k]");

  const ChangeOfBase cb = change_of_base(d);
  bool unitriangular = true;
  for (const auto& t : cb.t) {
    if (t.rows() > 0 && !k1_eq(k1_of_quotient(det(t)), K1Class())) unitriangular = false;
  }
  rep.add("change of base has trivial determinant class", unitriangular, "[det T_k]", "[1]", kAnchorBase);
  bool middle = true;
  for (std::size_t k = 1; k < d.degrees(); ++k) {
    const std::size_t r0 = d.rank_u(k - 1), c0 = d.rank_u(k);
    const LocMatrix block = cb.transformed.boundary[k].block(r0, c0, d.rank_v(k - 1), d.rank_v(k));
    const auto& delta = nc.complex.boundary[k];
    for (std::size_t i = 0; i < block.rows(); ++i) {
      for (std::size_t j = 0; j < block.cols(); ++j) {
        if (!(block(i, j) == delta(i, j))) middle = false;
      }
    }
  }
  rep.add("changed-base boundary has delta as middle block", middle, "T^-1 D T", "[[bdry1, 0, *], [0, delta, N], [0, 0, *]]",
          kAnchorBase);

  const auto betti = novikov_betti(nc.complex);
  rep.note("novikov_betti", render_list(betti));
  for (const auto& e : sc.expected) {
    if (e.kind == ExpectedKind::NovikovBetti) {
      rep.add("expected " + e.name + " (" + e.source + ")", betti == e.betti, render_list(betti), render_list(e.betti),
              "rank of H_*(C(v) over the fraction field)");
    } else if (e.kind == ExpectedKind::Incidence) {
      const auto it = std::find_if(nc.incidences.begin(), nc.incidences.end(),
                                   [&](const IncidenceEntry& x) { return x.r == e.r && x.s == e.s; });
      if (it == nc.incidences.end()) {
        rep.add("expected " + e.name + " (" + e.source + ")", false, "no such pair", e.r + " -> " + e.s, kAnchorDelta);
        continue;
      }
      rep.add("expected " + e.name + " (" + e.source + ")", fraction_matches(it->value, e), render(it->value),
              render_fraction(e.num, e.den) + (e.exact ? "" : " up to +-g"), kAnchorDelta);
    }
  }
}

void series_checks(const Scenario& sc, const RunOptions& opt, VerificationReport& rep) {
  const auto& d = *sc.datum;
  const NovikovComplexResult nc = novikov_complex(d);
  for (const auto& inc : nc.incidences) {
    const NovikovSeries rational = expand(inc.value, opt.order);
    const NovikovSeries iterated = incidence_series(d, inc.r, inc.s, opt.order);
    rep.add("n(" + inc.r + "," + inc.s + ") to order " + std::to_string(opt.order),
            rational.equals_up_to(iterated, opt.order), render(rational), render(iterated), kAnchorSeries);
  }
  if (nc.incidences.empty()) rep.note("incidences", "none (no adjacent critical points of f)");
}

void torsion_checks(const Scenario& sc, VerificationReport& rep, K1Class* tau_out) {
  const InclusionTorsion it = torsion_of_inclusion(*sc.datum);
  rep.note("path_a", render(it.path_a));
  rep.note("path_b", render(it.path_b));
  rep.add("torsion: quotient complex vs determinant product", k1_eq(it.path_a, it.path_b), render(it.path_a),
          render(it.path_b), kAnchorTorsion);
  if (it.cone_route) {
    rep.note("cone_route", render(*it.cone_route));
    rep.add("torsion: mapping cone of the inclusion vs quotient complex", k1_eq(*it.cone_route, it.path_a),
            render(*it.cone_route), render(it.path_a), "tau(Cone(C(v) -> E)) = tau(E / C(v))");
  }
  for (const auto& e : sc.expected) {
    if (e.kind != ExpectedKind::Torsion) continue;
    const K1Class want = K1Class::of_fraction(e.num, e.den);
    rep.add("expected " + e.name + " (" + e.source + ")", k1_eq(it.path_a, want), render(it.path_a), render(want),
            kAnchorTorsion);
  }
  if (tau_out) *tau_out = it.path_a;
}

std::string render_counts(const std::vector<ClosedOrbit>& census, int order) {
  std::vector<std::size_t> primes(static_cast<std::size_t>(std::max(order, 0)), 0);
  for (const auto& o : census) {
    if (o.multiplicity == 1 && o.g.theta >= 1 && o.g.theta <= order) ++primes[static_cast<std::size_t>(o.g.theta - 1)];
  }
  return render_list(primes);
}

void zeta_checks(const Scenario& sc, const RunOptions& opt, VerificationReport& rep, LocalizedElement* zeta_out) {
  const int n = opt.order;
  const auto h = h_of(sc);
  const LocalizedElement z = zeta_rational(h);
  rep.note("zeta_rational", render(z));
  const NovikovSeries eta_tr = eta_from_traces(h, n);
  rep.note("eta_traces", render(eta_tr));
  const NovikovSeries zeta_tr = zeta_from_eta(eta_tr);
  const NovikovSeries zeta_ex = expand(z, n).as_ring(CoeffRing::Rational);
  rep.add("zeta: rational expansion vs trace formula", zeta_ex.equals_up_to(zeta_tr, n), render(zeta_ex),
          render(zeta_tr), kAnchorZeta);
  if (sc.orbit_model) {
    const auto& m = *sc.orbit_model;
    const auto census = orbit_census(m, n);
    rep.note("closed orbits", std::to_string(census.size()));
    rep.note("prime orbits per period", render_counts(census, n));
    const NovikovSeries eta_orb = eta_from_orbits(census, n);
    rep.add("eta: orbit census vs trace formula", eta_orb.equals_up_to(eta_tr, n), render(eta_orb), render(eta_tr),
            kAnchorOrbits);
    const NovikovSeries zeta_orb = zeta_from_eta(eta_orb);
    rep.add("zeta: orbit census vs rational expansion", zeta_orb.equals_up_to(zeta_ex, n), render(zeta_orb),
            render(zeta_ex), kAnchorZeta);
    rep.add("zeta from the census has integer coefficients", has_integer_coefficients(zeta_orb), render(zeta_orb),
            "integral", "exp(eta) is integral for an orbit census");
    const NovikovSeries nu = nu_from_gfixed(m, n);
    rep.add("nu from G-fixed points vs eta from quasiorbits", nu.equals_up_to(eta_orb, n), render(nu), render(eta_orb),
            "nu = sum_k 1/k sum_a ind(a) g(a)");
    const auto induced = m.induced_matrices();
    std::string mismatch;
    for (int k = 1; k <= n && mismatch.empty(); ++k) {
      const auto fixed = enumerate_gfixed(m, k);
      for (std::size_t s = 0; s < induced.size() && mismatch.empty(); ++s) {
        GroupRingElement lhs(CoeffRing::Integer);
        for (const auto& fp : fixed) {
          if (fp.degree == s) lhs += GroupRingElement::monomial(fp.g, fp.index);
        }
        GroupRingElement trace(CoeffRing::Integer);
        PolyMatrix power = identity_matrix(induced[s].rows(), GroupRingElement(CoeffRing::Integer));
        for (int j = 0; j < k; ++j) power = multiply(power, induced[s]);
        for (std::size_t i = 0; i < power.rows(); ++i) trace += power(i, i);
        const GroupRingElement rhs = trace.shifted(GroupElement::theta_power(k), s % 2 == 0 ? 1 : -1);
        if (!(lhs == rhs)) {
          mismatch = "k=" + std::to_string(k) + " s=" + std::to_string(s) + ": " + render(lhs) + " vs " + render(rhs);
        }
      }
    }
    rep.add("Lefschetz-Dold count per degree and iterate", mismatch.empty(),
            mismatch.empty() ? "all k <= " + std::to_string(n) : mismatch, "(-1)^s Tr((t h_s)^k)", kAnchorFixed);
  }
  for (const auto& e : sc.expected) {
    if (e.kind != ExpectedKind::Zeta) continue;
    const bool same = z.num() * e.den == e.num * z.den();
    rep.add("expected " + e.name + " (" + e.source + ")", same, render(z), render_fraction(e.num, e.den), kAnchorZeta);
  }
  if (zeta_out) *zeta_out = z;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  static const std::map<std::string_view, Command> table{{"validate", Command::Validate}, {"novikov", Command::Novikov},
                                                         {"series", Command::Series},     {"zeta", Command::Zeta},
                                                         {"torsion", Command::Torsion},   {"verify", Command::Verify}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Novikov: return "novikov";
    case Command::Series: return "series";
    case Command::Zeta: return "zeta";
    case Command::Torsion: return "torsion";
    case Command::Verify: return "verify";
  }
  return "?";
}

VerificationReport run(Command command, const Scenario& sc, const RunOptions& opt) {
  VerificationReport rep;
  rep.scenario = sc.name;
  rep.command = command_name(command);
  rep.order = opt.order;
  try {
    if (opt.order < 1) throw Error("--order must be at least 1");
    const bool needs_datum = command == Command::Novikov || command == Command::Series || command == Command::Torsion;
    if (needs_datum && !sc.datum) throw Unsupported("scenario has no datum");
    switch (command) {
      case Command::Validate:
        validate_checks(sc, rep);
        break;
      case Command::Novikov:
        novikov_checks(sc, rep);
        break;
      case Command::Series:
        series_checks(sc, opt, rep);
        break;
      case Command::Zeta:
        zeta_checks(sc, opt, rep, nullptr);
        break;
      case Command::Torsion:
        torsion_checks(sc, rep, nullptr);
        break;
      case Command::Verify: {
        validate_checks(sc, rep);
        K1Class tau;
        LocalizedElement zeta;
        if (sc.datum) {
          novikov_checks(sc, rep);
          series_checks(sc, opt, rep);
          torsion_checks(sc, rep, &tau);
        }
        zeta_checks(sc, opt, rep, &zeta);
        if (sc.datum && sc.orbit_model) {
          const K1Class zc = K1Class::of_unit(zeta);
          rep.add("torsion of the inclusion equals the zeta class", k1_eq(tau, zc), render(tau), render(zc), kAnchorMain);
        }
        break;
      }
    }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  return rep;
}

VerificationReport run_file(Command command, const std::string& path, const RunOptions& opt) {
  try {
    ParseOptions po;
    po.validate_datum = command != Command::Validate;
    return run(command, parse_scenario(path, po), opt);
  } catch (const Error& e) {
    VerificationReport rep;
    rep.scenario = std::filesystem::path(path).stem().string();
    rep.command = command_name(command);
    rep.order = opt.order;
    rep.error = e.what();
    return rep;
  }
}

std::vector<VerificationReport> run_directory(Command command, const std::string& dir, const RunOptions& opt) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<VerificationReport> out(files.size());
  parallel_for(files.size(), [&](std::size_t i) { out[i] = run_file(command, files[i], opt); });
  return out;
}

}  // namespace nvlab
