#include "nvlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nvlab/errors.hpp"

namespace nvlab {

namespace {

using nlohmann::json;

/// Best-effort line of a field: the object keys along the path are searched
/// for in order, each after the previous match.
std::size_t line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& key : path) {
    if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0])) && key.find_first_not_of("0123456789") == std::string::npos) {
      continue;  // array index or degree key: keep the parent position
    }
    const std::size_t found = text.find("\"" + key + "\"", pos);
    if (found == std::string::npos) break;
    pos = found;
  }
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class Reader {
 public:
  Reader(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& message) const {
    std::string field;
    for (const auto& p : path) field += "/" + p;
    if (field.empty()) field = "/";
    throw SchemaError(origin_ + ":" + std::to_string(line_of(text_, path)) + ": field " + field + ": " + message);
  }

  const json& require(const json& obj, const std::vector<std::string>& path, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) {
      auto p = path;
      p.push_back(key);
      fail(p, "missing required field");
    }
    return *it;
  }

  void only_keys(const json& obj, const std::vector<std::string>& path, std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.count(k)) {
        auto p = path;
        p.push_back(k);
        fail(p, "unknown field");
      }
    }
  }

  std::string string_of(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  GroupRingElement element(const json& v, const std::vector<std::string>& path, const GradedGroup& group) const {
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number_integer()) {
      text = std::to_string(v.get<long long>());
    } else {
      fail(path, "expected a ring element (string or integer)");
    }
    try {
      return parse_group_ring_element(text, group, CoeffRing::Integer);
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }

  std::vector<std::vector<std::string>> label_table(const json& v, const std::vector<std::string>& path) const {
    if (!v.is_array()) fail(path, "expected an array of per-degree label arrays");
    std::vector<std::vector<std::string>> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      auto pk = path;
      pk.push_back(std::to_string(k));
      if (!v[k].is_array()) fail(pk, "expected an array of labels");
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < v[k].size(); ++i) {
        auto pi = pk;
        pi.push_back(std::to_string(i));
        labels.push_back(string_of(v[k][i], pi));
      }
      out.push_back(std::move(labels));
    }
    return out;
  }

  PolyMatrix matrix(const json& v, const std::vector<std::string>& path, std::size_t rows, std::size_t cols,
                    const GradedGroup& group) const {
    PolyMatrix m(rows, cols, GroupRingElement(CoeffRing::Integer));
    if (!v.is_array()) fail(path, "expected an array of rows");
    if (v.size() != rows) {
      fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < rows; ++i) {
      auto pi = path;
      pi.push_back(std::to_string(i));
      if (!v[i].is_array() || v[i].size() != cols) fail(pi, "expected a row of " + std::to_string(cols) + " entries");
      for (std::size_t j = 0; j < cols; ++j) {
        auto pj = pi;
        pj.push_back(std::to_string(j));
        m(i, j) = element(v[i][j], pj, group);
      }
    }
    return m;
  }

  /// Per-degree matrices keyed by the degree as a string; missing degrees are zero.
  std::vector<PolyMatrix> matrices(const json& obj, const std::vector<std::string>& path, const std::string& key,
                                   std::size_t degrees, const std::function<std::pair<std::size_t, std::size_t>(std::size_t)>& shape,
                                   const GradedGroup& group) const {
    std::vector<PolyMatrix> out;
    for (std::size_t k = 0; k < degrees; ++k) {
      const auto [r, c] = shape(k);
      out.emplace_back(r, c, GroupRingElement(CoeffRing::Integer));
    }
    auto it = obj.find(key);
    if (it == obj.end()) return out;
    auto p = path;
    p.push_back(key);
    if (!it->is_object()) fail(p, "expected an object keyed by degree");
    for (const auto& [deg, value] : it->items()) {
      auto pd = p;
      pd.push_back(deg);
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoul(deg, &used);
        if (used != deg.size()) throw std::invalid_argument(deg);
      } catch (const std::exception&) {
        fail(pd, "degree key must be a non-negative integer");
      }
      if (k >= degrees) fail(pd, "degree " + deg + " is outside 0.." + std::to_string(degrees == 0 ? 0 : degrees - 1));
      const auto [r, c] = shape(k);
      out[k] = matrix(value, pd, r, c, group);
    }
    return out;
  }

  const std::string& text() const { return text_; }
  const std::string& origin() const { return origin_; }

 private:
  const std::string& text_;
  std::string origin_;
};

std::size_t rank_at(const std::vector<std::vector<std::string>>& labels, std::size_t k) {
  return k < labels.size() ? labels[k].size() : 0;
}

CyclicCobordismDatum read_datum(const Reader& rd, const json& v, const GradedGroup& group) {
  const std::vector<std::string> path{"datum"};
  if (!v.is_object()) rd.fail(path, "expected an object");
  rd.only_keys(v, path, {"labels_u", "labels_v", "bdry1", "bdryv", "P", "N", "h"});
  CyclicCobordismDatum d;
  d.group = group;
  d.labels_u = rd.label_table(rd.require(v, path, "labels_u"), {"datum", "labels_u"});
  d.labels_v = rd.label_table(rd.require(v, path, "labels_v"), {"datum", "labels_v"});
  if (d.labels_u.size() != d.labels_v.size()) {
    rd.fail({"datum", "labels_v"}, "labels_u and labels_v must list the same number of degrees");
  }
  std::set<std::string> seen;
  for (const auto* table : {&d.labels_u, &d.labels_v}) {
    for (const auto& row : *table) {
      for (const auto& l : row) {
        if (!seen.insert(l).second) rd.fail({"datum"}, "duplicate basis label '" + l + "'");
      }
    }
  }
  const std::size_t n = d.labels_u.size();
  const auto& lu = d.labels_u;
  const auto& lv = d.labels_v;
  const auto prev = [](const std::vector<std::vector<std::string>>& l, std::size_t k) {
    return k == 0 ? std::size_t{0} : rank_at(l, k - 1);
  };
  d.bdry1 = rd.matrices(v, path, "bdry1", n, [&](std::size_t k) { return std::pair{prev(lu, k), rank_at(lu, k)}; }, group);
  d.bdryv = rd.matrices(v, path, "bdryv", n, [&](std::size_t k) { return std::pair{prev(lv, k), rank_at(lv, k)}; }, group);
  d.p = rd.matrices(v, path, "P", n, [&](std::size_t k) { return std::pair{prev(lu, k), rank_at(lv, k)}; }, group);
  d.n = rd.matrices(v, path, "N", n, [&](std::size_t k) { return std::pair{rank_at(lv, k), rank_at(lu, k)}; }, group);
  d.h = rd.matrices(v, path, "h", n, [&](std::size_t k) { return std::pair{rank_at(lu, k), rank_at(lu, k)}; }, group);
  return d;
}

CyclicCobordismDatum read_mapping_torus(const Reader& rd, const json& v, const GradedGroup& group) {
  const std::vector<std::string> path{"mapping_torus"};
  if (!v.is_object()) rd.fail(path, "expected an object");
  rd.only_keys(v, path, {"labels", "bdry1", "h"});
  const auto labels = rd.label_table(rd.require(v, path, "labels"), {"mapping_torus", "labels"});
  const std::size_t n = labels.size();
  const auto prev = [&](std::size_t k) { return k == 0 ? std::size_t{0} : rank_at(labels, k - 1); };
  const auto bdry1 =
      rd.matrices(v, path, "bdry1", n, [&](std::size_t k) { return std::pair{prev(k), rank_at(labels, k)}; }, group);
  const auto h = rd.matrices(v, path, "h", n,
                             [&](std::size_t k) { return std::pair{rank_at(labels, k), rank_at(labels, k)}; }, group);
  CyclicCobordismDatum d = mapping_torus_datum(h, bdry1, group);
  d.labels_u = labels;
  return d;
}

GraphSelfMap read_orbit_model(const Reader& rd, const json& v, const GradedGroup& group) {
  const std::vector<std::string> path{"orbit_model"};
  if (!v.is_object()) rd.fail(path, "expected an object");
  rd.only_keys(v, path, {"cells"});
  const json& cells = rd.require(v, path, "cells");
  GraphSelfMap m;
  m.group = group;
  if (!cells.is_array()) rd.fail({"orbit_model", "cells"}, "expected an array of per-degree cell arrays");
  for (std::size_t s = 0; s < cells.size(); ++s) {
    const std::vector<std::string> ps{"orbit_model", "cells", std::to_string(s)};
    if (!cells[s].is_array()) rd.fail(ps, "expected an array of cells");
    std::map<std::string, std::size_t> index;
    std::vector<Cell> degree_cells;
    for (std::size_t c = 0; c < cells[s].size(); ++c) {
      auto pc = ps;
      pc.push_back(std::to_string(c));
      if (!cells[s][c].is_object()) rd.fail(pc, "expected a cell object");
      Cell cell;
      cell.name = rd.string_of(rd.require(cells[s][c], pc, "name"), pc);
      if (!index.emplace(cell.name, c).second) rd.fail(pc, "duplicate cell name '" + cell.name + "'");
      degree_cells.push_back(std::move(cell));
    }
    for (std::size_t c = 0; c < cells[s].size(); ++c) {
      auto pc = ps;
      pc.push_back(std::to_string(c));
      rd.only_keys(cells[s][c], pc, {"name", "branches"});
      auto it = cells[s][c].find("branches");
      if (it == cells[s][c].end()) continue;
      auto pb = pc;
      pb.push_back("branches");
      if (!it->is_array()) rd.fail(pb, "expected an array of branches");
      for (std::size_t b = 0; b < it->size(); ++b) {
        auto pbi = pb;
        pbi.push_back(std::to_string(b));
        const json& br = (*it)[b];
        if (!br.is_object()) rd.fail(pbi, "expected a branch object");
        rd.only_keys(br, pbi, {"to", "sign", "label"});
        const std::string to = rd.string_of(rd.require(br, pbi, "to"), pbi);
        auto target = index.find(to);
        if (target == index.end()) rd.fail(pbi, "unknown target cell '" + to + "' in degree " + std::to_string(s));
        Branch branch;
        branch.target = target->second;
        if (auto sg = br.find("sign"); sg != br.end()) {
          if (!sg->is_number_integer() || (sg->get<int>() != 1 && sg->get<int>() != -1)) rd.fail(pbi, "sign must be 1 or -1");
          branch.sign = sg->get<int>();
        }
        if (auto lb = br.find("label"); lb != br.end()) {
          const GroupRingElement e = rd.element(*lb, pbi, group);
          if (!e.is_monomial() || e.terms().front().c != 1 || !e.in_h()) {
            rd.fail(pbi, "label must be a single element of H, got " + render(e));
          }
          branch.label = e.terms().front().g;
        }
        degree_cells[c].branches.push_back(branch);
      }
    }
    m.cells.push_back(std::move(degree_cells));
  }
  return m;
}

void read_fraction(const Reader& rd, const json& v, const std::vector<std::string>& path, const GradedGroup& group,
                   ExpectedEntry& e) {
  if (v.is_object()) {
    rd.only_keys(v, path, {"num", "den"});
    e.num = rd.element(rd.require(v, path, "num"), path, group);
    if (auto d = v.find("den"); d != v.end()) e.den = rd.element(*d, path, group);
  } else {
    e.num = rd.element(v, path, group);
  }
  if (e.den.is_zero()) rd.fail(path, "zero denominator");
}

std::vector<ExpectedEntry> read_expected(const Reader& rd, const json& v, const GradedGroup& group) {
  const std::vector<std::string> path{"expected"};
  if (!v.is_object()) rd.fail(path, "expected an object of named results");
  std::vector<ExpectedEntry> out;
  for (const auto& [name, entry] : v.items()) {
    const std::vector<std::string> pe{"expected", name};
    if (!entry.is_object()) rd.fail(pe, "expected an object with value and source");
    rd.only_keys(entry, pe, {"kind", "value", "source", "r", "s", "exact"});
    ExpectedEntry e;
    e.name = name;
    std::string kind = name;
    if (auto k = entry.find("kind"); k != entry.end()) kind = rd.string_of(*k, pe);
    e.source = rd.string_of(rd.require(entry, pe, "source"), pe);
    const json& value = rd.require(entry, pe, "value");
    auto pv = pe;
    pv.push_back("value");
    if (kind == "zeta") {
      e.kind = ExpectedKind::Zeta;
      read_fraction(rd, value, pv, group, e);
    } else if (kind == "torsion") {
      e.kind = ExpectedKind::Torsion;
      read_fraction(rd, value, pv, group, e);
    } else if (kind == "incidence") {
      e.kind = ExpectedKind::Incidence;
      e.r = rd.string_of(rd.require(entry, pe, "r"), pe);
      e.s = rd.string_of(rd.require(entry, pe, "s"), pe);
      if (auto x = entry.find("exact"); x != entry.end()) {
        if (!x->is_boolean()) rd.fail(pe, "exact must be a boolean");
        e.exact = x->get<bool>();
      }
      read_fraction(rd, value, pv, group, e);
    } else if (kind == "novikov_betti") {
      e.kind = ExpectedKind::NovikovBetti;
      if (!value.is_array()) rd.fail(pv, "expected an array of ranks");
      for (const auto& b : value) {
        if (!b.is_number_unsigned()) rd.fail(pv, "ranks must be non-negative integers");
        e.betti.push_back(b.get<std::size_t>());
      }
    } else {
      rd.fail(pe, "unknown kind '" + kind + "' (zeta, torsion, incidence, novikov_betti)");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin, ParseOptions options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto begin = text.begin();
    const std::size_t line = static_cast<std::size_t>(std::count(begin, begin + static_cast<std::ptrdiff_t>(byte), '\n')) + 1;
    const std::size_t last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
    const std::size_t column = last_nl == std::string::npos ? byte + 1 : byte - last_nl;
    throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }
  const Reader rd(text, origin);
  if (!doc.is_object()) rd.fail({}, "a scenario is a JSON object");
  rd.only_keys(doc, {}, {"name", "description", "h_rank", "datum", "mapping_torus", "orbit_model", "expected"});

  Scenario sc;
  sc.origin = origin;
  sc.name = rd.string_of(rd.require(doc, {}, "name"), {"name"});
  if (auto it = doc.find("description"); it != doc.end()) sc.description = rd.string_of(*it, {"description"});
  if (auto it = doc.find("h_rank"); it != doc.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() > kMaxHRank) {
      rd.fail({"h_rank"}, "expected an integer between 0 and " + std::to_string(kMaxHRank));
    }
    sc.group = GradedGroup(it->get<std::size_t>());
  }
  const bool has_datum = doc.contains("datum");
  const bool has_torus = doc.contains("mapping_torus");
  if (has_datum && has_torus) rd.fail({"mapping_torus"}, "give either datum or mapping_torus, not both");
  if (!has_datum && !has_torus && !doc.contains("orbit_model")) {
    rd.fail({}, "a scenario needs a datum, a mapping_torus or an orbit_model");
  }
  if (has_datum) sc.datum = read_datum(rd, doc["datum"], sc.group);
  if (has_torus) {
    sc.mapping_torus = true;
    sc.datum = read_mapping_torus(rd, doc["mapping_torus"], sc.group);
  }
  if (auto it = doc.find("orbit_model"); it != doc.end()) sc.orbit_model = read_orbit_model(rd, *it, sc.group);
  if (auto it = doc.find("expected"); it != doc.end()) sc.expected = read_expected(rd, *it, sc.group);
  if (sc.datum && options.validate_datum) check_datum(*sc.datum);
  return sc;
}

Scenario parse_scenario(const std::string& path, ParseOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path, options);
}

}  // namespace nvlab
