#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvlab/novikov.hpp"
#include "nvlab/zeta.hpp"

namespace nvlab {

enum class ExpectedKind { Zeta, Torsion, Incidence, NovikovBetti };

/// A named expected result with its provenance note.
///
/// Zeta and torsion carry a fraction num/den; an incidence carries the pair
/// (r, s) and a fraction compared up to +-g unless `exact`; Betti numbers are a list.
struct ExpectedEntry {
  std::string name;
  ExpectedKind kind = ExpectedKind::Zeta;
  GroupRingElement num;
  GroupRingElement den = GroupRingElement::constant(1);
  std::string r, s;
  bool exact = false;
  std::vector<std::size_t> betti;
  std::string source;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string origin;  ///< file path or "<memory>"
  GradedGroup group;
  std::optional<CyclicCobordismDatum> datum;
  bool mapping_torus = false;
  std::optional<GraphSelfMap> orbit_model;
  std::vector<ExpectedEntry> expected;
};

struct ParseOptions {
  /// Run check_datum after parsing (InvalidDatum propagates).
  bool validate_datum = true;
};

/// Reads a scenario document. Syntax errors raise ParseError with line and
/// column; schema violations raise SchemaError naming the field path and line.
Scenario parse_scenario(const std::string& path, ParseOptions options = {});
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<memory>",
                             ParseOptions options = {});

}  // namespace nvlab
