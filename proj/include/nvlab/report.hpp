#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nvlab {

struct Check {
  std::string name;
  bool pass = false;
  std::string left;
  std::string right;
  std::string anchor;  ///< the identity being checked

  friend bool operator==(const Check&, const Check&) = default;
};

/// Outcome of one command on one scenario: ordered facts plus checks.
struct VerificationReport {
  std::string scenario;
  std::string command;
  int order = 12;
  std::vector<std::pair<std::string, std::string>> details;
  std::vector<Check> checks;
  std::string error;  ///< set when the command aborted

  bool ok() const;
  void add(std::string name, bool pass, std::string left, std::string right, std::string anchor);
  void note(std::string key, std::string value);

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Deterministic JSON (stable key order, two-space indent).
std::string to_json(const VerificationReport& report);
/// Parses to_json output; throws ParseError or SchemaError.
VerificationReport report_from_json(const std::string& text);
std::string to_text(const VerificationReport& report);

}  // namespace nvlab
