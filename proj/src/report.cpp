#include "nvlab/report.hpp"

#include <sstream>

#include "json.hpp"
#include "nvlab/errors.hpp"

namespace nvlab {

using nlohmann::json;

bool VerificationReport::ok() const {
  if (!error.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void VerificationReport::add(std::string name, bool pass, std::string left, std::string right, std::string anchor) {
  checks.push_back({std::move(name), pass, std::move(left), std::move(right), std::move(anchor)});
}

void VerificationReport::note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }

std::string to_json(const VerificationReport& report) {
  json doc;
  doc["scenario"] = report.scenario;
  doc["command"] = report.command;
  doc["order"] = report.order;
  doc["status"] = report.ok() ? "pass" : "fail";
  if (!report.error.empty()) doc["error"] = report.error;
  doc["details"] = json::array();
  for (const auto& [k, v] : report.details) doc["details"].push_back({{"key", k}, {"value", v}});
  doc["checks"] = json::array();
  for (const auto& c : report.checks) {
    doc["checks"].push_back({{"name", c.name},
                             {"status", c.pass ? "pass" : "fail"},
                             {"left", c.left},
                             {"right", c.right},
                             {"anchor", c.anchor}});
  }
  return doc.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  try {
    VerificationReport r;
    r.scenario = doc.at("scenario").get<std::string>();
    r.command = doc.at("command").get<std::string>();
    r.order = doc.at("order").get<int>();
    if (doc.contains("error")) r.error = doc["error"].get<std::string>();
    for (const auto& d : doc.at("details")) r.details.emplace_back(d.at("key").get<std::string>(), d.at("value").get<std::string>());
    for (const auto& c : doc.at("checks")) {
      const std::string status = c.at("status").get<std::string>();
      if (status != "pass" && status != "fail") throw SchemaError("report: check status must be pass or fail");
      r.checks.push_back({c.at("name").get<std::string>(), status == "pass", c.at("left").get<std::string>(),
                          c.at("right").get<std::string>(), c.at("anchor").get<std::string>()});
    }
    const std::string status = doc.at("status").get<std::string>();
    if ((status == "pass") != r.ok()) throw SchemaError("report: status disagrees with the checks");
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
}

std::string to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << "scenario " << report.scenario << "  command " << report.command << "  order " << report.order << "\n";
  for (const auto& [k, v] : report.details) out << "  " << k << ": " << v << "\n";
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    if (c.pass) ++passed;
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "\n";
    out << "      left:   " << c.left << "\n";
    out << "      right:  " << c.right << "\n";
    out << "      anchor: " << c.anchor << "\n";
  }
  if (!report.error.empty()) out << "ERROR " << report.error << "\n";
  out << "result: " << (report.ok() ? "pass" : "fail") << " (" << passed << "/" << report.checks.size()
      << " checks)\n";
  return out.str();
}

}  // namespace nvlab
