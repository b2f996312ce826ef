#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nvlab/run.hpp"

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& arg, const std::string& scenario_dir) {
  if (fs::exists(arg)) return arg;
  const fs::path bundled = fs::path(scenario_dir) / (arg + ".json");
  if (fs::exists(bundled)) return bundled.string();
  return arg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nvlab: exact Novikov complexes, torsion and zeta functions"};
  std::string command_text;
  std::string target;
  int order = 12;
  std::string format = "text";
  bool all = false;
  std::string scenario_dir = NVLAB_SCENARIO_DIR;

  app.add_option("command", command_text, "validate | novikov | series | zeta | torsion | verify")
      ->required()
      ->check(CLI::IsMember({"validate", "novikov", "series", "zeta", "torsion", "verify"}));
  app.add_option("scenario", target, "scenario file, directory, or bundled scenario name");
  app.add_option("--order", order, "truncation order for series comparisons")->check(CLI::Range(1, 200));
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--all", all, "run every bundled scenario (or every *.json in the given directory)");
  app.add_option("--scenario-dir", scenario_dir, "directory of bundled scenarios");
  CLI11_PARSE(app, argc, argv);

  const nvlab::Command command = *nvlab::parse_command(command_text);
  const nvlab::RunOptions options{order};

  std::vector<nvlab::VerificationReport> reports;
  if (all || (!target.empty() && fs::is_directory(target))) {
    const std::string dir = target.empty() ? scenario_dir : target;
    if (!fs::is_directory(dir)) {
      std::cerr << "nvlab: not a directory: " << dir << "\n";
      return 2;
    }
    reports = nvlab::run_directory(command, dir, options);
    if (reports.empty()) {
      std::cerr << "nvlab: no *.json scenarios in " << dir << "\n";
      return 2;
    }
  } else if (!target.empty()) {
    reports.push_back(nvlab::run_file(command, resolve(target, scenario_dir), options));
  } else {
    std::cerr << "nvlab: a scenario or --all is required\n" << app.help();
    return 2;
  }

  bool ok = true;
  const bool many = reports.size() > 1 || all;
  if (format == "json" && many) std::cout << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    ok = ok && reports[i].ok();
    if (format == "json") {
      if (many && i) std::cout << ",\n";
      std::cout << nvlab::to_json(reports[i]);
    } else {
      if (i) std::cout << "\n";
      std::cout << nvlab::to_text(reports[i]);
    }
  }
  if (format == "json" && many) std::cout << "]\n";
  return ok ? 0 : 1;
}
