#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nvlab/report.hpp"
#include "nvlab/scenario.hpp"

namespace nvlab {

enum class Command { Validate, Novikov, Series, Zeta, Torsion, Verify };

std::optional<Command> parse_command(std::string_view name);
std::string command_name(Command c);

struct RunOptions {
  int order = 12;
};

VerificationReport run(Command command, const Scenario& scenario, const RunOptions& options = {});

/// Parses and runs; parse and validation failures become a failing report.
VerificationReport run_file(Command command, const std::string& path, const RunOptions& options = {});

/// Runs every *.json under `dir` (sorted by name) in parallel.
std::vector<VerificationReport> run_directory(Command command, const std::string& dir, const RunOptions& options = {});

}  // namespace nvlab
