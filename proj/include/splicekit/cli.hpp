#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "splicekit/io.hpp"
#include "splicekit/splice.hpp"

namespace splicekit {

// Exit codes: all checks pass, a checked condition fails (or stays undecided), input invalid.
inline constexpr int kExitPass = 0;
inline constexpr int kExitConditionFails = 1;
inline constexpr int kExitInvalidInput = 2;

struct RunOptions {
  std::string command;  // validate det group splice maximal check equations reduce report
  std::string check = "all";  // semigroup congruence ideal okuma34 okuma33 all
  bool equivariant = false;
  std::string end_node;
  ReductionMode mode = ReductionMode::normalized;
  std::size_t enum_cap = 0;  // 0 keeps the library defaults
};

struct RunResult {
  nlohmann::ordered_json report;
  std::string text;
  int exit_code = kExitPass;
};

RunResult run_command(const GraphDocument& doc, const RunOptions& opts);
// Parse failures become exit code 2 with an error section.
RunResult run_file(const std::filesystem::path& path, const RunOptions& opts);

// SPLICEKIT_ENUM_CAP, or 0 when unset.
std::size_t enum_cap_from_env();

// <dir>/<name>.json and <name>.report.json for each built-in fixture; returns the paths written.
std::vector<std::filesystem::path> emit_fixtures(const std::filesystem::path& dir);

}  // namespace splicekit
