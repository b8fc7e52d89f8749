#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "zetaforms/params.hpp"

namespace zetaforms {

inline constexpr const char* kToolVersion = "zetaforms 1.0.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// One run of the tool: a command plus everything it needs. Mirrors the JSON
// config schema exactly; parsing rejects unknown keys.
struct RunConfig {
  std::string command;  // constants | verify | search | report
  ProofParameters params;
  bool r_set = false;  // whether the config carried an explicit r
  long precision_bits = 256;

  std::optional<long> verify_n;
  std::optional<bool> phi_checks;

  std::optional<long> M_min, M_max;
  std::optional<long> budget;
  std::string csv_path;

  std::optional<long> report_s;

  std::string output_path;
};

RunConfig parse_config(const Json& j);
Json emit_config(const RunConfig& cfg);

struct RunOutcome {
  int exit_code = 0;
  Json report;
};

/// Dispatches the command and maps failures to the documented exit codes:
/// 0 success, 2 invalid config, 3 precondition violation, 4 failed check.
RunOutcome run_command(const RunConfig& cfg);

/// CSV table of search evaluations (header M,deltas,varpi,r0,C0).
std::string search_csv(const Json& report);

}  // namespace zetaforms
