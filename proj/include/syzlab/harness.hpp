#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "syzlab/errors.hpp"
#include "syzlab/koszul.hpp"
#include "syzlab/models.hpp"

namespace syzlab {

inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitDegenerate = 2,
  kExitUsage = 3,
};

/// Thrown for bad command-line or suite-config input (exit code 3).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Route { Quotient, Points, Both };
std::string to_string(Route route);
Route route_from_string(const std::string& name);

std::string to_string(GonalShape shape);
GonalShape shape_from_string(const std::string& name);

/// One job: a command and its parameters. Unused fields are ignored.
struct RunConfig {
  std::string command;  // verify-class, scroll, gonal, maxcliff, ci, dvr-demo
  int k = 0;
  int genus = 0;
  int kmax = 0;
  int size = 0;   // dvr-demo matrix size
  int count = 1;  // dvr-demo instance count
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 1;
  Route route = Route::Both;
  GonalShape shape = GonalShape::KK1;
  /// Overrides the expected extra_syzygies value of strand commands.
  std::optional<std::size_t> expected_extra;
  std::optional<std::string> output;
  std::optional<std::string> dump_dir;
  unsigned threads = 0;  // 0: default_thread_count()
};

/// Throws ConfigError on unknown commands, missing parameters, or a prime
/// that is not a prime of at least 1000.
void validate(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json to_json(const RunConfig& config);

struct CommandOutcome {
  int exit_code = kExitPass;
  nlohmann::ordered_json report;
};

/// Strand entries as report rows.
nlohmann::ordered_json strand_json(const StrandResult& strand);

CommandOutcome cmd_verify_class(const RunConfig& config);
CommandOutcome cmd_scroll(const RunConfig& config);
CommandOutcome cmd_gonal(const RunConfig& config);
CommandOutcome cmd_maxcliff(const RunConfig& config);
CommandOutcome cmd_ci(const RunConfig& config);
CommandOutcome cmd_dvr_demo(const RunConfig& config);

/// Validates and dispatches one job. Exceptions become exit codes:
/// ConfigError 3, DegenerateInstance and InsufficientPoints 2, other
/// library errors 1. Never throws.
CommandOutcome run(const RunConfig& config);

/// Runs every entry of a JSON list of RunConfig objects, `threads` jobs at a
/// time, and aggregates a summary. Throws ConfigError on malformed input.
CommandOutcome cmd_suite(const nlohmann::ordered_json& entries, unsigned threads);
CommandOutcome cmd_suite_file(const std::string& path, unsigned threads);

/// Drops timing fields (elapsed_ms, total_ms) recursively, for comparing
/// reports of repeated runs.
nlohmann::ordered_json strip_timing(nlohmann::ordered_json report);

}  // namespace syzlab
