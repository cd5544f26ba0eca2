#pragma once

// Scenario files: sectioned `key = value` text with unit-suffixed keys, and
// the equivalent JSON object used by the HTTP service.
//
//   [signal] [hardware] [deployment] [overrides]   at most once each
//   [nodes] [obstacles]                             one section per object
//
// Obstacles take one `vertex_m = x y` line per polygon vertex. Node array
// keys default to the [hardware] IN array.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isacreq/usecases.hpp"

namespace isacreq {

enum class DiagnosticKind { kSyntax, kUnknownKey, kMissingUnit, kInvariant };

const char* to_string(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::kSyntax;
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
};

// `<line>:<column>: <kind>: <message>`
std::string format_diagnostic(const Diagnostic& d);

struct ParseResult {
  std::optional<ScenarioConfig> scenario;  // set iff diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

ParseResult parse_scenario(std::string_view text);

class ScenarioError : public ConfigError {
 public:
  explicit ScenarioError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Throws ScenarioError with the diagnostics of a failed parse.
ScenarioConfig parse_scenario_or_throw(std::string_view text);
// Throws ConfigError when the file cannot be read.
ScenarioConfig load_scenario_file(const std::string& path);

// Writes every key explicitly; parse_scenario of the result reproduces s.
std::string write_scenario_text(const ScenarioConfig& s);

// Same keys as the text format: {"signal": {...}, "hardware": {...},
// "deployment": {...}, "overrides": {...}, "nodes": [...],
// "obstacles": [{"vertices_m": [[x, y], ...]}]}.
nlohmann::json scenario_to_json(const ScenarioConfig& s);
// Diagnostics carry line 0 / column 0 and name the JSON path.
ScenarioConfig scenario_from_json(const nlohmann::json& j);

}  // namespace isacreq
