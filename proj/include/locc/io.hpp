#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "locc/engine.hpp"
#include "locc/kraus.hpp"

namespace locc {

// Input problem with a location: "line 7, row 2, column 1: ...".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text format (see docs/formats.md):
//   dims <dA> <dB>
//   outcome            (repeated)
//   A
//   <dA rows of dA "re im" fraction pairs>
//   B
//   <dB rows of dB "re im" fraction pairs>
// '#' starts a comment. Throws ParseError for syntax, Hermiticity and
// positivity problems; completeness is left to validate_measurement.
SeparableMeasurement parse_measurement_text(std::string_view text);
SeparableMeasurement parse_measurement(const std::filesystem::path& path);
std::string serialize_measurement(const SeparableMeasurement& m);

// Graphviz digraph, roots on the left.
std::string to_dot(const Tree& t);

struct RunInfo {
  std::string input;
  SearchConfig config;
  double rank_tol = 1e-10;
};

// Everything except the "run_info" member is a deterministic function of the
// input and the configuration.
nlohmann::ordered_json run_report(const RunInfo& info, const SeparableMeasurement& m, const SynthesisOutcome& out,
                                  const std::optional<InstrumentReport>& instrument);
void add_run_info(nlohmann::ordered_json& report, double wall_seconds);

}  // namespace locc
