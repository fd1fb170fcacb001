#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmc/cli/report.hpp"
#include "tmc/immersion.hpp"

namespace tmc::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,            // checks ran, at least one failed
  kExitUnknownSurface = 2,  // unknown or unusable surface, invalid matrix dimensions
  kExitOutOfRange = 3,      // resolution, tolerance, step or parameter out of range
  kExitUnwritable = 4,      // output path cannot be written
  kExitUsage = 5,           // malformed command line or config file
};

/// Error carrying the exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

inline constexpr int kMinGrid = 8;
inline constexpr int kMaxGrid = 4096;

struct RunConfig {
  std::string surface = "slice_sphere";
  CatalogParams params;
  std::optional<std::vector<int>> grid;  // NU, NV; catalog default when unset
  std::optional<double> fd_step;
  std::map<std::string, double> tolerances;  // overrides of the defaults
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> timestamp;  // RFC 3339; SOURCE_DATE_EPOCH, then the clock, when unset

  /// Throws CliError (exit 3) for non-positive tolerances or fd step,
  /// or a resolution outside [8, 4096].
  void validate() const;
};

/// Default tolerance of every named check.
const std::map<std::string, double>& default_tolerances();

/// "NUxNV" -> {NU, NV}; throws CliError (exit 3) on malformed input or out-of-range values.
std::vector<int> parse_grid(const std::string& text);
/// "NAME=VALUE"; throws CliError (exit 5) when malformed or when NAME is not a known check.
std::pair<std::string, double> parse_tolerance(const std::string& text);

/// Catalog surface for `config`; throws CliError with exit 2 (unknown name) or 3 (bad parameter).
Immersion resolve_surface(const RunConfig& config);

std::string version();
/// Current time, or SOURCE_DATE_EPOCH when set, as RFC 3339 UTC.
std::string current_timestamp();

/// Catalog listing, one line per entry or a JSON array.
std::string cmd_catalog(bool json);

/// Full per-surface suite.
RunReport cmd_check(const RunConfig& config);

struct Lemma34Options {
  long trials = 100000;
  std::optional<int> p;
  std::optional<int> m;
};
/// Matrix inequality sweep plus the extremal regression pair. Throws CliError
/// with exit 2 for p < 2 or m < 1 and exit 3 for trials < 1.
RunReport cmd_lemma34(const RunConfig& config, const Lemma34Options& options);

inline constexpr int kVariationCount = 10;
/// Ten seeded first-variation checks. Throws CliError with exit 3 when the step
/// is outside [1e-4, 1e-2] and exit 2 for a non-compact surface.
RunReport cmd_variation(const RunConfig& config, double delta = 1e-3);

/// Writes the rendered report to config.out (or `fallback` when unset);
/// throws CliError (exit 4) when the file cannot be written.
void emit(const RunReport& report, const RunConfig& config, std::ostream& fallback);

/// Entry point of the command-line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tmc::cli
