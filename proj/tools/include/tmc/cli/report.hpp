#pragma once

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tmc::cli {

using Json = nlohmann::ordered_json;

enum class CheckKind {
  identity,
  inequality,
  equality_case,
};

const char* to_string(CheckKind kind);

struct CheckReport {
  std::string name;
  CheckKind kind = CheckKind::identity;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();  // residual for identities, slack otherwise
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
};

struct RunReport {
  std::string version;
  std::string timestamp;  // RFC 3339, UTC
  Json config;
  std::vector<CheckReport> checks;

  /// Conjunction of the individual passes; false for an empty report.
  bool pass() const;
  const CheckReport* find(const std::string& name) const;
};

enum class OutputFormat {
  json,
  csv,
};

/// Shortest decimal that parses back to the same double; "" when not finite.
std::string format_double(double x);

/// Fields in fixed order: version, timestamp, config, checks, pass.
Json to_json(const RunReport& report);
/// Indented JSON whose floats use `format_double` (non-finite values become null).
std::string dump_json(const Json& j);
/// Header name,kind,lhs,rhs,residual,tolerance,pass, one row per check.
std::string to_csv(const RunReport& report);

std::string render(const RunReport& report, OutputFormat format);

}  // namespace tmc::cli
