#include "tmc/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tmc::cli {

namespace {

void write_json(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        os << (first ? "" : ",\n") << pad << Json(key).dump() << ": ";
        write_json(os, value, depth + 1);
        first = false;
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << (i ? ",\n" : "") << pad;
        write_json(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      std::string s = format_double(x);
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::identity:
      return "identity";
    case CheckKind::inequality:
      return "inequality";
    case CheckKind::equality_case:
      return "equality-case";
  }
  return "identity";
}

bool RunReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckReport* RunReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const RunReport& report) {
  Json j;
  j["version"] = report.version;
  j["timestamp"] = report.timestamp;
  j["config"] = report.config;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json r;
    r["name"] = c.name;
    r["kind"] = to_string(c.kind);
    r["lhs"] = number(c.lhs);
    r["rhs"] = number(c.rhs);
    r["residual"] = number(c.residual);
    r["tolerance"] = number(c.tolerance);
    r["pass"] = c.pass;
    r["notes"] = c.notes;
    checks.push_back(std::move(r));
  }
  j["checks"] = std::move(checks);
  j["pass"] = report.pass();
  return j;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

std::string to_csv(const RunReport& report) {
  std::ostringstream os;
  os << "name,kind,lhs,rhs,residual,tolerance,pass\n";
  for (const auto& c : report.checks) {
    os << c.name << ',' << to_string(c.kind) << ',' << format_double(c.lhs) << ',' << format_double(c.rhs) << ','
       << format_double(c.residual) << ',' << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::string render(const RunReport& report, OutputFormat format) {
  return format == OutputFormat::json ? dump_json(to_json(report)) : to_csv(report);
}

}  // namespace tmc::cli
