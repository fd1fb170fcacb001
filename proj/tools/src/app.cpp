#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "tmc/cli/commands.hpp"
#include "tmc/errors.hpp"

namespace tmc::cli {

namespace {

struct RawOptions {
  std::string surface = "slice_sphere";
  std::optional<int> n;
  std::optional<double> t0, rho, eps, r, fd_step;
  std::optional<std::string> grid, out, timestamp;
  std::vector<std::string> tol;
  std::uint64_t seed = 1;
  std::string format = "json";
};

RunConfig to_config(const RawOptions& o) {
  RunConfig c;
  c.surface = o.surface;
  c.params.n = o.n;
  c.params.t0 = o.t0;
  c.params.rho = o.rho;
  c.params.eps = o.eps;
  c.params.r = o.r;
  if (o.grid) c.grid = parse_grid(*o.grid);
  c.fd_step = o.fd_step;
  for (const auto& t : o.tol) c.tolerances.insert_or_assign(parse_tolerance(t).first, parse_tolerance(t).second);
  c.seed = o.seed;
  c.out = o.out;
  c.format = o.format == "csv" ? OutputFormat::csv : OutputFormat::json;
  if (o.timestamp) {
    static const std::regex rfc3339(R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2})$)");
    if (!std::regex_match(*o.timestamp, rfc3339)) throw CliError(kExitUsage, "timestamp must be RFC 3339");
    c.timestamp = o.timestamp;
  }
  c.validate();
  return c;
}

int finish(const RunReport& report, const RunConfig& config, std::ostream& out) {
  emit(report, config, out);
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification suite for surfaces in S^n x R", "tmclab"};
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RawOptions raw;
  app.add_option("--surface", raw.surface, "Catalog surface name");
  app.add_option("--n", raw.n, "Sphere dimension (slice_sphere)");
  app.add_option("--t0", raw.t0, "Height of the slice");
  app.add_option("--rho", raw.rho, "Geodesic radius (small_sphere)");
  app.add_option("--eps", raw.eps, "Height amplitude (graph_torus)");
  app.add_option("--r", raw.r, "Radius (cylinder_patch)");
  app.add_option("--grid", raw.grid, "Quadrature resolution NUxNV, each in [8, 4096]");
  app.add_option("--fd-step", raw.fd_step, "Finite-difference step for difference jets");
  app.add_option("--seed", raw.seed, "Seed for random fields, variations and matrices");
  app.add_option("--tol", raw.tol, "Tolerance override NAME=VALUE (repeatable)");
  app.add_option("--out", raw.out, "Output file (stdout when absent)");
  app.add_option("--format", raw.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--timestamp", raw.timestamp, "RFC 3339 timestamp recorded in the report");

  bool catalog_json = false;
  auto* catalog = app.add_subcommand("catalog", "List catalog surfaces");
  catalog->add_flag("--json", catalog_json, "Print a JSON array");

  auto* check = app.add_subcommand("check", "Run the full suite on one surface");

  Lemma34Options l34;
  auto* lemma34 = app.add_subcommand("lemma34", "Sweep the symmetric-matrix inequality");
  lemma34->add_option("--trials", l34.trials, "Number of random families");
  lemma34->add_option("--p", l34.p, "Number of matrices (random in [2, 6] when absent)");
  lemma34->add_option("--m", l34.m, "Matrix size (random in [1, 5] when absent)");

  double delta = 1e-3;
  auto* variation = app.add_subcommand("variation", "First-variation oracle with ten seeded variations");
  variation->add_option("--delta", delta, "Difference step in [1e-4, 1e-2]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (catalog->parsed()) {
      out << cmd_catalog(catalog_json);
      return kExitPass;
    }
    const RunConfig config = to_config(raw);
    if (check->parsed()) return finish(cmd_check(config), config, out);
    if (lemma34->parsed()) return finish(cmd_lemma34(config, l34), config, out);
    if (variation->parsed()) return finish(cmd_variation(config, delta), config, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitOutOfRange;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace tmc::cli
