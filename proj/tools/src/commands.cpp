#include "tmc/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

#include "tmc/errors.hpp"
#include "tmc/geometry.hpp"
#include "tmc/inequalities.hpp"
#include "tmc/operators.hpp"
#include "tmc/random.hpp"
#include "tmc/variational.hpp"

#ifndef TMC_VERSION
#define TMC_VERSION "0.0.0"
#endif

namespace tmc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSliceTolerance = 1e-8;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class CheckBuilder {
 public:
  explicit CheckBuilder(const RunConfig& config) : config_(config) {}

  double tol(const std::string& name) const {
    const auto it = config_.tolerances.find(name);
    return it != config_.tolerances.end() ? it->second : default_tolerances().at(name);
  }

  /// pass iff residual <= tolerance
  CheckReport identity(const std::string& name, double lhs, double rhs, double residual, double tolerance,
                       std::string notes = {}) const {
    return {name, CheckKind::identity, lhs, rhs, residual, tolerance, residual <= tolerance, std::move(notes)};
  }

  CheckReport skipped(const std::string& name, CheckKind kind, const std::string& why) const {
    CheckReport c;
    c.name = name;
    c.kind = kind;
    c.tolerance = tol(name);
    c.pass = true;
    c.notes = "skipped: " + why;
    return c;
  }

 private:
  const RunConfig& config_;
};

CheckReport from_inequality(const InequalityReport& r, CheckKind kind) {
  CheckReport c;
  c.name = r.name;
  c.kind = kind;
  c.lhs = r.lhs;
  c.rhs = r.rhs;
  c.tolerance = r.tolerance * (1.0 + std::abs(r.rhs));
  c.residual = r.direction == Direction::identity ? std::abs(r.slack) : r.slack;
  c.pass = r.holds();
  return c;
}

/// Maxima of every pointwise residual over one order-4 sweep.
struct PointwiseSummary {
  double constraint = 0.0;
  double gauss = 0.0;
  double codazzi = 0.0;
  double dt = 0.0;
  double curvature = 0.0;
  double el = 0.0;
  double sigma_sq = 0.0;
  double simons = 0.0;
  double huisken_min = std::numeric_limits<double>::infinity();
  double huisken_abs = 0.0;
};

PointwiseSummary pointwise_sweep(const Immersion& imm, const QuadratureGrid& grid) {
  PointwiseSummary s;
  for_each_node(imm, grid, 4, [&](std::size_t, const SurfaceJet& sj) {
    const PointGeometry pg = pointwise_geometry(sj);
    s.constraint = std::max({s.constraint, pg.x.constraint_defect(), std::abs(pg.T_sq + pg.N_sq - 1.0)});
    s.gauss = std::max(s.gauss, gauss_residual(pg));
    s.codazzi = std::max(s.codazzi, codazzi_residual(pg));
    s.dt = std::max(s.dt, dt_compatibility_residual(pg));
    s.curvature = std::max(s.curvature, std::abs(gaussian_curvature(pg) - *pg.K_intrinsic));
    s.el = std::max(s.el, euler_lagrange(pg).norm());
    s.sigma_sq = std::max(s.sigma_sq, pg.sigma_sq);
    s.simons = std::max(s.simons, std::abs(simons_terms(pg).residual()));
    const double h = huisken_slack(pg);
    s.huisken_min = std::min(s.huisken_min, h);
    s.huisken_abs = std::max(s.huisken_abs, std::abs(h));
  });
  return s;
}

/// Largest relative gap between closed-form and difference jets (order 2) over
/// at most 64 nodes; nodes whose stencil would leave the domain are skipped.
std::pair<double, int> fd_gap(const Immersion& imm, const QuadratureGrid& grid, std::optional<double> step) {
  double worst = 0.0;
  int used = 0;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 64);
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    Jet fd;
    try {
      fd = fd_jet(imm, grid.point(i), 2, step);
    } catch (const BoundaryStencil&) {
      continue;
    }
    const Jet exact = jet(imm, grid.point(i), 2);
    for (std::size_t k = 0; k < exact.partials.size(); ++k) {
      const double scale = 1.0 + exact.partials[k].lpNorm<Eigen::Infinity>();
      worst = std::max(worst, (exact.partials[k] - fd.partials[k]).lpNorm<Eigen::Infinity>() / scale);
    }
    ++used;
  }
  return {worst, used};
}

template <class T>
double max_residual(const std::vector<T>& items, std::size_t& arg) {
  double worst = -1.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].residual > worst) {
      worst = items[k].residual;
      arg = k;
    }
  }
  return worst;
}

Json config_echo(const std::string& command, const RunConfig& config, const Immersion* imm,
                 const QuadratureGrid* grid) {
  Json j;
  j["command"] = command;
  if (imm) {
    j["surface"] = imm->info().name;
    Json params = Json::object();
    for (const auto& [k, v] : imm->info().params) params[k] = v;
    j["params"] = params;
  }
  if (grid) j["grid"] = grid->resolution();
  j["fd_step"] = config.fd_step ? Json(*config.fd_step) : Json(nullptr);
  j["seed"] = config.seed;
  Json tols = Json::object();
  for (const auto& [name, value] : default_tolerances()) {
    const auto it = config.tolerances.find(name);
    tols[name] = it != config.tolerances.end() ? it->second : value;
  }
  j["tolerances"] = tols;
  j["format"] = config.format == OutputFormat::json ? "json" : "csv";
  return j;
}

RunReport new_report(Json config, const RunConfig& rc) {
  RunReport r;
  r.version = version();
  r.timestamp = rc.timestamp.value_or(current_timestamp());
  r.config = std::move(config);
  return r;
}

QuadratureGrid grid_for(const RunConfig& config, const Immersion& imm) {
  const std::vector<int> res = config.grid.value_or(imm.info().default_resolution);
  return build_grid(imm.domain(), res);
}

}  // namespace

void RunConfig::validate() const {
  for (const auto& [name, value] : tolerances) {
    if (!(value > 0.0) || !std::isfinite(value)) throw CliError(kExitOutOfRange, "tolerance '" + name + "' must be positive");
  }
  if (grid) {
    if (grid->size() != 2) throw CliError(kExitOutOfRange, "grid needs two resolutions");
    for (int n : *grid) {
      if (n < kMinGrid || n > kMaxGrid) {
        throw CliError(kExitOutOfRange, "grid resolution " + std::to_string(n) + " outside [8, 4096]");
      }
    }
  }
  if (fd_step && !(*fd_step > 0.0)) throw CliError(kExitOutOfRange, "fd step must be positive");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"constraint", 1e-10},          {"fd_jets", 1e-6},
      {"gauss_equation", 1e-8},       {"codazzi_equation", 1e-7},
      {"dt_compatibility", 1e-7},     {"curvature_agreement", 1e-8},
      {"gauss_bonnet", 1e-5},         {"euler_lagrange", 1e-6},
      {"huisken", 1e-6},              {"simons", 1e-4},
      {"lemma1", 1e-5},               {"cor1", 1e-5},
      {"main_inequality", 1e-5},      {"guo_yin_inequality", 1e-5},
      {"prop3_inequality", 1e-6},     {"equality_case_audit", 1e-5},
      {"first_variation", 1e-4},      {"lemma34_sweep", 1e-12},
      {"lemma34_extremal", 1e-12},
  };
  return tols;
}

std::vector<int> parse_grid(const std::string& text) {
  static const std::regex re(R"(^\s*(\d{1,9})\s*[xX]\s*(\d{1,9})\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw CliError(kExitOutOfRange, "grid must look like NUxNV, got '" + text + "'");
  std::vector<int> g{std::stoi(m[1]), std::stoi(m[2])};
  for (int n : g) {
    if (n < kMinGrid || n > kMaxGrid) {
      throw CliError(kExitOutOfRange, "grid resolution " + std::to_string(n) + " outside [8, 4096]");
    }
  }
  return g;
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw CliError(kExitUsage, "tolerance must look like NAME=VALUE");
  const std::string name = text.substr(0, eq);
  if (!default_tolerances().count(name)) throw CliError(kExitUsage, "unknown check '" + name + "' in --tol");
  const std::string value = text.substr(eq + 1);
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') throw CliError(kExitUsage, "tolerance value '" + value + "' is not a number");
  if (!(v > 0.0) || !std::isfinite(v)) throw CliError(kExitOutOfRange, "tolerance '" + name + "' must be positive");
  return {name, v};
}

Immersion resolve_surface(const RunConfig& config) {
  const auto& entries = catalog_entries();
  const bool known = std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.name == config.surface; });
  if (!known) throw CliError(kExitUnknownSurface, "unknown surface '" + config.surface + "'");
  try {
    return catalog(config.surface, config.params);
  } catch (const InvalidArgument& e) {
    throw CliError(kExitOutOfRange, e.what());
  }
}

std::string version() { return TMC_VERSION; }

std::string current_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (*epoch != '\0' && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string cmd_catalog(bool json) {
  if (json) {
    Json arr = Json::array();
    for (const auto& e : catalog_entries()) {
      const Immersion imm = catalog(e.name);
      const auto& info = imm.info();
      Json j;
      j["name"] = e.name;
      j["signature"] = e.signature;
      Json params = Json::object();
      for (const auto& [k, v] : info.params) params[k] = v;
      j["params"] = params;
      j["sphere_dim"] = imm.sphere_dim();
      j["euler_characteristic"] = info.euler_characteristic ? Json(*info.euler_characteristic) : Json(nullptr);
      j["compact"] = info.compact;
      j["claims"] = {{"minimal", info.claims.minimal},
                     {"totally_geodesic", info.claims.totally_geodesic},
                     {"in_slice", info.claims.in_slice},
                     {"umbilical", info.claims.umbilical},
                     {"h_surface", info.claims.h_surface}};
      j["default_grid"] = info.default_resolution;
      j["summary"] = e.summary;
      arr.push_back(std::move(j));
    }
    return dump_json(arr);
  }
  std::ostringstream os;
  for (const auto& e : catalog_entries()) os << describe_claims(catalog(e.name).info()) << "\n";
  return os.str();
}

RunReport cmd_check(const RunConfig& config) {
  config.validate();
  const Immersion imm = resolve_surface(config);
  const QuadratureGrid grid = grid_for(config, imm);
  const CheckBuilder b(config);
  RunReport report = new_report(config_echo("check", config, &imm, &grid), config);
  auto& checks = report.checks;
  const auto& info = imm.info();

  // Pointwise identities.
  const PointwiseSummary s = pointwise_sweep(imm, grid);
  checks.push_back(b.identity("constraint", s.constraint, 0.0, s.constraint, b.tol("constraint"),
                              "max of ||x_s| - 1| and ||T|^2 + |N|^2 - 1|"));
  if (imm.has_closed_form_jets()) {
    const auto [gap, used] = fd_gap(imm, grid, config.fd_step);
    checks.push_back(b.identity("fd_jets", gap, 0.0, gap, b.tol("fd_jets"),
                                "closed-form vs difference jets at " + std::to_string(used) + " nodes"));
  } else {
    checks.push_back(b.skipped("fd_jets", CheckKind::identity, "no closed-form jets"));
  }
  checks.push_back(b.identity("gauss_equation", s.gauss, 0.0, s.gauss, b.tol("gauss_equation")));
  checks.push_back(b.identity("codazzi_equation", s.codazzi, 0.0, s.codazzi, b.tol("codazzi_equation")));
  checks.push_back(b.identity("dt_compatibility", s.dt, 0.0, s.dt, b.tol("dt_compatibility")));
  checks.push_back(b.identity("curvature_agreement", s.curvature, 0.0, s.curvature, b.tol("curvature_agreement"),
                              "Gauss-equation K vs metric K"));

  const double el_tol = b.tol("euler_lagrange") * (1.0 + s.sigma_sq);
  const bool certified = s.el <= el_tol;
  {
    CheckReport c{"euler_lagrange", CheckKind::identity, s.el, 0.0, s.el, el_tol, certified == info.claims.h_surface,
                  certified ? "certified H-surface" : "not stationary for the total mean curvature"};
    if (certified != info.claims.h_surface) c.notes += "; disagrees with catalog claim";
    checks.push_back(std::move(c));
  }
  {
    CheckReport c{"huisken", CheckKind::inequality, s.huisken_min, 0.0, s.huisken_min, b.tol("huisken"),
                  s.huisken_min >= -b.tol("huisken"), "min pointwise slack; max |slack| = " + fmt(s.huisken_abs)};
    checks.push_back(std::move(c));
  }
  checks.push_back(b.identity("simons", s.simons, 0.0, s.simons, b.tol("simons"), "max pointwise residual"));

  if (!info.compact) {
    for (const auto& [name, kind] :
         std::vector<std::pair<std::string, CheckKind>>{{"gauss_bonnet", CheckKind::identity},
                                                        {"lemma1", CheckKind::identity},
                                                        {"cor1", CheckKind::identity},
                                                        {"main_inequality", CheckKind::inequality},
                                                        {"guo_yin_inequality", CheckKind::inequality},
                                                        {"prop3_inequality", CheckKind::inequality},
                                                        {"equality_case_audit", CheckKind::equality_case}}) {
      checks.push_back(b.skipped(name, kind, "non-compact"));
    }
    return report;
  }

  // Integral identities.
  {
    InequalityOptions opt;
    opt.tolerance = b.tol("gauss_bonnet");
    CheckReport c = from_inequality(gauss_bonnet(imm, grid, opt), CheckKind::identity);
    c.notes = "chi = " + std::to_string(*info.euler_characteristic);
    checks.push_back(std::move(c));
  }
  constexpr int kPairs = 20;
  {
    std::vector<std::pair<ScalarField, NormalField>> pairs;
    for (int k = 0; k < kPairs; ++k) {
      pairs.emplace_back(ScalarField::random(derive_seed(config.seed, 2 * k), imm.ambient_dim()),
                         NormalField::random(derive_seed(config.seed, 2 * k + 1), imm.ambient_dim()));
    }
    const auto ids = lemma1_residuals(imm, grid, pairs);
    std::size_t arg = 0;
    const double worst = max_residual(ids, arg);
    checks.push_back(b.identity("lemma1", ids[arg].lhs, ids[arg].rhs, worst, b.tol("lemma1"),
                                std::to_string(kPairs) + " seeded (f, xi) pairs; worst shown"));
  }
  {
    std::vector<NormalField> fields;
    for (int k = 0; k < kPairs; ++k) fields.push_back(NormalField::random(derive_seed(config.seed, 100 + k), imm.ambient_dim()));
    const auto ids = cor1_residuals(imm, grid, fields);
    std::size_t arg = 0;
    const double worst = max_residual(ids, arg);
    checks.push_back(b.identity("cor1", ids[arg].lhs, ids[arg].rhs, worst, b.tol("cor1"),
                                std::to_string(kPairs) + " seeded xi; worst shown"));
  }

  // Inequalities.
  InequalityOptions no_cert;
  no_cert.certify = false;
  no_cert.tolerance = b.tol("main_inequality");
  InequalityReport main = main_inequality(imm, grid, no_cert);
  {
    CheckReport c = from_inequality(main, CheckKind::inequality);
    c.pass = main.holds() || !certified;
    c.notes = main.equality ? "equality" : "strict";
    if (!certified) c.notes += "; hypothesis not met, reported only";
    if (!main.note.empty()) c.notes += "; " + main.note;
    checks.push_back(std::move(c));
  }
  {
    InequalityOptions opt = no_cert;
    opt.tolerance = b.tol("guo_yin_inequality");
    const int n_eff = std::max(imm.sphere_dim(), 3);
    try {
      const InequalityReport gy = guo_yin_inequality(imm, grid, n_eff, opt);
      CheckReport c = from_inequality(gy, CheckKind::inequality);
      c.pass = gy.holds() || !certified;
      c.notes = gy.note + (gy.equality ? "; equality" : "; strict");
      if (!certified) c.notes += "; hypothesis not met, reported only";
      checks.push_back(std::move(c));
    } catch (const HypothesisViolation&) {
      checks.push_back(b.skipped("guo_yin_inequality", CheckKind::inequality, "T is not identically zero"));
    }
  }
  if (certified) {
    InequalityOptions opt = no_cert;
    opt.tolerance = b.tol("prop3_inequality");
    CheckReport c = from_inequality(prop3_inequality(imm, grid, opt), CheckKind::inequality);
    c.notes = "lhs >= rhs expected";
    checks.push_back(std::move(c));
  } else {
    checks.push_back(b.skipped("prop3_inequality", CheckKind::inequality, "not an H-surface"));
  }
  {
    const EqualityAudit a = equality_case_audit(imm, grid);
    const double tol = b.tol("equality_case_audit");
    const double pointwise = std::max({a.phi_N.max_abs(), a.N_dot_h.max_abs(), a.T.max_abs(), a.H.max_abs()});
    const double integral = std::abs(a.sigma_integral);
    const bool vanishes = pointwise <= tol && integral <= tol * (1.0 + std::abs(main.rhs));
    std::ostringstream notes;
    notes << "max |phi_N| = " << fmt(a.phi_N.max_abs()) << ", max |<N,h>| = " << fmt(a.N_dot_h.max_abs())
          << ", max |T| = " << fmt(a.T.max_abs()) << ", |phi| in [" << fmt(a.phi.min) << ", " << fmt(a.phi.max)
          << "], max H = " << fmt(a.H.max_abs());
    if (main.equality && !vanishes) notes << "; equality attained but audit quantities do not vanish";
    checks.push_back({"equality_case_audit", CheckKind::equality_case, a.sigma_integral, 0.0, integral, tol,
                      !main.equality || vanishes, notes.str()});
  }
  return report;
}

RunReport cmd_lemma34(const RunConfig& config, const Lemma34Options& options) {
  config.validate();
  if (options.p && *options.p < 2) throw CliError(kExitUnknownSurface, "the matrix inequality needs p >= 2");
  if (options.m && *options.m < 1) throw CliError(kExitUnknownSurface, "matrix size m must be >= 1");
  if (options.trials < 1) throw CliError(kExitOutOfRange, "trials must be >= 1");
  const CheckBuilder b(config);
  Json echo = config_echo("lemma34", config, nullptr, nullptr);
  echo["trials"] = options.trials;
  echo["p"] = options.p ? Json(*options.p) : Json(nullptr);
  echo["m"] = options.m ? Json(*options.m) : Json(nullptr);
  RunReport report = new_report(std::move(echo), config);

  const MatrixSweep sw = matrix_lemma_sweep(options.trials, config.seed, options.p, options.m);
  const double tol = b.tol("lemma34_sweep");
  std::ostringstream notes;
  notes << sw.trials << " families; worst at p = " << sw.worst_p << ", m = " << sw.worst_m;
  report.checks.push_back({"lemma34_sweep", CheckKind::inequality, kNaN, kNaN, sw.min_slack, tol,
                           sw.min_slack >= -tol, notes.str()});

  const MatrixLemmaResult ex = matrix_lemma_check(SymmetricMatrixFamily::extremal_pair());
  report.checks.push_back(b.identity("lemma34_extremal", ex.lhs, ex.rhs, std::abs(ex.slack), b.tol("lemma34_extremal"),
                                     "diag(1, -1) and [[0, 1], [1, 0]]"));
  report.checks.back().kind = CheckKind::equality_case;
  return report;
}

RunReport cmd_variation(const RunConfig& config, double delta) {
  config.validate();
  if (!(delta >= kMinVariationStep && delta <= kMaxVariationStep)) {
    throw CliError(kExitOutOfRange, "variation step " + fmt(delta) + " outside [1e-4, 1e-2]");
  }
  const Immersion imm = resolve_surface(config);
  if (!imm.info().compact) throw CliError(kExitUnknownSurface, imm.info().name + " is not closed");
  const QuadratureGrid grid = grid_for(config, imm);
  const CheckBuilder b(config);
  Json echo = config_echo("variation", config, &imm, &grid);
  echo["delta"] = delta;
  RunReport report = new_report(std::move(echo), config);

  std::vector<VariationField> vs;
  for (int k = 0; k < kVariationCount; ++k) vs.push_back(VariationField::random(derive_seed(config.seed, k), imm.ambient_dim()));
  const auto fv = first_variation_checks(imm, grid, vs, delta);
  const double tol = b.tol("first_variation");
  for (int k = 0; k < kVariationCount; ++k) {
    report.checks.push_back(
        b.identity("first_variation_" + std::to_string(k), fv[k].fd, fv[k].analytic, fv[k].residual, tol,
                   "difference quotient vs int <E, v^perp>"));
  }
  std::size_t arg = 0;
  const double worst = max_residual(fv, arg);
  report.checks.push_back(b.identity("first_variation", fv[arg].fd, fv[arg].analytic, worst, tol,
                                     "max over " + std::to_string(kVariationCount) + " variations"));
  return report;
}

void emit(const RunReport& report, const RunConfig& config, std::ostream& fallback) {
  const std::string text = render(report, config.format);
  if (!config.out) {
    fallback << text;
    return;
  }
  std::ofstream f(*config.out, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError(kExitUnwritable, "cannot write '" + *config.out + "'");
  f << text;
  f.flush();
  if (!f) throw CliError(kExitUnwritable, "cannot write '" + *config.out + "'");
}

}  // namespace tmc::cli
