#include <cstdlib>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "tmc/cli/commands.hpp"
#include "tmc/cli/report.hpp"

namespace tmc::cli {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tmclab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tmclab_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small but complete check run on a compact surface.
const std::vector<std::string> kQuickCheck{"check", "--surface", "clifford_torus", "--grid", "16x16",
                                           "--timestamp", "2024-01-01T00:00:00Z"};

TEST(FormatDouble, IsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(format_double(1e-5), "1e-05");
  EXPECT_EQ(format_double(std::nan("")), "");
  EXPECT_EQ(format_double(INFINITY), "");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t b = bits(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = format_double(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
    EXPECT_LE(s.size(), 24u);
  }
}

TEST(JsonOutput, KeepsFloatsFloatsAndNullsNonFinite) {
  Json j;
  j["a"] = 2.0;
  j["b"] = std::nan("");
  j["c"] = 3;
  j["d"] = Json::array();
  j["e"] = 0.1;
  const std::string s = dump_json(j);
  EXPECT_NE(s.find("\"a\": 2.0"), std::string::npos);
  EXPECT_NE(s.find("\"b\": null"), std::string::npos);
  EXPECT_NE(s.find("\"c\": 3,"), std::string::npos);
  EXPECT_NE(s.find("\"d\": []"), std::string::npos);
  EXPECT_NE(s.find("\"e\": 0.1"), std::string::npos);
  EXPECT_EQ(Json::parse(s)["e"].get<double>(), 0.1);
}

TEST(JsonOutput, ReportFieldsAreOrdered) {
  RunReport r;
  r.version = "1";
  r.timestamp = "2024-01-01T00:00:00Z";
  r.config = Json::object();
  EXPECT_FALSE(r.pass());
  r.checks.push_back({"x", CheckKind::equality_case, 1.0, 1.0, 0.0, 1e-5, true, ""});
  EXPECT_TRUE(r.pass());
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "timestamp", "config", "checks", "pass"}));
  EXPECT_EQ(j["checks"][0]["kind"], "equality-case");
  EXPECT_TRUE(j["checks"][0]["lhs"].is_number_float());
  r.checks.push_back({"y", CheckKind::inequality});
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(to_json(r)["checks"][1]["lhs"].is_null());
  EXPECT_EQ(r.find("y")->name, "y");
  EXPECT_EQ(r.find("z"), nullptr);
}

TEST(CsvOutput, HasFixedHeaderAndEmptyNonFiniteFields) {
  RunReport r;
  r.checks.push_back({"x", CheckKind::identity, 1.5, 2.0, 0.5, 1e-6, false, "n"});
  r.checks.push_back({"y", CheckKind::inequality});
  EXPECT_EQ(to_csv(r),
            "name,kind,lhs,rhs,residual,tolerance,pass\n"
            "x,identity,1.5,2,0.5,1e-06,false\n"
            "y,inequality,,,,0,false\n");
}

TEST(ParseGrid, AcceptsTheDocumentedRange) {
  EXPECT_EQ(parse_grid("96x192"), (std::vector<int>{96, 192}));
  EXPECT_EQ(parse_grid("8x4096"), (std::vector<int>{8, 4096}));
  EXPECT_EQ(parse_grid(" 16 X 32 "), (std::vector<int>{16, 32}));
  for (const char* bad : {"7x8", "8x4097", "96", "x", "ax8", "8x8x8", "", "8x-8", "8,8"}) {
    try {
      parse_grid(bad);
      ADD_FAILURE() << bad;
    } catch (const CliError& e) {
      EXPECT_EQ(e.code(), kExitOutOfRange) << bad;
    }
  }
}

TEST(ParseTolerance, RequiresKnownNamesAndPositiveValues) {
  EXPECT_EQ(parse_tolerance("simons=1e-3"), (std::pair<std::string, double>{"simons", 1e-3}));
  for (const char* bad : {"simons", "nosuch=1", "simons=abc", "=1"}) {
    try {
      parse_tolerance(bad);
      ADD_FAILURE() << bad;
    } catch (const CliError& e) {
      EXPECT_EQ(e.code(), kExitUsage) << bad;
    }
  }
  RunConfig c;
  c.tolerances["simons"] = 0.0;
  EXPECT_THROW(c.validate(), CliError);
  c.tolerances["simons"] = 1e-3;
  EXPECT_NO_THROW(c.validate());
  c.fd_step = -1.0;
  EXPECT_THROW(c.validate(), CliError);
}

TEST(DefaultTolerances, CoverEveryCheck) {
  const auto& t = default_tolerances();
  for (const char* name : {"constraint", "gauss_equation", "codazzi_equation", "euler_lagrange", "simons", "lemma1",
                           "cor1", "main_inequality", "prop3_inequality", "first_variation", "lemma34_sweep"})
    EXPECT_GT(t.at(name), 0.0) << name;
}

TEST(Catalog, ListsSixSurfaces) {
  const Result r = invoke({"catalog"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  EXPECT_NE(r.out.find("clifford_torus(t0=0) χ=0 minimal T≡0 H-surface"), std::string::npos);
  const Result j = invoke({"catalog", "--json"});
  EXPECT_EQ(j.code, kExitPass);
  const Json arr = Json::parse(j.out);
  ASSERT_EQ(arr.size(), 6u);
  EXPECT_TRUE(arr[5]["euler_characteristic"].is_null() || arr[0]["euler_characteristic"].is_number());
}

TEST(ExitCodes, MapEachFailureClass) {
  EXPECT_EQ(invoke({"check", "--surface", "nosuch"}).code, kExitUnknownSurface);
  EXPECT_EQ(invoke({"check", "--grid", "4x4"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"check", "--surface", "slice_sphere", "--n", "9"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"check", "--fd-step", "0"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"check", "--tol", "simons=-1"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"check", "--tol", "nosuch=1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--timestamp", "yesterday"}).code, kExitUsage);
  EXPECT_EQ(invoke({"lemma34", "--p", "1", "--trials", "10"}).code, kExitUnknownSurface);
  EXPECT_EQ(invoke({"lemma34", "--m", "0", "--trials", "10"}).code, kExitUnknownSurface);
  EXPECT_EQ(invoke({"lemma34", "--trials", "0"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"variation", "--delta", "1"}).code, kExitOutOfRange);
  EXPECT_EQ(invoke({"variation", "--surface", "cylinder_patch"}).code, kExitUnknownSurface);
  const std::string dir = scratch("missing_dir/none/report.json").string();
  EXPECT_EQ(invoke({"check", "--surface", "cylinder_patch", "--grid", "8x8", "--out", dir}).code, kExitUnwritable);
}

TEST(Check, NonCompactSurfaceSkipsIntegralChecks) {
  const Result r = invoke({"check", "--surface", "cylinder_patch", "--grid", "16x8", "--format", "csv",
                           "--timestamp", "2024-01-01T00:00:00Z"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out.rfind("name,kind,lhs,rhs,residual,tolerance,pass\n", 0), 0u);
  EXPECT_NE(r.out.find("\ngauss_bonnet,identity,,,,"), std::string::npos);
  const Result j = invoke({"check", "--surface", "cylinder_patch", "--grid", "16x8", "--timestamp",
                           "2024-01-01T00:00:00Z"});
  const Json report = Json::parse(j.out);
  bool saw_skip = false;
  bool all = true;
  for (const auto& c : report["checks"]) {
    all = all && c["pass"].get<bool>();
    if (c["notes"].get<std::string>().rfind("skipped: non-compact", 0) == 0) saw_skip = true;
  }
  EXPECT_TRUE(saw_skip);
  EXPECT_EQ(report["pass"].get<bool>(), all);
  EXPECT_EQ(report["config"]["surface"], "cylinder_patch");
  EXPECT_EQ(report["config"]["grid"], Json({16, 8}));
}

TEST(Check, CompactRunPassesAndIsByteDeterministic) {
  const Result a = invoke(kQuickCheck);
  const Result b = invoke(kQuickCheck);
  EXPECT_EQ(a.code, kExitPass) << a.out;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["timestamp"], "2024-01-01T00:00:00Z");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_GE(j["checks"].size(), 15u);
  EXPECT_EQ(j["config"]["tolerances"]["simons"].get<double>(), default_tolerances().at("simons"));
}

TEST(Check, ToleranceOverrideCanForceFailure) {
  const Result r = invoke({"check", "--surface", "graph_torus", "--grid", "16x16", "--tol", "gauss_bonnet=1e-300",
                           "--tol", "constraint=1e-300", "--timestamp", "2024-01-01T00:00:00Z"});
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["tolerances"]["gauss_bonnet"].get<double>(), 1e-300);
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(r.code, kExitFail);
}

TEST(Check, WritesToFileInEitherFormat) {
  const auto path = scratch("report.csv");
  std::vector<std::string> args = kQuickCheck;
  args.insert(args.end(), {"--format", "csv", "--out", path.string()});
  const Result r = invoke(args);
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("name,kind,lhs,rhs,residual,tolerance,pass\n", 0), 0u);
  EXPECT_NE(csv.find("\nsimons,identity,"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(ConfigFile, SuppliesDefaultsThatFlagsOverride) {
  const auto path = scratch("config.ini");
  {
    std::ofstream f(path);
    f << "surface=slice_sphere\ngrid=16x32\nseed=9\nformat=csv\ntimestamp=2024-01-01T00:00:00Z\n";
  }
  const Result a = invoke({"check", "--config", path.string(), "--format", "json"});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["config"]["surface"], "slice_sphere");
  EXPECT_EQ(j["config"]["seed"], 9);
  EXPECT_EQ(j["config"]["grid"], Json({16, 32}));
  const Result b = invoke({"check", "--config", path.string(), "--seed", "3"});
  EXPECT_EQ(b.out.rfind("name,kind", 0), 0u);
  {
    std::ofstream f(path);
    f << "surface=slice_sphere\ngrid=16x32\ntol=simons=0.5\ntimestamp=2024-01-01T00:00:00Z\n";
  }
  const Result c = invoke({"check", "--config", path.string()});
  ASSERT_EQ(c.code, kExitPass) << c.err;
  EXPECT_EQ(Json::parse(c.out)["config"]["tolerances"]["simons"].get<double>(), 0.5);
  EXPECT_EQ(invoke({"check", "--config", scratch("absent.ini").string()}).code, kExitUsage);
  std::filesystem::remove(path);
}

TEST(Timestamp, HonoursSourceDateEpoch) {
  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  EXPECT_EQ(current_timestamp(), "1970-01-02T00:00:00Z");
  const Result r = invoke({"lemma34", "--trials", "20"});
  EXPECT_EQ(Json::parse(r.out)["timestamp"], "1970-01-02T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(current_timestamp().size(), 20u);
}

TEST(Lemma34, SweepAndExtremalRowsPass) {
  const Result r = invoke({"lemma34", "--trials", "200", "--seed", "4", "--timestamp", "2024-01-01T00:00:00Z"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "lemma34_sweep");
  EXPECT_EQ(j["checks"][1]["name"], "lemma34_extremal");
  EXPECT_EQ(j["checks"][1]["kind"], "equality-case");
  EXPECT_EQ(j["checks"][1]["lhs"].get<double>(), 24.0);
  EXPECT_EQ(j["config"]["trials"], 200);
  EXPECT_EQ(r.out, invoke({"lemma34", "--trials", "200", "--seed", "4", "--timestamp", "2024-01-01T00:00:00Z"}).out);
}

TEST(Variation, ReportsTenVariationsAndTheirMaximum) {
  const Result r = invoke({"variation", "--surface", "clifford_torus", "--grid", "16x16", "--timestamp",
                           "2024-01-01T00:00:00Z"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["checks"].size(), static_cast<std::size_t>(kVariationCount + 1));
  double worst = 0.0;
  for (int k = 0; k < kVariationCount; ++k) worst = std::max(worst, j["checks"][k]["residual"].get<double>());
  EXPECT_EQ(j["checks"][kVariationCount]["name"], "first_variation");
  EXPECT_EQ(j["checks"][kVariationCount]["residual"].get<double>(), worst);
  EXPECT_EQ(j["config"]["delta"].get<double>(), 1e-3);
}

}  // namespace
}  // namespace tmc::cli
