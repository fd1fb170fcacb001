#include "tmc/immersion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tmc/errors.hpp"

namespace tmc {

namespace {

constexpr double kPi = std::numbers::pi;

ParameterDomain sphere_domain() { return ParameterDomain({{0.0, kPi, false}, {0.0, 2 * kPi, true}}); }
ParameterDomain torus_domain() { return ParameterDomain({{0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}}); }

const std::vector<int> kSphereResolution{96, 192};
const std::vector<int> kTorusResolution{128, 128};

std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Polar chart of the unit 2-sphere: (theta, phi) -> (sin t cos p, sin t sin p, cos t).
std::array<Series, 3> unit_sphere(const Series& theta, const Series& phi) {
  const Series st = sin(theta);
  return {st * cos(phi), st * sin(phi), cos(theta)};
}

Immersion make_slice_sphere(int n, double t0) {
  if (n < 2 || n > kMaxAmbientDim - 2) throw InvalidArgument("slice_sphere: n must lie in [2, 6]");
  ImmersionInfo info{"slice_sphere", {{"n", static_cast<double>(n)}, {"t0", t0}}, 2, true, {}, kSphereResolution};
  info.claims = {.minimal = true, .totally_geodesic = true, .in_slice = true, .umbilical = true, .h_surface = true};
  return Immersion(n, sphere_domain(), [n, t0](const Series& th, const Series& ph) {
    SeriesVector x(n + 2);
    const auto s = unit_sphere(th, ph);
    for (int k = 0; k < 3; ++k) x[k] = s[k];
    for (int k = 3; k <= n; ++k) x[k] = Series::constant(0.0);
    x[n + 1] = Series::constant(t0);
    return x;
  }, std::move(info));
}

Immersion make_clifford_torus(double t0) {
  ImmersionInfo info{"clifford_torus", {{"t0", t0}}, 0, true, {}, kTorusResolution};
  info.claims = {.minimal = true, .in_slice = true, .h_surface = true};
  return Immersion(3, torus_domain(), [t0](const Series& u, const Series& v) {
    const double c = 1.0 / std::numbers::sqrt2;
    SeriesVector x(5);
    x[0] = c * cos(u);
    x[1] = c * sin(u);
    x[2] = c * cos(v);
    x[3] = c * sin(v);
    x[4] = Series::constant(t0);
    return x;
  }, std::move(info));
}

// Double cover through S^2(sqrt 3):
// (a b/sqrt3, a c/sqrt3, b c/sqrt3, (a^2 - b^2)/(2 sqrt3), (a^2 + b^2 - 2c^2)/6).
Immersion make_veronese(double t0) {
  ImmersionInfo info{"veronese", {{"t0", t0}}, 2, true, {}, kSphereResolution};
  info.claims = {.minimal = true, .in_slice = true, .h_surface = true};
  return Immersion(4, sphere_domain(), [t0](const Series& th, const Series& ph) {
    const double r3 = std::sqrt(3.0);
    const auto s = unit_sphere(th, ph);
    const Series a = r3 * s[0], b = r3 * s[1], c = r3 * s[2];
    SeriesVector x(6);
    x[0] = a * b / r3;
    x[1] = a * c / r3;
    x[2] = b * c / r3;
    x[3] = (a * a - b * b) / (2.0 * r3);
    x[4] = (a * a + b * b - 2.0 * (c * c)) / 6.0;
    x[5] = Series::constant(t0);
    return x;
  }, std::move(info));
}

// Geodesic sphere of radius rho about (0, 0, 0, 1) in S^3.
Immersion make_small_sphere(double rho, double t0) {
  if (!(rho > 0.0 && rho < kPi)) throw InvalidArgument("small_sphere: rho must lie in (0, pi)");
  ImmersionInfo info{"small_sphere", {{"rho", rho}, {"t0", t0}}, 2, true, {}, kSphereResolution};
  info.claims = {.in_slice = true, .umbilical = true};
  return Immersion(3, sphere_domain(), [rho, t0](const Series& th, const Series& ph) {
    const auto s = unit_sphere(th, ph);
    const double sr = std::sin(rho);
    SeriesVector x(5);
    for (int k = 0; k < 3; ++k) x[k] = sr * s[k];
    x[3] = Series::constant(std::cos(rho));
    x[4] = Series::constant(t0);
    return x;
  }, std::move(info));
}

Immersion make_graph_torus(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("graph_torus: eps must be >= 0");
  ImmersionInfo info{"graph_torus", {{"eps", eps}}, 0, true, {}, kTorusResolution};
  info.claims = {.minimal = eps == 0.0, .in_slice = eps == 0.0, .h_surface = eps == 0.0};
  return Immersion(3, torus_domain(), [eps](const Series& u, const Series& v) {
    const double c = 1.0 / std::numbers::sqrt2;
    SeriesVector x(5);
    x[0] = c * cos(u);
    x[1] = c * sin(u);
    x[2] = c * cos(v);
    x[3] = c * sin(v);
    x[4] = eps * sin(u);
    return x;
  }, std::move(info));
}

// Vertical cylinder over the circle of polar angle r in S^2; u around, v height.
Immersion make_cylinder_patch(double r) {
  if (!(r > 0.0 && r < kPi)) throw InvalidArgument("cylinder_patch: r must lie in (0, pi)");
  ImmersionInfo info{"cylinder_patch", {{"r", r}}, std::nullopt, false, {}, {128, 32}};
  return Immersion(2, ParameterDomain({{0.0, 2 * kPi, true}, {-1.0, 1.0, false}}),
                   [r](const Series& u, const Series& v) {
                     SeriesVector x(4);
                     x[0] = std::sin(r) * cos(u);
                     x[1] = std::sin(r) * sin(u);
                     x[2] = Series::constant(std::cos(r));
                     x[3] = v;
                     return x;
                   },
                   std::move(info));
}

// 1-D central stencil of spacing s*h for derivative order a (second-order accurate).
struct Stencil {
  std::array<int, 5> offsets{};
  std::array<double, 5> weights{};
  int size = 0;
};

Stencil central_stencil(int a, int s) {
  switch (a) {
    case 0: return {{0}, {1.0}, 1};
    case 1: return {{-s, s}, {-0.5, 0.5}, 2};
    case 2: return {{-s, 0, s}, {1.0, -2.0, 1.0}, 3};
    case 3: return {{-2 * s, -s, s, 2 * s}, {-0.5, 1.0, -1.0, 0.5}, 4};
    default: return {{-2 * s, -s, 0, s, 2 * s}, {1.0, -4.0, 6.0, -4.0, 1.0}, 5};
  }
}

class Lattice {
 public:
  Lattice(const Immersion& imm, const ParamPoint& p, double h) : imm_(imm), p_(p), h_(h) {}

  const Eigen::VectorXd& at(int i, int j) {
    auto& slot = cache_[(i + 4) * 9 + (j + 4)];
    if (!slot) slot = imm_.map({p_[0] + i * h_, p_[1] + j * h_});
    return *slot;
  }

  Eigen::VectorXd derivative(int a, int b, int s) {
    const Stencil su = central_stencil(a, s), sv = central_stencil(b, s);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(imm_.ambient_dim());
    for (int i = 0; i < su.size; ++i) {
      for (int j = 0; j < sv.size; ++j) acc += su.weights[i] * sv.weights[j] * at(su.offsets[i], sv.offsets[j]);
    }
    return acc / std::pow(s * h_, a + b);
  }

  // f_uv from axis and anti-diagonal second differences.
  Eigen::VectorXd mixed_alternative(int s) {
    const Eigen::VectorXd num = at(s, 0) + at(-s, 0) + at(0, s) + at(0, -s) - at(s, -s) - at(-s, s) - 2.0 * at(0, 0);
    return num / (2.0 * (s * h_) * (s * h_));
  }

 private:
  const Immersion& imm_;
  ParamPoint p_;
  double h_;
  std::array<std::optional<Eigen::VectorXd>, 81> cache_;
};

void check_order(int order) {
  if (order < 1 || order > Series::kMaxOrder) throw InvalidArgument("jet order must lie in [1, 4]");
}

AmbientPoint checked_point(Eigen::VectorXd x) {
  AmbientPoint pt(std::move(x));
  if (!(pt.constraint_defect() <= kConstraintTolerance)) {
    std::ostringstream os;
    os << "point misses S^n x R: | |x_s| - 1 | = " << pt.constraint_defect();
    throw ImmersionDefect(os.str());
  }
  return pt;
}

}  // namespace

const Eigen::VectorXd& Jet::partial(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order) throw InvalidArgument("jet partial beyond jet order");
  return partials[Series::index(i, j)];
}

SeriesVector Jet::to_series() const {
  SeriesVector x(base.dim());
  for (int k = 0; k < base.dim(); ++k) {
    Series s = Series::constant(0.0, order);
    for (int d = 0; d <= order; ++d) {
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        s.raw(i, j) = partial(i, j)[k] / (Series::factorial(i) * Series::factorial(j));
      }
    }
    x[k] = s;
  }
  return x;
}

Immersion::Immersion(int sphere_dim, ParameterDomain domain, ChartFn chart, ImmersionInfo info)
    : Immersion(sphere_dim, std::move(domain), std::move(chart), PointFn{}, std::move(info)) {}

Immersion::Immersion(int sphere_dim, ParameterDomain domain, ChartFn chart, PointFn map, ImmersionInfo info)
    : n_(sphere_dim), domain_(std::move(domain)), chart_(std::move(chart)), map_(std::move(map)), info_(std::move(info)) {
  if (n_ < 2 || n_ + 2 > kMaxAmbientDim) throw InvalidArgument("sphere dimension must lie in [2, 6] (m < n + 1)");
  if (domain_.dims() != 2) throw InvalidArgument("immersions are parametrized by 2-D domains");
  if (info_.default_resolution.empty()) info_.default_resolution = {64, 64};
}

Immersion Immersion::from_point_map(int sphere_dim, ParameterDomain domain, PointFn map, ImmersionInfo info) {
  return Immersion(sphere_dim, std::move(domain), ChartFn{}, std::move(map), std::move(info));
}

Eigen::VectorXd Immersion::map(const ParamPoint& p) const {
  if (map_) return map_(p);
  return chart_(Series::constant(p[0], 0), Series::constant(p[1], 0)).value();
}

SeriesVector Immersion::expand(const ParamPoint& p, int order) const {
  if (!chart_) throw InvalidArgument("immersion has no closed-form jets");
  return chart_(Series::variable(p[0], 0, order), Series::variable(p[1], 1, order));
}

void require_compact(const Immersion& imm, const std::string& what) {
  if (!imm.info().compact) throw CompactnessRequired(what + " needs a closed surface; " + imm.info().name + " is not");
}

AmbientPoint evaluate(const Immersion& imm, const ParamPoint& p) { return checked_point(imm.map(p)); }

double default_fd_step(const ParameterDomain& domain, int order) {
  double extent = domain.axis(0).length();
  for (const auto& a : domain.axes()) extent = std::min(extent, a.length());
  return (order <= 2 ? 1e-4 : 1e-3) * extent;
}

Jet jet(const Immersion& imm, const ParamPoint& p, int order, std::optional<double> fd_step) {
  check_order(order);
  if (!imm.has_closed_form_jets()) return fd_jet(imm, p, order, fd_step);
  const SeriesVector x = imm.expand(p, order);
  Jet j;
  j.base = checked_point(x.value());
  j.order = order;
  j.closed_form = true;
  j.partials.resize(Series::count_upto(order));
  for (int d = 0; d <= order; ++d) {
    for (int b = 0; b <= d; ++b) {
      Eigen::VectorXd v(x.dim());
      for (int k = 0; k < x.dim(); ++k) v[k] = x[k].partial(d - b, b);
      j.partials[Series::index(d - b, b)] = std::move(v);
    }
  }
  return j;
}

Jet fd_jet(const Immersion& imm, const ParamPoint& p, int order, std::optional<double> fd_step) {
  check_order(order);
  const double h = fd_step.value_or(default_fd_step(imm.domain(), order));
  if (!(h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  for (int a = 0; a < 2; ++a) {
    const Axis& ax = imm.domain().axis(a);
    if (!ax.periodic && (p[a] - 4 * h < ax.lo || p[a] + 4 * h > ax.hi)) {
      throw BoundaryStencil("difference stencil leaves the parameter interval on axis " + std::to_string(a));
    }
  }
  Lattice lat(imm, p, h);
  Jet j;
  j.base = checked_point(lat.at(0, 0));
  j.order = order;
  j.partials.resize(Series::count_upto(order));
  for (int d = 0; d <= order; ++d) {
    for (int b = 0; b <= d; ++b) {
      const int a = d - b;
      j.partials[Series::index(a, b)] =
          d == 0 ? lat.at(0, 0) : Eigen::VectorXd((4.0 * lat.derivative(a, b, 1) - lat.derivative(a, b, 2)) / 3.0);
    }
  }
  if (order >= 2) {
    const Eigen::VectorXd alt = (4.0 * lat.mixed_alternative(1) - lat.mixed_alternative(2)) / 3.0;
    const Eigen::VectorXd& uv = j.partial(1, 1);
    const double gap = (alt - uv).lpNorm<Eigen::Infinity>();
    if (gap > 100.0 * 1e-8 * (1.0 + uv.lpNorm<Eigen::Infinity>())) {
      std::ostringstream os;
      os << "mixed partials disagree by " << gap << " at step " << h;
      throw FdInstability(os.str());
    }
  }
  return j;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries{
      {"slice_sphere", "slice_sphere(n=2, t0=0)", "chi=2 totally geodesic slice S^2 x {t0} in S^n x R"},
      {"clifford_torus", "clifford_torus(t0=0)", "chi=0 minimal T≡0 torus in S^3 x {t0}"},
      {"veronese", "veronese(t0=0)", "chi=2 (double cover) minimal T≡0 surface in S^4 x {t0}"},
      {"small_sphere", "small_sphere(rho=pi/4, t0=0)", "chi=2 umbilical non-minimal geodesic sphere in S^3 x {t0}"},
      {"graph_torus", "graph_torus(eps=0.3)", "chi=0 Clifford torus with height eps*sin(u), T≢0"},
      {"cylinder_patch", "cylinder_patch(r=1)", "non-compact vertical cylinder over a circle; local checks only"},
  };
  return entries;
}

Immersion catalog(std::string_view name, const CatalogParams& params) {
  const double t0 = params.t0.value_or(0.0);
  if (!std::isfinite(t0)) throw InvalidArgument("t0 must be finite");
  if (name == "slice_sphere") return make_slice_sphere(params.n.value_or(2), t0);
  if (name == "clifford_torus") return make_clifford_torus(t0);
  if (name == "veronese") return make_veronese(t0);
  if (name == "small_sphere") return make_small_sphere(params.rho.value_or(kPi / 4), t0);
  if (name == "graph_torus") return make_graph_torus(params.eps.value_or(0.3));
  if (name == "cylinder_patch") return make_cylinder_patch(params.r.value_or(1.0));
  throw InvalidArgument("unknown catalog surface '" + std::string(name) + "'");
}

std::string describe_claims(const ImmersionInfo& info) {
  std::ostringstream os;
  os << info.name << "(";
  for (std::size_t i = 0; i < info.params.size(); ++i) {
    os << (i ? ", " : "") << info.params[i].first << "=" << format_param(info.params[i].second);
  }
  os << ")";
  if (info.euler_characteristic) os << " χ=" << *info.euler_characteristic;
  if (!info.compact) os << " non-compact";
  const auto& c = info.claims;
  if (c.totally_geodesic) os << " totally-geodesic";
  if (c.minimal) os << " minimal";
  if (c.in_slice) os << " T≡0";
  if (c.umbilical) os << " umbilical";
  if (c.h_surface) os << " H-surface";
  return os.str();
}

}  // namespace tmc
