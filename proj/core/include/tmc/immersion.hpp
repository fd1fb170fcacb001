#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tmc/quadrature.hpp"
#include "tmc/series.hpp"
#include "tmc/series_vector.hpp"

namespace tmc {

using ParamPoint = std::array<double, 2>;

/// Point of S^n x R in R^{n+2}: coordinates 0..n are the sphere factor, n+1 the height.
class AmbientPoint {
 public:
  AmbientPoint() = default;
  explicit AmbientPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {}

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  auto sphere_part() const { return coords_.head(coords_.size() - 1); }
  double height() const { return coords_[coords_.size() - 1]; }
  /// | |sphere part| - 1 |
  double constraint_defect() const { return std::abs(sphere_part().norm() - 1.0); }

 private:
  Eigen::VectorXd coords_;
};

/// Partial derivatives of an immersion at one parameter point, up to `order`.
struct Jet {
  AmbientPoint base;
  int order = 0;
  bool closed_form = false;
  /// Indexed by Series::index(i, j) for i + j <= order.
  std::vector<Eigen::VectorXd> partials;

  const Eigen::VectorXd& partial(int i, int j) const;
  /// Taylor expansion of the immersion around the jet's base point.
  SeriesVector to_series() const;
};

/// Properties a catalog surface is known to have.
struct SurfaceClaims {
  bool minimal = false;
  bool totally_geodesic = false;
  bool in_slice = false;  // T == 0
  bool umbilical = false;
  bool h_surface = false;
};

struct ImmersionInfo {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  std::optional<int> euler_characteristic;
  bool compact = true;
  SurfaceClaims claims;
  std::vector<int> default_resolution;
};

/// x : Sigma^2 -> S^n x R in R^{n+2}. Immutable; safe to share across threads.
class Immersion {
 public:
  /// Chart written in jet arithmetic; yields closed-form jets of any order <= 4.
  using ChartFn = std::function<SeriesVector(const Series& u, const Series& v)>;
  using PointFn = std::function<Eigen::VectorXd(const ParamPoint&)>;

  Immersion(int sphere_dim, ParameterDomain domain, ChartFn chart, ImmersionInfo info);
  /// Immersion known only pointwise; jets come from finite differences.
  static Immersion from_point_map(int sphere_dim, ParameterDomain domain, PointFn map, ImmersionInfo info);

  int sphere_dim() const { return n_; }
  int ambient_dim() const { return n_ + 2; }
  int intrinsic_dim() const { return 2; }
  int codimension() const { return n_ + 1 - intrinsic_dim(); }
  const ParameterDomain& domain() const { return domain_; }
  const ImmersionInfo& info() const { return info_; }
  bool has_closed_form_jets() const { return static_cast<bool>(chart_); }
  const ChartFn& chart() const { return chart_; }

  /// Unchecked evaluation.
  Eigen::VectorXd map(const ParamPoint& p) const;
  /// Taylor expansion of the chart around p (requires closed-form jets).
  SeriesVector expand(const ParamPoint& p, int order) const;

 private:
  Immersion(int sphere_dim, ParameterDomain domain, ChartFn chart, PointFn map, ImmersionInfo info);

  int n_;
  ParameterDomain domain_;
  ChartFn chart_;
  PointFn map_;
  ImmersionInfo info_;
};

inline constexpr double kConstraintTolerance = 1e-9;

/// Throws CompactnessRequired naming `what` when the immersion is not closed.
void require_compact(const Immersion& imm, const std::string& what);

/// Evaluates and validates the S^n x R constraint (ImmersionDefect beyond 1e-9).
AmbientPoint evaluate(const Immersion& imm, const ParamPoint& p);

/// Default finite-difference step for a jet of the given order on `domain`.
double default_fd_step(const ParameterDomain& domain, int order);

/// Closed-form jet when the immersion has one, finite differences otherwise.
Jet jet(const Immersion& imm, const ParamPoint& p, int order, std::optional<double> fd_step = std::nullopt);

/// Central differences with one level of Richardson extrapolation, regardless of
/// whether a closed form exists.
Jet fd_jet(const Immersion& imm, const ParamPoint& p, int order, std::optional<double> fd_step = std::nullopt);

/// Parameters accepted by `catalog`; unset values take the catalog defaults.
struct CatalogParams {
  std::optional<int> n;
  std::optional<double> t0;
  std::optional<double> rho;
  std::optional<double> eps;
  std::optional<double> r;
};

struct CatalogEntry {
  std::string name;
  std::string signature;
  std::string summary;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Catalog surfaces: slice_sphere, clifford_torus, veronese, small_sphere,
/// graph_torus, cylinder_patch.
Immersion catalog(std::string_view name, const CatalogParams& params = {});

/// "χ=0 minimal T≡0" style description of metadata.
std::string describe_claims(const ImmersionInfo& info);

}  // namespace tmc
