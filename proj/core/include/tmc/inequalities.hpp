#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmc/geometry.hpp"
#include "tmc/immersion.hpp"
#include "tmc/quadrature.hpp"

namespace tmc {

/// Which side is expected to be larger.
enum class Direction {
  lhs_le_rhs,
  lhs_ge_rhs,
  identity,
};

struct Extrema {
  double min = 0.0;
  double max = 0.0;
  double max_abs() const;
};

/// Both sides of an integral inequality evaluated on one surface and grid.
struct InequalityReport {
  std::string name;
  std::string surface;
  std::vector<std::pair<std::string, double>> params;
  std::vector<int> resolution;
  Direction direction = Direction::lhs_le_rhs;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  Extrema integrand;   // pointwise extrema of the lhs integrand
  double tolerance = 0.0;
  bool equality = false;  // |slack| <= tolerance (1 + |rhs|)
  /// H-surface certification from the Euler-Lagrange residual, when evaluated.
  std::optional<bool> certified;
  std::string note;

  /// The inequality (or identity) holds within tolerance.
  bool holds() const;
};

inline constexpr double kDefaultInequalityTolerance = 1e-5;

struct InequalityOptions {
  double tolerance = kDefaultInequalityTolerance;
  /// Evaluate the Euler-Lagrange residual and record the certification.
  bool certify = true;
  /// Rotate the normal frame at every node by a seeded random orthogonal matrix.
  std::optional<std::uint64_t> gauge_seed;
};

/// |phi|^2 (1 - 5|T|^2 - 3/2 |phi|^2) - 2(|phi_h| + 1)|T|^2 + 2
double main_integrand(const PointGeometry& pg);
/// |phi|^2 (1 - (2 - 1/(n_eff - 2)) |phi|^2) + 2
double guo_yin_integrand(const PointGeometry& pg, int n_eff);
/// |phi|^2 (1 - 3/2 |phi|^2) + 2
double reduced_integrand(const PointGeometry& pg);

/// int main_integrand <= 4 pi chi for closed H-surfaces.
InequalityReport main_inequality(const Immersion& imm, const QuadratureGrid& grid, const InequalityOptions& opt = {});

/// int guo_yin_integrand <= 4 pi chi for closed minimal surfaces in a slice.
/// Throws HypothesisViolation when max|T| > 1e-8 and InvalidArgument when n_eff < 3.
InequalityReport guo_yin_inequality(const Immersion& imm, const QuadratureGrid& grid, int n_eff,
                                    const InequalityOptions& opt = {});

/// int (|nabla^perp sigma|^2 + 2 sum tr(A_a o Hess H^a)) >= int (2<N,h>^2 - (2 - |T|^2 + |phi|^2) H^2).
/// Throws HypothesisViolation unless the surface is certified as an H-surface.
InequalityReport prop3_inequality(const Immersion& imm, const QuadratureGrid& grid, const InequalityOptions& opt = {});

/// int K = 2 pi chi, reported as an identity.
InequalityReport gauss_bonnet(const Immersion& imm, const QuadratureGrid& grid, const InequalityOptions& opt = {});

/// max over nodes of |K from the Gauss equation - K from the metric alone|.
double curvature_mismatch(const Immersion& imm, const QuadratureGrid& grid);

/// Quantities that vanish in the equality case of the main inequality.
struct EqualityAudit {
  Extrema phi_N;      // |phi_N|
  Extrema N_dot_h;    // <N, h>
  Extrema T;          // |T|
  Extrema phi;        // |phi|
  Extrema H;
  Extrema sigma_sq;   // |sigma|^2
  double sigma_integral = 0.0;  // int |sigma|^2 (3/2 |sigma|^2 - 2)
};
EqualityAudit equality_case_audit(const Immersion& imm, const QuadratureGrid& grid);

/// Seeded orthogonal k x k matrix: Q factor of a uniform random matrix.
Eigen::MatrixXd random_orthogonal(std::uint64_t seed, int k);

}  // namespace tmc
