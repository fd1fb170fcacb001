#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tmc/geometry.hpp"
#include "tmc/operators.hpp"
#include "tmc/quadrature.hpp"
#include "tmc/random.hpp"

namespace tmc {

/// Ambient vector field w driving the deformation
///   X_s = ((p + s w_s) / |p + s w_s|, t + s w_t),
/// whose velocity at s = 0 is v = (w_s - <w_s, p> p, w_t).
class VariationField {
 public:
  using Fn = std::function<SeriesVector(const SeriesVector& x)>;

  explicit VariationField(Fn w) : w_(std::move(w)) {}
  /// Seeded trigonometric polynomial in the ambient coordinates.
  static VariationField random(std::uint64_t seed, int ambient_dim);

  SeriesVector direction(const SeriesVector& x) const { return w_(x); }
  /// v(x), tangent to S^n x R.
  SeriesVector velocity(const SeriesVector& x) const;
  SeriesVector displace(const SeriesVector& x, double s) const;

 private:
  Fn w_;
};

/// The immersion X_s. Keeps closed-form jets when `imm` has them.
Immersion deformed(const Immersion& imm, const VariationField& v, double s);

/// int H^m dSigma (m = 2).
double total_mean_curvature(const Immersion& imm, const QuadratureGrid& grid);

/// Euler-Lagrange field of the total mean curvature functional at a point:
/// H^{m-2} (Delta^perp h + (m - |T|^2 - m H^2) h - m <N, h> N + sum H^a tr(A_a A_b) e_b),
/// without the H^{m-2} factor when m = 2. Needs order-4 jets.
Vector euler_lagrange(const PointGeometry& pg);

struct ELField {
  std::vector<Vector> field;
  double max_norm = 0.0;
  double max_sigma_sq = 0.0;
};
ELField el_residual(const Immersion& imm, const QuadratureGrid& grid);

/// H-surface certification: max|E| <= 1e-6 (1 + max|sigma|^2).
bool certifies_h_surface(const ELField& el);

struct FirstVariation {
  double fd = 0.0;
  double analytic = 0.0;
  double residual = 0.0;
};
inline constexpr double kMinVariationStep = 1e-4;
inline constexpr double kMaxVariationStep = 1e-2;

/// fd: 4-point central difference of s -> H(X_s); analytic: int <E, v^perp>.
FirstVariation first_variation_check(const Immersion& imm, const QuadratureGrid& grid, const VariationField& v,
                                     double delta = 1e-3);
/// Several variations sharing one Euler-Lagrange evaluation.
std::vector<FirstVariation> first_variation_checks(const Immersion& imm, const QuadratureGrid& grid,
                                                   const std::vector<VariationField>& vs, double delta = 1e-3);

/// Terms of the Simons-type formula for 1/2 Delta |sigma|^2 at a point (order-4 jets).
struct SimonsTerms {
  double lhs = 0.0;              // 1/2 Delta |sigma|^2
  double grad_sigma = 0.0;       // |nabla^perp sigma|^2
  double hessian = 0.0;          // m sum_a tr(A_a o Hess H^a), read covariantly as m <sigma, nabla^2 h>
  double phi_N = 0.0;            // m |phi_N|^2
  double phi_T = 0.0;            // -2m sum_a |phi_a(T)|^2
  double phi = 0.0;              // (m - |T|^2) |phi|^2
  double phi_h = 0.0;            // -m <phi_h(T), T>
  double trace_cubic = 0.0;      // sum tr(A_b) tr(A_a^2 A_b)
  double commutators = 0.0;      // -sum (N([A_a, A_b]) + tr(A_a A_b)^2)

  double rhs() const { return grad_sigma + hessian + phi_N + phi_T + phi + phi_h + trace_cubic + commutators; }
  double residual() const { return lhs - rhs(); }
};
SimonsTerms simons_terms(const PointGeometry& pg);

struct PointwiseField {
  std::vector<double> values;
  double max_abs = 0.0;
  double min = 0.0;
};
PointwiseField simons_residual(const Immersion& imm, const QuadratureGrid& grid);

/// |nabla^perp sigma|^2 - m/(m+2) (3m |nabla^perp h|^2 + 4(m-1) <nabla^perp_T h, N>)  (order-3 jets).
double huisken_slack(const PointGeometry& pg);
PointwiseField huisken_check(const Immersion& imm, const QuadratureGrid& grid);

/// B_1..B_p, symmetric m x m.
class SymmetricMatrixFamily {
 public:
  explicit SymmetricMatrixFamily(std::vector<Eigen::MatrixXd> B);
  static SymmetricMatrixFamily random(Rng& rng, int p, int m);
  /// diag(1, -1), [[0, 1], [1, 0]]: equality in the matrix inequality.
  static SymmetricMatrixFamily extremal_pair();

  int count() const { return static_cast<int>(B_.size()); }
  int dim() const { return static_cast<int>(B_.front().rows()); }
  const std::vector<Eigen::MatrixXd>& matrices() const { return B_; }

 private:
  std::vector<Eigen::MatrixXd> B_;
};

/// lhs = sum_{a,b} N(B_a B_b - B_b B_a) + tr(B_a B_b)^2, rhs = 3/2 (sum N(B_a))^2.
struct MatrixLemmaResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};
MatrixLemmaResult matrix_lemma_check(const SymmetricMatrixFamily& family);

struct MatrixSweep {
  std::uint64_t seed = 0;
  long trials = 0;
  double min_slack = 0.0;
  int worst_p = 0;
  int worst_m = 0;
  long violations = 0;  // slack < -1e-12
};
/// Random families; p in [2, 6] and m in [1, 5] unless fixed.
MatrixSweep matrix_lemma_sweep(long trials, std::uint64_t seed, std::optional<int> p = std::nullopt,
                               std::optional<int> m = std::nullopt);

/// Algebraic identities between A_alpha and phi_alpha at m = 2, as residuals.
struct WeingartenIdentities {
  double commutator = 0.0;     // A_a A_b - A_b A_a = phi_a phi_b - phi_b phi_a
  double cubic_trace = 0.0;    // tr(phi_a^2 phi_b) = 0
  double cubic_sum = 0.0;      // sum tr(A_b) tr(A_a^2 A_b) = 2H^2|phi|^2 + 4H^4 + 4 sum H^a H^b tr(phi_a phi_b)
  double square_sum = 0.0;     // sum tr(A_a A_b)^2 = sum tr(phi_a phi_b)^2 + 4H^4 + 4 sum H^a H^b tr(phi_a phi_b)
  double combined = 0.0;       // the normal-curvature block rewritten in phi
  double max() const;
};
WeingartenIdentities weingarten_identities_check(const PointGeometry& pg);

}  // namespace tmc
