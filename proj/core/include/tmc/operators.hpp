#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tmc/geometry.hpp"
#include "tmc/quadrature.hpp"

namespace tmc {

/// Every operator on fields uses at most second derivatives, so fields are
/// evaluated on jets truncated to this order.
inline constexpr int kFieldOrder = 2;

/// Scalar field on Sigma, evaluated in jet arithmetic at each node. Fields are
/// smooth functions rather than grid samples, so derivatives are exact.
class ScalarField {
 public:
  using Fn = std::function<Series(const SurfaceJet&)>;

  explicit ScalarField(Fn fn) : fn_(std::move(fn)) {}

  static ScalarField constant(double c);
  /// Height function t o x.
  static ScalarField height();
  /// g o x for a function on the ambient space.
  static ScalarField ambient(std::function<Series(const SeriesVector&)> g);
  /// f(u, v) in the chart parameters.
  static ScalarField parametric(std::function<Series(const Series&, const Series&)> f);
  /// Seeded trigonometric polynomial of the ambient coordinates.
  static ScalarField random(std::uint64_t seed, int ambient_dim);

  Series operator()(const SurfaceJet& sj) const { return fn_(sj); }
  std::vector<double> sample(const Immersion& imm, const QuadratureGrid& grid) const;

 private:
  Fn fn_;
};

/// Section of the normal bundle, stored in ambient coordinates.
class NormalField {
 public:
  using Fn = std::function<SeriesVector(const SurfaceJet&)>;

  /// `fn` must return normal vectors; use `projected` otherwise.
  explicit NormalField(Fn fn) : fn_(std::move(fn)) {}

  static NormalField mean_curvature();
  static NormalField dt_normal();
  /// P_N(W o x) for an ambient vector field W.
  static NormalField projected(std::function<SeriesVector(const SeriesVector&)> W);
  /// Normal projection of a seeded trigonometric ambient vector field.
  static NormalField random(std::uint64_t seed, int ambient_dim);

  NormalField scaled(double c) const;

  SeriesVector operator()(const SurfaceJet& sj) const { return fn_(sj); }
  std::vector<Vector> sample(const Immersion& imm, const QuadratureGrid& grid) const;

 private:
  Fn fn_;
};

/// Calls fn(node_index, SurfaceJet) for each grid node in order.
template <class F>
void for_each_node(const Immersion& imm, const QuadratureGrid& grid, int order, F&& fn) {
  for (std::size_t i = 0; i < grid.size(); ++i) fn(i, SurfaceJet::at(imm, grid.point(i), order));
}

/// nabla^perp_X xi at p for an ambient tangent vector X of Sigma.
Vector normal_derivative(const Immersion& imm, const ParamPoint& p, const NormalField& xi, const Vector& X);

/// Delta^perp xi at every node.
std::vector<Vector> rough_laplacian(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi);

struct HessianSamples {
  std::vector<Matrix2> hessian;  // orthonormal tangent frame
  std::vector<double> laplacian;
};
HessianSamples hessian_and_laplacian(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f);

/// P(X, Y) = m <X, Y> h - sigma(X, Y) and its frame matrices P_alpha = m H^alpha I - A_alpha.
struct PTensor {
  AmbientForm P;
  std::vector<Matrix2> P_alpha;
};
PTensor p_tensor(const PointGeometry& pg);

enum class BoxStarForm {
  hilbert_schmidt,  // <P, nabla^2 xi>
  trace_form,       // 2 <h, Delta^perp xi> - sum_alpha tr(A_alpha o Hess xi^alpha), m = 2
};

double box_star(const SurfaceJet& sj, const PointGeometry& pg, const SeriesVector& xi,
                BoxStarForm form = BoxStarForm::trace_form);
std::vector<double> box_star(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi,
                             BoxStarForm form = BoxStarForm::trace_form);

/// box(f) = sum_alpha tr(P_alpha o Hess f) e_alpha
Vector box(const SurfaceJet& sj, const PointGeometry& pg, const Series& f);
std::vector<Vector> box(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f);

/// Two sides of an integral identity; residual = |lhs - rhs| / (1 + |lhs| + |rhs|).
struct IntegralIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};
IntegralIdentity make_identity(double lhs, double rhs);

/// int f box*(xi) = int <box f, xi> + (m-1) int (f <nabla^perp_T xi, N> - <N, xi> <grad f, T>)
IntegralIdentity lemma1_residual(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f,
                                 const NormalField& xi);
/// Several pairs in one sweep over the grid.
std::vector<IntegralIdentity> lemma1_residuals(const Immersion& imm, const QuadratureGrid& grid,
                                               const std::vector<std::pair<ScalarField, NormalField>>& pairs);
/// int box*(xi) = (m-1) int <nabla^perp_T xi, N>
IntegralIdentity cor1_residual(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi);
std::vector<IntegralIdentity> cor1_residuals(const Immersion& imm, const QuadratureGrid& grid,
                                             const std::vector<NormalField>& fields);

/// int <Delta^perp xi, eta> against int <xi, Delta^perp eta>.
IntegralIdentity laplacian_symmetry(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi,
                                    const NormalField& eta);

/// |1/2 Delta H^2 - <Delta^perp h, h> - |nabla^perp h|^2| at a point (order-4 jets).
double h_laplacian_residual(const PointGeometry& pg);

}  // namespace tmc
