#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tmc/immersion.hpp"
#include "tmc/series.hpp"
#include "tmc/series_vector.hpp"

namespace tmc {

inline constexpr double kDegenerateMetric = 1e-12;

using Matrix2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
/// Ambient-valued symmetric bilinear form on the 2-D tangent space, frame components.
using AmbientForm = std::array<std::array<Vector, 2>, 2>;

/// Geometry of the immersion in jet arithmetic around one parameter point.
///
/// All normal-bundle objects are stored in ambient coordinates, so covariant
/// derivatives are projections of Euclidean derivatives and never touch the
/// (arbitrary) normal frame. Series orders: x has the jet order k, first
/// derivatives and the metric k-1, sigma, h and Christoffel symbols k-2.
class SurfaceJet {
 public:
  /// `x` is the Taylor expansion of the immersion around parameter point `p`, order >= 2.
  SurfaceJet(const SeriesVector& x, int sphere_dim, const ParamPoint& p = {0.0, 0.0});

  static SurfaceJet at(const Immersion& imm, const ParamPoint& p, int order = Series::kMaxOrder);
  static SurfaceJet from_jet(const Jet& jet, int sphere_dim, const ParamPoint& p = {0.0, 0.0});

  const ParamPoint& param() const { return p_; }
  /// Parameter coordinate `axis` as a jet variable of the same order as x.
  Series parameter(int axis) const { return Series::variable(p_[axis], axis, order()); }

  int order() const { return x_.order(); }
  int sphere_dim() const { return n_; }
  int ambient_dim() const { return n_ + 2; }
  int codimension() const { return n_ - 1; }

  const SeriesVector& position() const { return x_; }
  const SeriesVector& tangent(int i) const { return dx_[i]; }
  const SeriesVector& constraint_normal() const { return nu_; }
  /// Orthonormal basis of the tangent plane (Gram-Schmidt of x_u, x_v).
  const SeriesVector& tangent_basis(int a) const { return q_[a]; }
  const Series& metric(int i, int j) const { return g_[i][j]; }
  const Series& inverse_metric(int i, int j) const { return ginv_[i][j]; }
  /// Gamma^k_ij from first metric derivatives.
  const Series& christoffel(int k, int i, int j) const { return gamma_[k][i][j]; }
  /// sigma(d_i, d_j) in ambient coordinates.
  const SeriesVector& sigma(int i, int j) const { return sigma_[i][j]; }
  const SeriesVector& mean_curvature() const { return h_; }
  const SeriesVector& dt_tangent() const { return T_; }
  const SeriesVector& dt_normal() const { return N_; }
  Series area_density() const;

  /// Projections onto the normal space of Sigma inside T(S^n x R) and onto T Sigma.
  SeriesVector project_normal(const SeriesVector& w) const;
  SeriesVector project_tangent(const SeriesVector& w) const;
  Vector project_normal(const Vector& w) const;
  Vector project_tangent(const Vector& w) const;

  /// e_a = sum_i E(i, a) d_i for the orthonormal frame e_a = tangent_basis(a).
  const Matrix2& coord_to_frame() const { return E_; }

  // Covariant calculus at the base point, results in the orthonormal tangent frame.

  /// d_i f
  Eigen::Vector2d gradient(const Series& f) const;
  /// Hess f(e_a, e_b)
  Matrix2 hessian(const Series& f) const;
  double laplacian(const Series& f) const { return hessian(f).trace(); }
  /// nabla^perp_{e_a} xi, a = 0, 1
  std::array<Vector, 2> normal_derivative(const SeriesVector& xi) const;
  /// (nabla^perp)^2 xi (e_a, e_b)
  AmbientForm normal_hessian(const SeriesVector& xi) const;
  /// tr (nabla^perp)^2 xi
  Vector rough_laplacian(const SeriesVector& xi) const;

 private:
  Matrix2 to_frame(const Matrix2& coord) const { return E_.transpose() * coord * E_; }

  int n_;
  ParamPoint p_;
  SeriesVector x_;
  std::array<SeriesVector, 2> dx_;
  SeriesVector nu_;
  std::array<SeriesVector, 2> q_;
  std::array<std::array<Series, 2>, 2> g_, ginv_;
  std::array<std::array<std::array<Series, 2>, 2>, 2> gamma_;
  std::array<std::array<SeriesVector, 2>, 2> sigma_;
  SeriesVector h_, T_, N_;
  Matrix2 E_;
  std::array<Vector, 3> basis_values_;  // nu, q_0, q_1 at the base point
};

/// Orthonormal tangent and normal frames at a point.
struct Frames {
  Eigen::MatrixXd tangent;  // (n+2) x 2
  Eigen::MatrixXd normal;   // (n+2) x (n-1)
  Matrix2 coord_to_frame;
  Vector constraint_normal;
};

/// Pointwise tensors of the immersion. Frame-dependent entries (weingarten,
/// H_alpha, phi, N_alpha) follow the normal frame in `frames`; every scalar
/// below them is gauge invariant.
struct PointGeometry {
  int jet_order = 0;
  int m = 2;
  AmbientPoint x;
  Frames frames;

  Matrix2 metric;
  Matrix2 inverse_metric;
  double area_density = 0.0;
  std::array<Matrix2, 2> christoffel;  // christoffel[k](i, j)

  AmbientForm sigma;                 // sigma(e_a, e_b)
  std::vector<Matrix2> weingarten;   // A_alpha
  std::vector<Matrix2> phi;          // phi_alpha
  Vector h;
  Vector H_alpha;
  Vector T, N;
  Eigen::Vector2d T_frame;
  Vector N_alpha;
  Matrix2 A_h, A_N, phi_h, phi_N;

  double H = 0.0;
  double sigma_sq = 0.0;
  double phi_sq = 0.0;
  double phi_h_norm = 0.0;
  double phi_N_sq = 0.0;
  double T_sq = 0.0;
  double N_sq = 0.0;
  double N_dot_h = 0.0;
  double K = 0.0;  // from 2H^2 = 2K + |phi|^2 - 2(1 - |T|^2)
  std::array<Vector, 2> nabla_T;  // nabla_{e_a} T
  std::array<Vector, 2> nabla_N;  // nabla^perp_{e_a} N

  // Available for jet order >= 3.
  std::optional<double> K_intrinsic;                       // Brioschi
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> riemann{};  // <R(e_a,e_b)e_c,e_d>
  std::array<AmbientForm, 2> nabla_sigma;                  // (nabla_{e_a} sigma)(e_b, e_c)
  std::array<Vector, 2> nabla_h;                           // nabla^perp_{e_a} h

  // Available for jet order 4.
  AmbientForm hess_h;            // (nabla^perp)^2 h (e_a, e_b)
  Vector laplacian_h;            // Delta^perp h
  double laplacian_sigma_sq = 0.0;
  double laplacian_H_sq = 0.0;

  void require_order(int k, const char* what) const;
};

/// Builds all pointwise tensors. `gauge`, when given, is an orthogonal
/// (n-1) x (n-1) matrix applied to the Gram-Schmidt normal frame.
PointGeometry pointwise_geometry(const SurfaceJet& sj, const std::optional<Eigen::MatrixXd>& gauge = std::nullopt);
PointGeometry pointwise_geometry(const Immersion& imm, const ParamPoint& p, int order = Series::kMaxOrder);

/// Levi-Civita connection of S^n x R through the flat embedding:
/// nabla_X Y = dY + <X_s, Y_s> (p, 0), for X, Y tangent at `base`.
/// Throws InvalidArgument when X is not tangent.
Vector ambient_connection(const AmbientPoint& base, const Vector& X, const Vector& Y, const Vector& dY);

/// Curvature tensor of S^n x R with the convention R(X,Y)Z = nabla_[X,Y] Z - [nabla_X, nabla_Y] Z.
Vector ambient_curvature(const AmbientPoint& base, const Vector& X, const Vector& Y, const Vector& Z);

/// |<R(e_a,e_b)e_c,e_d> - (ambient + second fundamental form terms)| for frame indices.
double gauss_residual(const PointGeometry& pg, int a, int b, int c, int d);
double gauss_residual(const PointGeometry& pg);

/// max over frame triples of |(nabla_Y sigma)(X,Z) - (nabla_X sigma)(Y,Z) - (<Y,Z><X,T> - <X,Z><Y,T>) N|.
double codazzi_residual(const PointGeometry& pg);
double codazzi_residual(const Immersion& imm, const ParamPoint& p);

/// max_a |nabla_a T - A_N e_a| + |nabla^perp_a N + sigma(T, e_a)|; order-2 jets suffice.
double dt_compatibility_residual(const PointGeometry& pg);

/// K = H^2 - |phi|^2 / 2 + 1 - |T|^2.
double gaussian_curvature(const PointGeometry& pg);

/// Gaussian curvature from E, F, G and their derivatives (Brioschi formula).
double brioschi_curvature(const SurfaceJet& sj);

}  // namespace tmc
