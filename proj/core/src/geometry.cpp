#include "tmc/geometry.hpp"

#include <cmath>
#include <sstream>

#include "tmc/errors.hpp"

namespace tmc {

namespace {

SeriesVector sphere_part(const SeriesVector& x) {
  SeriesVector s = x;
  s[x.dim() - 1] = Series(0.0);
  return s;
}

SeriesVector normalized(const SeriesVector& v) { return pow(dot(v, v), -0.5) * v; }

Vector value_derivative(const SeriesVector& v, int axis) {
  Vector r(v.dim());
  for (int k = 0; k < v.dim(); ++k) r[k] = v[k].partial(axis == 0 ? 1 : 0, axis == 1 ? 1 : 0);
  return r;
}

// Orthonormal completion of the columns of `q` by standard basis vectors,
// picking the largest residual each time (ties go to the lower index).
Eigen::MatrixXd complete_basis(const Eigen::MatrixXd& q, int extra) {
  const int D = static_cast<int>(q.rows());
  Eigen::MatrixXd Q(D, q.cols() + extra);
  Q.leftCols(q.cols()) = q;
  std::vector<bool> used(D, false);
  for (int c = 0; c < extra; ++c) {
    const int filled = static_cast<int>(q.cols()) + c;
    int best = -1;
    double best_norm = -1.0;
    Vector best_r;
    for (int k = 0; k < D; ++k) {
      if (used[k]) continue;
      Vector r = Vector::Unit(D, k);
      for (int pass = 0; pass < 2; ++pass) r -= Q.leftCols(filled) * (Q.leftCols(filled).transpose() * r);
      const double nr = r.norm();
      if (nr > best_norm + 1e-14) {
        best = k;
        best_norm = nr;
        best_r = r;
      }
    }
    used[best] = true;
    Q.col(filled) = best_r / best_norm;
  }
  return Q.rightCols(extra);
}

Matrix2 form_matrix(const AmbientForm& s, const Vector& e) {
  Matrix2 A;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) A(a, b) = s[a][b].dot(e);
  return A;
}

// Coordinate tensor of ambient vectors -> frame components.
AmbientForm coord_form_to_frame(const std::array<std::array<Vector, 2>, 2>& c, const Matrix2& E) {
  AmbientForm f;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      f[a][b] = Vector::Zero(c[0][0].size());
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) f[a][b] += E(i, a) * E(j, b) * c[i][j];
    }
  }
  return f;
}

}  // namespace

SurfaceJet::SurfaceJet(const SeriesVector& x, int sphere_dim, const ParamPoint& p) : n_(sphere_dim), p_(p), x_(x) {
  if (x.dim() != n_ + 2) throw InvalidArgument("jet dimension does not match S^n x R");
  if (x.order() < 2) throw InvalidArgument("surface geometry needs jets of order >= 2");
  const int D = n_ + 2;
  for (int i = 0; i < 2; ++i) dx_[i] = x_.derivative(i);
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) g_[i][j] = g_[j][i] = dot(dx_[i], dx_[j]);

  const Series det = g_[0][0] * g_[1][1] - g_[0][1] * g_[0][1];
  if (!(det.value() > kDegenerateMetric)) {
    std::ostringstream os;
    os << "metric determinant " << det.value() << " at a degenerate point";
    throw DegenerateImmersion(os.str());
  }
  const Series inv_det = reciprocal(det);
  ginv_[0][0] = g_[1][1] * inv_det;
  ginv_[1][1] = g_[0][0] * inv_det;
  ginv_[0][1] = ginv_[1][0] = -g_[0][1] * inv_det;

  std::array<std::array<std::array<Series, 2>, 2>, 2> dg;  // dg[l][i][j] = d_l g_ij
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dg[l][i][j] = g_[i][j].derivative(l);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        Series acc = Series::constant(0.0);
        for (int l = 0; l < 2; ++l) acc += ginv_[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gamma_[k][i][j] = gamma_[k][j][i] = 0.5 * acc;
      }
    }
  }

  nu_ = normalized(sphere_part(x_));
  SeriesVector t0 = dx_[0];
  t0.axpy(-dot(dx_[0], nu_), nu_);
  q_[0] = normalized(t0);
  SeriesVector t1 = dx_[1];
  t1.axpy(-dot(dx_[1], nu_), nu_);
  t1.axpy(-dot(dx_[1], q_[0]), q_[0]);
  q_[1] = normalized(t1);
  basis_values_ = {nu_.value(), q_[0].value(), q_[1].value()};

  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) sigma_[i][j] = sigma_[j][i] = project_normal(dx_[i].derivative(j));
  h_ = SeriesVector(D);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h_.axpy(0.5 * ginv_[i][j], sigma_[i][j]);

  const SeriesVector et = SeriesVector::basis(D, D - 1);
  N_ = project_normal(et);
  T_ = project_tangent(et);

  Matrix2 C;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i) C(a, i) = basis_values_[1 + a].dot(value_derivative(x_, i));
  E_ = C.inverse();
}

SurfaceJet SurfaceJet::at(const Immersion& imm, const ParamPoint& p, int order) {
  if (imm.has_closed_form_jets()) {
    SeriesVector x = imm.expand(p, order);
    const AmbientPoint base(x.value());
    if (!(base.constraint_defect() <= kConstraintTolerance)) {
      std::ostringstream os;
      os << "point misses S^n x R: | |x_s| - 1 | = " << base.constraint_defect();
      throw ImmersionDefect(os.str());
    }
    return SurfaceJet(x, imm.sphere_dim(), p);
  }
  return from_jet(jet(imm, p, order), imm.sphere_dim(), p);
}

SurfaceJet SurfaceJet::from_jet(const Jet& j, int sphere_dim, const ParamPoint& p) {
  return SurfaceJet(j.to_series(), sphere_dim, p);
}

Series SurfaceJet::area_density() const { return sqrt(g_[0][0] * g_[1][1] - g_[0][1] * g_[0][1]); }

SeriesVector SurfaceJet::project_tangent(const SeriesVector& w) const {
  SeriesVector r(w.dim());
  r.axpy(dot(w, q_[0]), q_[0]);
  r.axpy(dot(w, q_[1]), q_[1]);
  return r;
}

SeriesVector SurfaceJet::project_normal(const SeriesVector& w) const {
  SeriesVector r = w;
  r.axpy(-dot(w, nu_), nu_);
  r.axpy(-dot(w, q_[0]), q_[0]);
  r.axpy(-dot(w, q_[1]), q_[1]);
  return r;
}

Vector SurfaceJet::project_tangent(const Vector& w) const {
  return basis_values_[1] * basis_values_[1].dot(w) + basis_values_[2] * basis_values_[2].dot(w);
}

Vector SurfaceJet::project_normal(const Vector& w) const {
  Vector r = w;
  for (const auto& b : basis_values_) r -= b * b.dot(w);
  return r;
}

Eigen::Vector2d SurfaceJet::gradient(const Series& f) const { return {f.partial(1, 0), f.partial(0, 1)}; }

Matrix2 SurfaceJet::hessian(const Series& f) const {
  const Eigen::Vector2d df = gradient(f);
  Matrix2 H;
  H(0, 0) = f.partial(2, 0);
  H(1, 1) = f.partial(0, 2);
  H(0, 1) = H(1, 0) = f.partial(1, 1);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) H(i, j) -= gamma_[k][i][j].value() * df[k];
  }
  return to_frame(H);
}

std::array<Vector, 2> SurfaceJet::normal_derivative(const SeriesVector& xi) const {
  std::array<Vector, 2> coord{project_normal(value_derivative(xi, 0)), project_normal(value_derivative(xi, 1))};
  return {E_(0, 0) * coord[0] + E_(1, 0) * coord[1], E_(0, 1) * coord[0] + E_(1, 1) * coord[1]};
}

AmbientForm SurfaceJet::normal_hessian(const SeriesVector& xi) const {
  std::array<SeriesVector, 2> w{project_normal(xi.derivative(0)), project_normal(xi.derivative(1))};
  std::array<Vector, 2> wv{w[0].value(), w[1].value()};
  std::array<std::array<Vector, 2>, 2> c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Vector v = project_normal(value_derivative(w[j], i));
      for (int k = 0; k < 2; ++k) v -= gamma_[k][i][j].value() * wv[k];
      c[i][j] = std::move(v);
    }
  }
  // not symmetric in general: the antisymmetric part is the normal curvature
  return coord_form_to_frame(c, E_);
}

Vector SurfaceJet::rough_laplacian(const SeriesVector& xi) const {
  const AmbientForm H = normal_hessian(xi);
  return H[0][0] + H[1][1];
}

void PointGeometry::require_order(int k, const char* what) const {
  if (jet_order < k) {
    throw InvalidArgument(std::string(what) + " requires jets of order " + std::to_string(k));
  }
}

PointGeometry pointwise_geometry(const SurfaceJet& sj, const std::optional<Eigen::MatrixXd>& gauge) {
  const int D = sj.ambient_dim();
  const int codim = sj.codimension();
  const Matrix2& E = sj.coord_to_frame();
  PointGeometry pg;
  pg.jet_order = sj.order();
  pg.x = AmbientPoint(sj.position().value());

  pg.frames.constraint_normal = sj.constraint_normal().value();
  pg.frames.tangent.resize(D, 2);
  pg.frames.tangent.col(0) = sj.tangent_basis(0).value();
  pg.frames.tangent.col(1) = sj.tangent_basis(1).value();
  pg.frames.coord_to_frame = E;
  Eigen::MatrixXd known(D, 3);
  known << pg.frames.constraint_normal, pg.frames.tangent;
  pg.frames.normal = complete_basis(known, codim);
  if (gauge) {
    if (gauge->rows() != codim || gauge->cols() != codim) throw InvalidArgument("gauge must be (n-1) x (n-1)");
    pg.frames.normal = pg.frames.normal * (*gauge);
  }

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      pg.metric(i, j) = sj.metric(i, j).value();
      pg.inverse_metric(i, j) = sj.inverse_metric(i, j).value();
      for (int k = 0; k < 2; ++k) pg.christoffel[k](i, j) = sj.christoffel(k, i, j).value();
    }
  }
  pg.area_density = std::sqrt(pg.metric.determinant());

  std::array<std::array<Vector, 2>, 2> sc;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sc[i][j] = sj.sigma(i, j).value();
  pg.sigma = coord_form_to_frame(sc, E);

  pg.h = sj.mean_curvature().value();
  pg.T = sj.dt_tangent().value();
  pg.N = sj.dt_normal().value();
  pg.T_frame = pg.frames.tangent.transpose() * pg.T;
  pg.H_alpha = pg.frames.normal.transpose() * pg.h;
  pg.N_alpha = pg.frames.normal.transpose() * pg.N;

  pg.weingarten.resize(codim);
  pg.phi.resize(codim);
  pg.A_h.setZero();
  pg.A_N.setZero();
  for (int al = 0; al < codim; ++al) {
    pg.weingarten[al] = form_matrix(pg.sigma, pg.frames.normal.col(al));
    pg.phi[al] = pg.weingarten[al] - pg.H_alpha[al] * Matrix2::Identity();
    pg.A_h += pg.H_alpha[al] * pg.weingarten[al];
    pg.A_N += pg.N_alpha[al] * pg.weingarten[al];
    pg.phi_sq += pg.phi[al].squaredNorm();
  }
  pg.phi_h = pg.A_h - 0.5 * pg.A_h.trace() * Matrix2::Identity();
  pg.phi_N = pg.A_N - 0.5 * pg.A_N.trace() * Matrix2::Identity();

  pg.H = pg.h.norm();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) pg.sigma_sq += pg.sigma[a][b].squaredNorm();
  pg.phi_h_norm = pg.phi_h.norm();
  pg.phi_N_sq = pg.phi_N.squaredNorm();
  pg.T_sq = pg.T.squaredNorm();
  pg.N_sq = pg.N.squaredNorm();
  pg.N_dot_h = pg.N.dot(pg.h);
  pg.K = pg.H * pg.H - 0.5 * pg.phi_sq + 1.0 - pg.T_sq;

  // T and N carry one derivative of x, so order-2 jets suffice here.
  pg.nabla_N = sj.normal_derivative(sj.dt_normal());
  for (int a = 0; a < 2; ++a) {
    const Vector dT = E(0, a) * value_derivative(sj.dt_tangent(), 0) + E(1, a) * value_derivative(sj.dt_tangent(), 1);
    pg.nabla_T[a] = sj.project_tangent(dT);
  }

  if (sj.order() >= 3) {
    pg.K_intrinsic = brioschi_curvature(sj);

    // Intrinsic curvature from Christoffel symbols; R_std(d_i,d_j)d_k = R^l_kij d_l.
    std::array<std::array<Matrix2, 2>, 2> dG;  // dG[m][k](i, j) = d_m Gamma^k_ij
    for (int m = 0; m < 2; ++m)
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) dG[m][k](i, j) = sj.christoffel(k, i, j).partial(m == 0, m == 1);
    const auto& G = pg.christoffel;
    double Rc[2][2][2][2];  // <R(d_i,d_j)d_k, d_w>, our sign convention
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          double up[2];
          for (int l = 0; l < 2; ++l) {
            double r = dG[i][l](j, k) - dG[j][l](i, k);
            for (int p = 0; p < 2; ++p) r += G[l](i, p) * G[p](j, k) - G[l](j, p) * G[p](i, k);
            up[l] = r;
          }
          for (int w = 0; w < 2; ++w) Rc[i][j][k][w] = -(pg.metric(0, w) * up[0] + pg.metric(1, w) * up[1]);
        }
      }
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            double acc = 0.0;
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                  for (int w = 0; w < 2; ++w) acc += E(i, a) * E(j, b) * E(k, c) * E(w, d) * Rc[i][j][k][w];
            pg.riemann[a][b][c][d] = acc;
          }

    // (nabla sigma)_kij = P_N(d_k sigma_ij) - Gamma^l_ki sigma_lj - Gamma^l_kj sigma_il
    std::array<std::array<std::array<Vector, 2>, 2>, 2> ns;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          Vector v = sj.project_normal(value_derivative(sj.sigma(i, j), k));
          for (int l = 0; l < 2; ++l) v -= G[l](k, i) * sc[l][j] + G[l](k, j) * sc[i][l];
          ns[k][i][j] = std::move(v);
        }
    for (int a = 0; a < 2; ++a) {
      std::array<std::array<Vector, 2>, 2> slice;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) slice[i][j] = E(0, a) * ns[0][i][j] + E(1, a) * ns[1][i][j];
      pg.nabla_sigma[a] = coord_form_to_frame(slice, E);
    }

    pg.nabla_h = sj.normal_derivative(sj.mean_curvature());
  }

  if (sj.order() >= 4) {
    pg.hess_h = sj.normal_hessian(sj.mean_curvature());
    pg.laplacian_h = pg.hess_h[0][0] + pg.hess_h[1][1];
    Series s2 = Series::constant(0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            s2 += sj.inverse_metric(i, a) * sj.inverse_metric(j, b) * dot(sj.sigma(i, j), sj.sigma(a, b));
    pg.laplacian_sigma_sq = sj.laplacian(s2);
    pg.laplacian_H_sq = sj.laplacian(dot(sj.mean_curvature(), sj.mean_curvature()));
  }
  return pg;
}

PointGeometry pointwise_geometry(const Immersion& imm, const ParamPoint& p, int order) {
  return pointwise_geometry(SurfaceJet::at(imm, p, order));
}

Vector ambient_connection(const AmbientPoint& base, const Vector& X, const Vector& Y, const Vector& dY) {
  const int n1 = base.dim() - 1;
  if (std::abs(X.head(n1).dot(base.sphere_part())) > 1e-9 * (1.0 + X.norm())) {
    throw InvalidArgument("direction is not tangent to S^n x R");
  }
  Vector r = dY;
  const double c = X.head(n1).dot(Y.head(n1));
  r.head(n1) += c * base.sphere_part();
  return r;
}

Vector ambient_curvature(const AmbientPoint& base, const Vector& X, const Vector& Y, const Vector& Z) {
  // Only the sphere factor is curved: R(X,Y)Z = <X_s,Z_s> Y_s - <Y_s,Z_s> X_s.
  const int n1 = base.dim() - 1;
  Vector r = Vector::Zero(base.dim());
  r.head(n1) = X.head(n1).dot(Z.head(n1)) * Y.head(n1) - Y.head(n1).dot(Z.head(n1)) * X.head(n1);
  return r;
}

double gauss_residual(const PointGeometry& pg, int a, int b, int c, int d) {
  pg.require_order(3, "Gauss residual");
  const auto& e = pg.frames.tangent;
  const double amb = ambient_curvature(pg.x, e.col(a), e.col(b), e.col(c)).dot(e.col(d));
  const double ext = pg.sigma[a][c].dot(pg.sigma[b][d]) - pg.sigma[b][c].dot(pg.sigma[a][d]);
  return std::abs(pg.riemann[a][b][c][d] - amb - ext);
}

double gauss_residual(const PointGeometry& pg) {
  double r = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) r = std::max(r, gauss_residual(pg, a, b, c, d));
  return r;
}

double codazzi_residual(const PointGeometry& pg) {
  pg.require_order(3, "Codazzi residual");
  double r = 0.0;
  const auto& T = pg.T_frame;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) {
        const double yz = y == z, xz = x == z;
        const Vector v = pg.nabla_sigma[y][x][z] - pg.nabla_sigma[x][y][z] - (yz * T[x] - xz * T[y]) * pg.N;
        r = std::max(r, v.norm());
      }
  return r;
}

double codazzi_residual(const Immersion& imm, const ParamPoint& p) {
  return codazzi_residual(pointwise_geometry(imm, p, 3));
}

double dt_compatibility_residual(const PointGeometry& pg) {
  pg.require_order(2, "dt compatibility residual");
  double r = 0.0;
  for (int a = 0; a < 2; ++a) {
    const Vector ANe = pg.frames.tangent * pg.A_N.col(a);
    const Vector sTe = pg.T_frame[0] * pg.sigma[0][a] + pg.T_frame[1] * pg.sigma[1][a];
    r = std::max(r, (pg.nabla_T[a] - ANe).norm() + (pg.nabla_N[a] + sTe).norm());
  }
  return r;
}

double gaussian_curvature(const PointGeometry& pg) { return pg.K; }

double brioschi_curvature(const SurfaceJet& sj) {
  if (sj.order() < 3) throw InvalidArgument("Brioschi curvature requires jets of order 3");
  const Series &Eg = sj.metric(0, 0), &F = sj.metric(0, 1), &G = sj.metric(1, 1);
  const double e = Eg.value(), f = F.value(), g = G.value();
  const double Eu = Eg.partial(1, 0), Ev = Eg.partial(0, 1), Fu = F.partial(1, 0), Fv = F.partial(0, 1);
  const double Gu = G.partial(1, 0), Gv = G.partial(0, 1);
  const double Evv = Eg.partial(0, 2), Fuv = F.partial(1, 1), Guu = G.partial(2, 0);
  Eigen::Matrix3d M1, M2;
  M1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
        Fv - 0.5 * Gu, e, f,
        0.5 * Gv, f, g;
  M2 << 0.0, 0.5 * Ev, 0.5 * Gu,
        0.5 * Ev, e, f,
        0.5 * Gu, f, g;
  const double det = e * g - f * f;
  return (M1.determinant() - M2.determinant()) / (det * det);
}

}  // namespace tmc
