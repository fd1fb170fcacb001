#include "tmc/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tmc/errors.hpp"

namespace tmc {

namespace {

SeriesVector trig_vector(const std::vector<std::vector<std::array<double, kMaxAmbientDim + 2>>>& comps,
                         const SeriesVector& x) {
  // comps[d][k] = {amplitude, phase, w_0 .. w_{D-1}}
  SeriesVector r(x.dim());
  for (int d = 0; d < x.dim(); ++d) {
    Series acc = Series::constant(0.0);
    for (const auto& t : comps[d]) {
      Series arg = Series::constant(t[1]);
      for (int j = 0; j < x.dim(); ++j) arg += t[2 + j] * x[j];
      acc += t[0] * sin(arg);
    }
    r[d] = acc;
  }
  return r;
}

// H^2 and sqrt(det g) from an order-2 jet, in plain floating point.
std::pair<double, double> mean_curvature_sq(const Jet& j) {
  const Vector& x = j.base.coords();
  const Vector &xu = j.partial(1, 0), &xv = j.partial(0, 1);
  const int D = static_cast<int>(x.size());
  Vector nu = Vector::Zero(D);
  nu.head(D - 1) = x.head(D - 1).normalized();
  const double E = xu.dot(xu), F = xu.dot(xv), G = xv.dot(xv);
  const double det = E * G - F * F;
  if (!(det > kDegenerateMetric)) throw DegenerateImmersion("metric determinant at or below 1e-12");
  Vector q0 = xu - xu.dot(nu) * nu;
  q0.normalize();
  Vector q1 = xv - xv.dot(nu) * nu - xv.dot(q0) * q0;
  q1.normalize();
  auto normal_part = [&](const Vector& w) -> Vector { return w - w.dot(nu) * nu - w.dot(q0) * q0 - w.dot(q1) * q1; };
  const Vector h = 0.5 * (G * normal_part(j.partial(2, 0)) - 2.0 * F * normal_part(j.partial(1, 1)) +
                          E * normal_part(j.partial(0, 2))) / det;
  return {h.squaredNorm(), std::sqrt(det)};
}

double quadrature_sum(const QuadratureGrid& grid, const std::vector<double>& integrand,
                      const std::vector<double>& density) {
  return integrate(grid, integrand, density);
}

}  // namespace

VariationField VariationField::random(std::uint64_t seed, int ambient_dim) {
  Rng rng(seed);
  std::vector<std::vector<std::array<double, kMaxAmbientDim + 2>>> comps(ambient_dim);
  for (int d = 0; d < ambient_dim; ++d) {
    for (int k = 0; k < 2; ++k) {
      std::array<double, kMaxAmbientDim + 2> t{};
      t[0] = rng.uniform(-1.0, 1.0);
      t[1] = rng.uniform(0.0, 2.0 * 3.141592653589793);
      for (int j = 0; j < ambient_dim; ++j) t[2 + j] = rng.uniform(-1.5, 1.5);
      comps[d].push_back(t);
    }
  }
  return VariationField([comps = std::move(comps)](const SeriesVector& x) { return trig_vector(comps, x); });
}

SeriesVector VariationField::velocity(const SeriesVector& x) const {
  const int D = x.dim();
  SeriesVector w = w_(x);
  Series c = Series::constant(0.0);
  for (int k = 0; k < D - 1; ++k) c += w[k] * x[k];
  for (int k = 0; k < D - 1; ++k) w[k] -= c * x[k];
  return w;
}

SeriesVector VariationField::displace(const SeriesVector& x, double s) const {
  const int D = x.dim();
  const SeriesVector w = w_(x);
  SeriesVector r(D);
  Series norm_sq = Series::constant(0.0);
  for (int k = 0; k < D - 1; ++k) {
    r[k] = x[k] + s * w[k];
    norm_sq += r[k] * r[k];
  }
  const Series inv = pow(norm_sq, -0.5);
  for (int k = 0; k < D - 1; ++k) r[k] = r[k] * inv;
  r[D - 1] = x[D - 1] + s * w[D - 1];
  return r;
}

Immersion deformed(const Immersion& imm, const VariationField& v, double s) {
  ImmersionInfo info = imm.info();
  info.name += "~";
  if (imm.has_closed_form_jets()) {
    return Immersion(imm.sphere_dim(), imm.domain(),
                     [chart = imm.chart(), v, s](const Series& a, const Series& b) { return v.displace(chart(a, b), s); },
                     std::move(info));
  }
  return Immersion::from_point_map(imm.sphere_dim(), imm.domain(),
                                   [imm, v, s](const ParamPoint& p) {
                                     return v.displace(SeriesVector::constant(imm.map(p)), s).value();
                                   },
                                   std::move(info));
}

double total_mean_curvature(const Immersion& imm, const QuadratureGrid& grid) {
  require_compact(imm, "total mean curvature");
  std::vector<double> f(grid.size()), dens(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [H2, density] = mean_curvature_sq(jet(imm, grid.point(i), 2));
    f[i] = H2;
    dens[i] = density;
  }
  return quadrature_sum(grid, f, dens);
}

Vector euler_lagrange(const PointGeometry& pg) {
  pg.require_order(4, "Euler-Lagrange field");
  const double m = pg.m;
  Vector E = pg.laplacian_h + (m - pg.T_sq - m * pg.H * pg.H) * pg.h - m * pg.N_dot_h * pg.N;
  // sum_{a,b} H^a tr(A_a A_b) e_b = sum_{ij} <sigma_ij, h> sigma_ij, frame free
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) E += pg.sigma[a][b].dot(pg.h) * pg.sigma[a][b];
  if (pg.m > 2) E *= std::pow(pg.H, m - 2.0);
  return E;
}

ELField el_residual(const Immersion& imm, const QuadratureGrid& grid) {
  ELField out;
  out.field.resize(grid.size());
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    const PointGeometry pg = pointwise_geometry(sj);
    out.field[i] = euler_lagrange(pg);
    out.max_norm = std::max(out.max_norm, out.field[i].norm());
    out.max_sigma_sq = std::max(out.max_sigma_sq, pg.sigma_sq);
  });
  return out;
}

bool certifies_h_surface(const ELField& el) { return el.max_norm <= 1e-6 * (1.0 + el.max_sigma_sq); }

std::vector<FirstVariation> first_variation_checks(const Immersion& imm, const QuadratureGrid& grid,
                                                   const std::vector<VariationField>& vs, double delta) {
  require_compact(imm, "first variation");
  if (!(delta >= kMinVariationStep && delta <= kMaxVariationStep)) {
    throw InvalidArgument("variation step must lie in [1e-4, 1e-2]");
  }
  std::vector<std::vector<double>> pairing(vs.size(), std::vector<double>(grid.size()));
  std::vector<double> dens(grid.size());
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    const PointGeometry pg = pointwise_geometry(sj);
    const Vector E = euler_lagrange(pg);
    dens[i] = pg.area_density;
    const SeriesVector x = SeriesVector::constant(pg.x.coords());
    for (std::size_t k = 0; k < vs.size(); ++k) {
      pairing[k][i] = E.dot(sj.project_normal(Vector(vs[k].velocity(x).value())));
    }
  });
  std::vector<FirstVariation> out;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    FirstVariation r;
    r.analytic = quadrature_sum(grid, pairing[k], dens);
    auto H = [&](double s) { return total_mean_curvature(deformed(imm, vs[k], s), grid); };
    r.fd = (-H(2 * delta) + 8 * H(delta) - 8 * H(-delta) + H(-2 * delta)) / (12 * delta);
    r.residual = std::abs(r.fd - r.analytic) / (1.0 + std::abs(r.fd) + std::abs(r.analytic));
    out.push_back(r);
  }
  return out;
}

FirstVariation first_variation_check(const Immersion& imm, const QuadratureGrid& grid, const VariationField& v,
                                     double delta) {
  return first_variation_checks(imm, grid, {v}, delta).front();
}

SimonsTerms simons_terms(const PointGeometry& pg) {
  pg.require_order(4, "Simons-type formula");
  const double m = pg.m;
  SimonsTerms t;
  t.lhs = 0.5 * pg.laplacian_sigma_sq;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) t.grad_sigma += pg.nabla_sigma[a][b][c].squaredNorm();
      t.hessian += m * pg.sigma[a][b].dot(pg.hess_h[a][b]);
    }
  t.phi_N = m * pg.phi_N_sq;
  for (const auto& ph : pg.phi) t.phi_T -= 2.0 * m * (ph * pg.T_frame).squaredNorm();
  t.phi = (m - pg.T_sq) * pg.phi_sq;
  t.phi_h = -m * pg.T_frame.dot(pg.phi_h * pg.T_frame);
  const auto& A = pg.weingarten;
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t b = 0; b < A.size(); ++b) {
      const Matrix2 C = A[a] * A[b];
      t.trace_cubic += A[b].trace() * (A[a] * A[a] * A[b]).trace();
      t.commutators -= (C - C.transpose()).squaredNorm() + C.trace() * C.trace();
    }
  }
  return t;
}

PointwiseField simons_residual(const Immersion& imm, const QuadratureGrid& grid) {
  PointwiseField out;
  out.values.resize(grid.size());
  out.min = std::numeric_limits<double>::infinity();
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    out.values[i] = simons_terms(pointwise_geometry(sj)).residual();
    out.max_abs = std::max(out.max_abs, std::abs(out.values[i]));
    out.min = std::min(out.min, out.values[i]);
  });
  return out;
}

double huisken_slack(const PointGeometry& pg) {
  pg.require_order(3, "Huisken-type slack");
  const double m = pg.m;
  double grad_sigma = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) grad_sigma += pg.nabla_sigma[a][b][c].squaredNorm();
  const double grad_h = pg.nabla_h[0].squaredNorm() + pg.nabla_h[1].squaredNorm();
  const double dT_h_N = (pg.T_frame[0] * pg.nabla_h[0] + pg.T_frame[1] * pg.nabla_h[1]).dot(pg.N);
  return grad_sigma - m / (m + 2.0) * (3.0 * m * grad_h + 4.0 * (m - 1.0) * dT_h_N);
}

PointwiseField huisken_check(const Immersion& imm, const QuadratureGrid& grid) {
  PointwiseField out;
  out.values.resize(grid.size());
  out.min = std::numeric_limits<double>::infinity();
  for_each_node(imm, grid, 3, [&](std::size_t i, const SurfaceJet& sj) {
    out.values[i] = huisken_slack(pointwise_geometry(sj));
    out.max_abs = std::max(out.max_abs, std::abs(out.values[i]));
    out.min = std::min(out.min, out.values[i]);
  });
  return out;
}

SymmetricMatrixFamily::SymmetricMatrixFamily(std::vector<Eigen::MatrixXd> B) : B_(std::move(B)) {
  if (B_.size() < 2) throw InvalidArgument("the matrix inequality needs p >= 2 matrices");
  const auto m = B_.front().rows();
  if (m < 1) throw InvalidArgument("matrices must be at least 1 x 1");
  for (const auto& b : B_) {
    if (b.rows() != m || b.cols() != m) throw InvalidArgument("matrices must all be m x m");
    if (b != b.transpose()) throw InvalidArgument("matrix family must be symmetric");
  }
}

SymmetricMatrixFamily SymmetricMatrixFamily::random(Rng& rng, int p, int m) {
  if (p < 2 || m < 1) throw InvalidArgument("random family needs p >= 2 and m >= 1");
  std::vector<Eigen::MatrixXd> B;
  for (int a = 0; a < p; ++a) {
    Eigen::MatrixXd b(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) b(i, j) = b(j, i) = rng.uniform(-1.0, 1.0);
    B.push_back(std::move(b));
  }
  return SymmetricMatrixFamily(std::move(B));
}

SymmetricMatrixFamily SymmetricMatrixFamily::extremal_pair() {
  Eigen::MatrixXd b1(2, 2), b2(2, 2);
  b1 << 1, 0, 0, -1;
  b2 << 0, 1, 1, 0;
  return SymmetricMatrixFamily({b1, b2});
}

MatrixLemmaResult matrix_lemma_check(const SymmetricMatrixFamily& family) {
  const auto& B = family.matrices();
  MatrixLemmaResult r;
  double norms = 0.0;
  for (std::size_t a = 0; a < B.size(); ++a) {
    norms += B[a].squaredNorm();
    for (std::size_t b = 0; b < B.size(); ++b) {
      const Eigen::MatrixXd C = B[a] * B[b];
      const double tr = C.trace();
      r.lhs += (C - C.transpose()).squaredNorm() + tr * tr;
    }
  }
  r.rhs = 1.5 * norms * norms;
  r.slack = r.rhs - r.lhs;
  return r;
}

MatrixSweep matrix_lemma_sweep(long trials, std::uint64_t seed, std::optional<int> p, std::optional<int> m) {
  if (trials < 1) throw InvalidArgument("sweep needs at least one trial");
  if (p && *p < 2) throw InvalidArgument("the matrix inequality needs p >= 2");
  if (m && *m < 1) throw InvalidArgument("matrix size must be >= 1");
  Rng rng(seed);
  MatrixSweep s;
  s.seed = seed;
  s.trials = trials;
  s.min_slack = std::numeric_limits<double>::infinity();
  for (long t = 0; t < trials; ++t) {
    const int pp = p.value_or(rng.integer(2, 6));
    const int mm = m.value_or(rng.integer(1, 5));
    const MatrixLemmaResult r = matrix_lemma_check(SymmetricMatrixFamily::random(rng, pp, mm));
    if (r.slack < -1e-12) ++s.violations;
    if (r.slack < s.min_slack) {
      s.min_slack = r.slack;
      s.worst_p = pp;
      s.worst_m = mm;
    }
  }
  return s;
}

double WeingartenIdentities::max() const {
  return std::max({commutator, cubic_trace, cubic_sum, square_sum, combined});
}

WeingartenIdentities weingarten_identities_check(const PointGeometry& pg) {
  if (pg.m != 2) throw InvalidArgument("these identities hold for m = 2");
  const auto& A = pg.weingarten;
  const auto& F = pg.phi;
  const auto& Ha = pg.H_alpha;
  const double H2 = pg.H * pg.H;
  WeingartenIdentities r;
  double cubic = 0.0, square = 0.0, phi_square = 0.0, mixed = 0.0, comm_A = 0.0, comm_phi = 0.0;
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t b = 0; b < A.size(); ++b) {
      const Matrix2 cA = A[a] * A[b] - A[b] * A[a];
      const Matrix2 cF = F[a] * F[b] - F[b] * F[a];
      r.commutator = std::max(r.commutator, (cA - cF).norm());
      r.cubic_trace = std::max(r.cubic_trace, std::abs((F[a] * F[a] * F[b]).trace()));
      cubic += A[b].trace() * (A[a] * A[a] * A[b]).trace();
      const double tAA = (A[a] * A[b]).trace(), tFF = (F[a] * F[b]).trace();
      square += tAA * tAA;
      phi_square += tFF * tFF;
      mixed += Ha[a] * Ha[b] * tFF;
      comm_A += cA.squaredNorm();
      comm_phi += cF.squaredNorm();
    }
  }
  r.cubic_sum = std::abs(cubic - (2.0 * H2 * pg.phi_sq + 4.0 * H2 * H2 + 4.0 * mixed));
  r.square_sum = std::abs(square - (phi_square + 4.0 * H2 * H2 + 4.0 * mixed));
  r.combined = std::abs(-(comm_A + square - cubic) - (-(comm_phi + phi_square) + 2.0 * H2 * pg.phi_sq));
  return r;
}

}  // namespace tmc
