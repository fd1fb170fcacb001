#include "tmc/operators.hpp"

#include <cmath>

#include "tmc/errors.hpp"
#include "tmc/random.hpp"

namespace tmc {

namespace {

// sum_k a_k sin(<w_k, x> + phase_k)
struct TrigSum {
  struct Term {
    double amplitude;
    std::array<double, kMaxAmbientDim> w;
    double phase;
  };
  double offset = 0.0;
  std::vector<Term> terms;

  static TrigSum random(Rng& rng, int dim, int count, double offset) {
    TrigSum s;
    s.offset = offset;
    for (int k = 0; k < count; ++k) {
      Term t{rng.uniform(-1.0, 1.0), {}, rng.uniform(0.0, 2.0 * 3.141592653589793)};
      for (int d = 0; d < dim; ++d) t.w[d] = rng.uniform(-1.5, 1.5);
      s.terms.push_back(t);
    }
    return s;
  }

  Series operator()(const SeriesVector& x) const {
    Series acc = Series::constant(offset);
    for (const auto& t : terms) {
      Series arg = Series::constant(t.phase);
      for (int d = 0; d < x.dim(); ++d) arg += t.w[d] * x[d];
      acc += t.amplitude * sin(arg);
    }
    return acc;
  }
};

Vector frame_gradient(const SurfaceJet& sj, const Series& f) {
  return sj.coord_to_frame().transpose() * sj.gradient(f);
}

double hs_pairing(const AmbientForm& a, const AmbientForm& b) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += a[i][j].dot(b[i][j]);
  return s;
}

struct LemmaTerms {
  double lhs, rhs, box_star, cor_rhs;
};

LemmaTerms lemma_terms(const SurfaceJet& sj, const PointGeometry& pg, const PTensor& P, const Series& f,
                       const SeriesVector& xi_s) {
  const double m = pg.m;
  const double fv = f.value();
  const Vector xi = xi_s.value();
  const double bs = hs_pairing(P.P, sj.normal_hessian(xi_s));
  const Matrix2 Hf = sj.hessian(f);
  Vector boxf = Vector::Zero(xi.size());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) boxf += Hf(a, b) * P.P[a][b];
  const auto dxi = sj.normal_derivative(xi_s);
  const double dT_xi_N = (pg.T_frame[0] * dxi[0] + pg.T_frame[1] * dxi[1]).dot(pg.N);
  const double gradf_T = frame_gradient(sj, f).dot(pg.T_frame);
  LemmaTerms t;
  t.box_star = bs;
  t.lhs = fv * bs;
  t.rhs = boxf.dot(xi) + (m - 1.0) * (fv * dT_xi_N - pg.N.dot(xi) * gradf_T);
  t.cor_rhs = (m - 1.0) * dT_xi_N;
  return t;
}

}  // namespace

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](const SurfaceJet&) { return Series::constant(c); });
}

ScalarField ScalarField::height() {
  return ScalarField([](const SurfaceJet& sj) { return sj.position()[sj.ambient_dim() - 1].truncated(kFieldOrder); });
}

ScalarField ScalarField::ambient(std::function<Series(const SeriesVector&)> g) {
  return ScalarField([g = std::move(g)](const SurfaceJet& sj) { return g(sj.position().truncated(kFieldOrder)); });
}

ScalarField ScalarField::parametric(std::function<Series(const Series&, const Series&)> f) {
  return ScalarField([f = std::move(f)](const SurfaceJet& sj) {
    return f(sj.parameter(0).truncated(kFieldOrder), sj.parameter(1).truncated(kFieldOrder));
  });
}

ScalarField ScalarField::random(std::uint64_t seed, int ambient_dim) {
  Rng rng(seed);
  const double offset = rng.uniform(-1.0, 1.0);
  return ambient(TrigSum::random(rng, ambient_dim, 3, offset));
}

std::vector<double> ScalarField::sample(const Immersion& imm, const QuadratureGrid& grid) const {
  std::vector<double> out(grid.size());
  for_each_node(imm, grid, 2, [&](std::size_t i, const SurfaceJet& sj) { out[i] = fn_(sj).value(); });
  return out;
}

NormalField NormalField::mean_curvature() {
  return NormalField([](const SurfaceJet& sj) { return sj.mean_curvature(); });
}

NormalField NormalField::dt_normal() {
  return NormalField([](const SurfaceJet& sj) { return sj.dt_normal(); });
}

NormalField NormalField::projected(std::function<SeriesVector(const SeriesVector&)> W) {
  return NormalField([W = std::move(W)](const SurfaceJet& sj) {
    return sj.project_normal(W(sj.position().truncated(kFieldOrder)));
  });
}

NormalField NormalField::random(std::uint64_t seed, int ambient_dim) {
  Rng rng(seed);
  std::vector<TrigSum> comps;
  for (int d = 0; d < ambient_dim; ++d) comps.push_back(TrigSum::random(rng, ambient_dim, 2, rng.uniform(-0.5, 0.5)));
  return projected([comps = std::move(comps)](const SeriesVector& x) {
    SeriesVector w(x.dim());
    for (int d = 0; d < x.dim(); ++d) w[d] = comps[d](x);
    return w;
  });
}

NormalField NormalField::scaled(double c) const {
  return NormalField([fn = fn_, c](const SurfaceJet& sj) { return c * fn(sj); });
}

std::vector<Vector> NormalField::sample(const Immersion& imm, const QuadratureGrid& grid) const {
  std::vector<Vector> out(grid.size());
  for_each_node(imm, grid, 2, [&](std::size_t i, const SurfaceJet& sj) { out[i] = fn_(sj).value(); });
  return out;
}

Vector normal_derivative(const Immersion& imm, const ParamPoint& p, const NormalField& xi, const Vector& X) {
  const SurfaceJet sj = SurfaceJet::at(imm, p, 3);
  const Vector tangential = sj.project_tangent(X);
  if ((X - tangential).norm() > 1e-9 * (1.0 + X.norm())) throw InvalidArgument("direction is not tangent to Sigma");
  const auto d = sj.normal_derivative(xi(sj));
  return tangential.dot(sj.tangent_basis(0).value()) * d[0] + tangential.dot(sj.tangent_basis(1).value()) * d[1];
}

std::vector<Vector> rough_laplacian(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi) {
  std::vector<Vector> out(grid.size());
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) { out[i] = sj.rough_laplacian(xi(sj)); });
  return out;
}

HessianSamples hessian_and_laplacian(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f) {
  HessianSamples out;
  out.hessian.resize(grid.size());
  out.laplacian.resize(grid.size());
  for_each_node(imm, grid, 3, [&](std::size_t i, const SurfaceJet& sj) {
    out.hessian[i] = sj.hessian(f(sj));
    out.laplacian[i] = out.hessian[i].trace();
  });
  return out;
}

PTensor p_tensor(const PointGeometry& pg) {
  PTensor P;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) P.P[a][b] = (a == b ? pg.m : 0.0) * pg.h - pg.sigma[a][b];
  for (std::size_t al = 0; al < pg.weingarten.size(); ++al) {
    P.P_alpha.push_back(pg.m * pg.H_alpha[al] * Matrix2::Identity() - pg.weingarten[al]);
  }
  return P;
}

double box_star(const SurfaceJet& sj, const PointGeometry& pg, const SeriesVector& xi, BoxStarForm form) {
  const AmbientForm H2 = sj.normal_hessian(xi);
  if (form == BoxStarForm::hilbert_schmidt) return hs_pairing(p_tensor(pg).P, H2);
  if (pg.m != 2) throw InvalidArgument("trace form of box* is the m = 2 specialization");
  double s = 2.0 * pg.h.dot(H2[0][0] + H2[1][1]);
  for (std::size_t al = 0; al < pg.weingarten.size(); ++al) {
    const Vector e = pg.frames.normal.col(static_cast<Eigen::Index>(al));
    Matrix2 M;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) M(a, b) = H2[a][b].dot(e);
    s -= (pg.weingarten[al] * M).trace();
  }
  return s;
}

std::vector<double> box_star(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi,
                             BoxStarForm form) {
  std::vector<double> out(grid.size());
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    out[i] = box_star(sj, pointwise_geometry(sj), xi(sj), form);
  });
  return out;
}

Vector box(const SurfaceJet& sj, const PointGeometry& pg, const Series& f) {
  const Matrix2 Hf = sj.hessian(f);
  const PTensor P = p_tensor(pg);
  Vector out = Vector::Zero(sj.ambient_dim());
  for (std::size_t al = 0; al < P.P_alpha.size(); ++al) {
    out += (P.P_alpha[al] * Hf).trace() * pg.frames.normal.col(static_cast<Eigen::Index>(al));
  }
  return out;
}

std::vector<Vector> box(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f) {
  std::vector<Vector> out(grid.size());
  for_each_node(imm, grid, 3, [&](std::size_t i, const SurfaceJet& sj) { out[i] = box(sj, pointwise_geometry(sj), f(sj)); });
  return out;
}

IntegralIdentity make_identity(double lhs, double rhs) {
  return {lhs, rhs, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs))};
}

std::vector<IntegralIdentity> lemma1_residuals(const Immersion& imm, const QuadratureGrid& grid,
                                               const std::vector<std::pair<ScalarField, NormalField>>& pairs) {
  require_compact(imm, "box* integration-by-parts identity");
  std::vector<CompensatedSum> lhs(pairs.size()), rhs(pairs.size());
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    const PointGeometry pg = pointwise_geometry(sj);
    const PTensor P = p_tensor(pg);
    const double w = grid.weight(i) * pg.area_density;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const LemmaTerms t = lemma_terms(sj, pg, P, pairs[k].first(sj), pairs[k].second(sj));
      lhs[k].add(w * t.lhs);
      rhs[k].add(w * t.rhs);
    }
  });
  std::vector<IntegralIdentity> out;
  for (std::size_t k = 0; k < pairs.size(); ++k) out.push_back(make_identity(lhs[k].value(), rhs[k].value()));
  return out;
}

IntegralIdentity lemma1_residual(const Immersion& imm, const QuadratureGrid& grid, const ScalarField& f,
                                 const NormalField& xi) {
  return lemma1_residuals(imm, grid, {{f, xi}}).front();
}

std::vector<IntegralIdentity> cor1_residuals(const Immersion& imm, const QuadratureGrid& grid,
                                             const std::vector<NormalField>& fields) {
  require_compact(imm, "box* divergence identity");
  std::vector<CompensatedSum> lhs(fields.size()), rhs(fields.size());
  const Series one = Series::constant(1.0);
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    const PointGeometry pg = pointwise_geometry(sj);
    const PTensor P = p_tensor(pg);
    const double w = grid.weight(i) * pg.area_density;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const LemmaTerms t = lemma_terms(sj, pg, P, one, fields[k](sj));
      lhs[k].add(w * t.box_star);
      rhs[k].add(w * t.cor_rhs);
    }
  });
  std::vector<IntegralIdentity> out;
  for (std::size_t k = 0; k < fields.size(); ++k) out.push_back(make_identity(lhs[k].value(), rhs[k].value()));
  return out;
}

IntegralIdentity cor1_residual(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi) {
  return cor1_residuals(imm, grid, {xi}).front();
}

IntegralIdentity laplacian_symmetry(const Immersion& imm, const QuadratureGrid& grid, const NormalField& xi,
                                    const NormalField& eta) {
  require_compact(imm, "Laplacian symmetry");
  CompensatedSum lhs, rhs;
  for_each_node(imm, grid, 4, [&](std::size_t i, const SurfaceJet& sj) {
    const SeriesVector x = xi(sj), e = eta(sj);
    const double w = grid.weight(i) * sj.area_density().value();
    lhs.add(w * sj.rough_laplacian(x).dot(e.value()));
    rhs.add(w * x.value().dot(sj.rough_laplacian(e)));
  });
  return make_identity(lhs.value(), rhs.value());
}

double h_laplacian_residual(const PointGeometry& pg) {
  pg.require_order(4, "H^2 Laplacian identity");
  const double grad = pg.nabla_h[0].squaredNorm() + pg.nabla_h[1].squaredNorm();
  return std::abs(0.5 * pg.laplacian_H_sq - pg.laplacian_h.dot(pg.h) - grad);
}

}  // namespace tmc
