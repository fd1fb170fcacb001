#include "tmc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tmc/errors.hpp"

namespace tmc {

ParameterDomain::ParameterDomain(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw InvalidArgument("parameter domain needs at least one axis");
  for (const auto& a : axes_) {
    if (!(a.hi > a.lo) || !std::isfinite(a.lo) || !std::isfinite(a.hi)) {
      throw InvalidArgument("parameter interval must have positive finite length");
    }
  }
}

double ParameterDomain::coordinate_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.length();
  return v;
}

QuadratureGrid::QuadratureGrid(ParameterDomain domain, std::vector<int> resolution, std::vector<double> coords,
                               std::vector<double> weights)
    : domain_(std::move(domain)),
      resolution_(std::move(resolution)),
      coords_(std::move(coords)),
      weights_(std::move(weights)) {}

void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  // Roots are symmetric; solve for the upper half by Newton on P_n.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = mid - half * x;
    nodes[n - 1 - i] = mid + half * x;
    weights[i] = weights[n - 1 - i] = half * w;
  }
}

QuadratureGrid build_grid(const ParameterDomain& domain, std::span<const int> resolution) {
  const int d = domain.dims();
  if (static_cast<int>(resolution.size()) != d) {
    throw InvalidArgument("resolution has " + std::to_string(resolution.size()) + " entries for a " +
                          std::to_string(d) + "-D domain");
  }
  std::vector<std::vector<double>> axis_nodes(d), axis_weights(d);
  for (int a = 0; a < d; ++a) {
    const int n = resolution[a];
    if (n < kMinResolution) {
      throw InvalidArgument("resolution " + std::to_string(n) + " below minimum " + std::to_string(kMinResolution));
    }
    const Axis& ax = domain.axis(a);
    if (ax.periodic) {
      axis_nodes[a].resize(n);
      axis_weights[a].assign(n, ax.length() / n);
      for (int k = 0; k < n; ++k) axis_nodes[a][k] = ax.lo + ax.length() * k / n;
    } else {
      gauss_legendre(n, ax.lo, ax.hi, axis_nodes[a], axis_weights[a]);
    }
  }

  std::size_t total = 1;
  for (int n : resolution) total *= static_cast<std::size_t>(n);
  std::vector<double> coords(total * d), weights(total);
  std::vector<int> idx(d, 0);
  for (std::size_t i = 0; i < total; ++i) {
    double w = 1.0;
    for (int a = 0; a < d; ++a) {
      coords[i * d + a] = axis_nodes[a][idx[a]];
      w *= axis_weights[a][idx[a]];
    }
    weights[i] = w;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < resolution[a]) break;
      idx[a] = 0;
    }
  }
  return QuadratureGrid(domain, std::vector<int>(resolution.begin(), resolution.end()), std::move(coords),
                        std::move(weights));
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double integrate(const QuadratureGrid& grid, std::span<const double> samples, std::span<const double> density) {
  if (samples.size() != grid.size() || density.size() != grid.size()) {
    throw InvalidArgument("sample arrays do not match the grid node count");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(density[i] > 0.0)) throw DegenerateImmersion("non-positive area density at node " + std::to_string(i));
    acc.add(grid.weight(i) * samples[i] * density[i]);
  }
  return acc.value();
}

}  // namespace tmc
