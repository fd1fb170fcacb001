#pragma once

#include <array>
#include <span>
#include <vector>

namespace tmc {

/// One parameter interval. Periodic axes are half-open [lo, hi).
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

class ParameterDomain {
 public:
  ParameterDomain() = default;
  explicit ParameterDomain(std::vector<Axis> axes);

  int dims() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int i) const { return axes_.at(i); }
  const std::vector<Axis>& axes() const { return axes_; }

  /// Product of the interval lengths.
  double coordinate_volume() const;

 private:
  std::vector<Axis> axes_;
};

/// Tensor-product quadrature on a parameter domain. Nodes are stored in
/// row-major order (last axis fastest) and never change after construction.
class QuadratureGrid {
 public:
  QuadratureGrid(ParameterDomain domain, std::vector<int> resolution, std::vector<double> coords,
                 std::vector<double> weights);

  const ParameterDomain& domain() const { return domain_; }
  const std::vector<int>& resolution() const { return resolution_; }
  std::size_t size() const { return weights_.size(); }
  int dims() const { return domain_.dims(); }

  std::span<const double> node(std::size_t i) const {
    return {coords_.data() + i * dims(), static_cast<std::size_t>(dims())};
  }
  /// Node as a two-parameter point; only valid on 2-D domains.
  std::array<double, 2> point(std::size_t i) const { return {coords_[2 * i], coords_[2 * i + 1]}; }

  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  ParameterDomain domain_;
  std::vector<int> resolution_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

inline constexpr int kMinResolution = 4;

/// Periodic axes get the uniform trapezoidal rule, the others Gauss-Legendre
/// (open, so interval endpoints such as chart poles are never sampled).
QuadratureGrid build_grid(const ParameterDomain& domain, std::span<const int> resolution);

/// Gauss-Legendre nodes and weights on [lo, hi], ascending.
void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes, std::vector<double>& weights);

/// sum_i weight_i * samples_i * density_i, compensated, in node order.
double integrate(const QuadratureGrid& grid, std::span<const double> samples, std::span<const double> density);

/// Neumaier-compensated running sum; deterministic for a fixed insertion order.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace tmc
