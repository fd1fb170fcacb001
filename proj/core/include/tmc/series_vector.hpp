#pragma once

#include <array>
#include <cassert>

#include <Eigen/Dense>

#include "tmc/series.hpp"

namespace tmc {

/// Largest supported ambient dimension n + 2.
inline constexpr int kMaxAmbientDim = 8;

/// Ambient vector with Series components; fixed capacity, runtime dimension.
class SeriesVector {
 public:
  SeriesVector() = default;
  explicit SeriesVector(int dim) : dim_(dim) { assert(dim >= 0 && dim <= kMaxAmbientDim); }

  static SeriesVector basis(int dim, int k) {
    SeriesVector v(dim);
    v[k] = Series(1.0);
    return v;
  }
  static SeriesVector constant(const Eigen::VectorXd& c) {
    SeriesVector v(static_cast<int>(c.size()));
    for (int k = 0; k < v.dim(); ++k) v[k] = Series(c[k]);
    return v;
  }

  int dim() const { return dim_; }
  Series& operator[](int k) { return c_[k]; }
  const Series& operator[](int k) const { return c_[k]; }

  int order() const {
    int o = Series::kMaxOrder;
    for (int k = 0; k < dim_; ++k) o = std::min(o, c_[k].order());
    return o;
  }

  Eigen::VectorXd value() const {
    Eigen::VectorXd v(dim_);
    for (int k = 0; k < dim_; ++k) v[k] = c_[k].value();
    return v;
  }

  SeriesVector truncated(int order) const {
    SeriesVector r(dim_);
    for (int k = 0; k < dim_; ++k) r[k] = c_[k].truncated(std::min(order, c_[k].order()));
    return r;
  }

  SeriesVector derivative(int axis) const {
    SeriesVector r(dim_);
    for (int k = 0; k < dim_; ++k) r[k] = c_[k].derivative(axis);
    return r;
  }

  SeriesVector& operator+=(const SeriesVector& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  SeriesVector& operator-=(const SeriesVector& o) {
    for (int k = 0; k < dim_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  SeriesVector& operator*=(const Series& a) {
    for (int k = 0; k < dim_; ++k) c_[k] = c_[k] * a;
    return *this;
  }
  SeriesVector& operator*=(double a) {
    for (int k = 0; k < dim_; ++k) c_[k] *= a;
    return *this;
  }

  /// this += a * o
  void axpy(const Series& a, const SeriesVector& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += a * o.c_[k];
  }
  void axpy(double a, const SeriesVector& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += a * o.c_[k];
  }

 private:
  std::array<Series, kMaxAmbientDim> c_{};
  int dim_ = 0;
};

inline SeriesVector operator+(SeriesVector a, const SeriesVector& b) { return a += b; }
inline SeriesVector operator-(SeriesVector a, const SeriesVector& b) { return a -= b; }
inline SeriesVector operator*(const Series& s, SeriesVector v) { return v *= s; }
inline SeriesVector operator*(double s, SeriesVector v) { return v *= s; }

inline Series dot(const SeriesVector& a, const SeriesVector& b) {
  Series r = a[0] * b[0];
  for (int k = 1; k < a.dim(); ++k) r += a[k] * b[k];
  return r;
}

}  // namespace tmc
