#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace tmc {

/// Truncated bivariate Taylor polynomial around a parameter point,
///
///   f(p + d) = sum_{i+j <= order} c(i,j) du^i dv^j.
///
/// Arithmetic on Series propagates exact derivatives through any chart that is
/// written in terms of +, -, *, /, sin, cos, sqrt and pow. The `order` is the
/// highest total degree whose coefficients are valid; binary operations keep the
/// smaller order and differentiation lowers it by one.
class Series {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  constexpr Series() = default;
  constexpr Series(double value) { c_[0] = value; }  // NOLINT: implicit scalar promotion

  static Series constant(double value, int order = kMaxOrder) {
    Series s(value);
    s.order_ = checked_order(order);
    return s;
  }

  /// The coordinate function `at + d_axis`.
  static Series variable(double at, int axis, int order = kMaxOrder) {
    Series s = constant(at, order);
    if (order >= 1) s.c_[axis == 0 ? 1 : 2] = 1.0;
    return s;
  }

  static constexpr int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }
  static constexpr int count_upto(int order) { return (order + 1) * (order + 2) / 2; }

  int order() const { return order_; }
  double value() const { return c_[0]; }

  double coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("Series::coeff beyond valid order");
    return c_[index(i, j)];
  }

  /// d^{i+j} f / du^i dv^j at the expansion point.
  double partial(int i, int j) const { return coeff(i, j) * factorial(i) * factorial(j); }

  /// Raw coefficient storage; entries above `order()` are unspecified.
  const std::array<double, kSize>& raw() const { return c_; }
  double& raw(int i, int j) { return c_[index(i, j)]; }

  Series truncated(int order) const {
    Series s = *this;
    s.order_ = std::min(order_, checked_order(order));
    for (int k = count_upto(s.order_); k < kSize; ++k) s.c_[k] = 0.0;
    return s;
  }

  Series derivative(int axis) const {
    Series r;
    r.order_ = order_ - 1;
    if (r.order_ < 0) throw std::domain_error("Series::derivative of an order-0 series");
    for (int d = 0; d <= r.order_; ++d) {
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        r.c_[index(i, j)] = axis == 0 ? (i + 1) * c_[index(i + 1, j)] : (j + 1) * c_[index(i, j + 1)];
      }
    }
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (int k = 0; k < count_upto(order_); ++k) r.c_[k] = -r.c_[k];
    return r;
  }

  Series& operator+=(const Series& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < count_upto(order_); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Series& operator-=(const Series& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < count_upto(order_); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Series& operator*=(double a) {
    for (int k = 0; k < count_upto(order_); ++k) c_[k] *= a;
    return *this;
  }
  Series& operator/=(double a) { return *this *= 1.0 / a; }
  Series& operator+=(double a) {
    c_[0] += a;
    return *this;
  }
  Series& operator-=(double a) {
    c_[0] -= a;
    return *this;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    r.order_ = std::min(a.order_, b.order_);
    const auto& table = product_table();
    const int n = table.limit[r.order_];
    for (int k = 0; k < n; ++k) {
      const auto& e = table.entries[k];
      r.c_[e.r] += a.c_[e.a] * b.c_[e.b];
    }
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  /// g(f) for a scalar function g whose derivatives at f(p) are derivs[0..order].
  Series compose(const std::array<double, kMaxOrder + 1>& derivs) const {
    Series s = *this;
    s.c_[0] = 0.0;
    Series r = constant(derivs[order_] / factorial(order_), order_);
    for (int k = order_ - 1; k >= 0; --k) {
      r = r * s;
      r.c_[0] += derivs[k] / factorial(k);
    }
    return r;
  }

  static constexpr double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  }

 private:
  struct ProductEntry {
    unsigned char r, a, b;
  };
  struct ProductTable {
    std::array<ProductEntry, 70> entries{};
    std::array<int, kMaxOrder + 1> limit{};
  };

  static constexpr ProductTable make_product_table() {
    ProductTable t{};
    int k = 0;
    for (int d = 0; d <= kMaxOrder; ++d) {
      for (int j = 0; j <= d; ++j) {
        const int i = d - j;
        for (int ia = 0; ia <= i; ++ia) {
          for (int ja = 0; ja <= j; ++ja) {
            t.entries[k++] = ProductEntry{static_cast<unsigned char>(index(i, j)),
                                          static_cast<unsigned char>(index(ia, ja)),
                                          static_cast<unsigned char>(index(i - ia, j - ja))};
          }
        }
      }
      t.limit[d] = k;
    }
    return t;
  }
  static const ProductTable& product_table() {
    static constexpr ProductTable table = make_product_table();
    return table;
  }

  static int checked_order(int order) {
    if (order < 0 || order > kMaxOrder) throw std::out_of_range("Series order outside [0, 4]");
    return order;
  }

  std::array<double, kSize> c_{};
  int order_ = kMaxOrder;
};

inline Series operator+(Series a, const Series& b) { return a += b; }
inline Series operator-(Series a, const Series& b) { return a -= b; }
inline Series operator+(Series a, double b) { return a += b; }
inline Series operator+(double a, Series b) { return b += a; }
inline Series operator-(Series a, double b) { return a -= b; }
inline Series operator-(double a, const Series& b) { return -b + a; }
inline Series operator*(Series a, double b) { return a *= b; }
inline Series operator*(double a, Series b) { return b *= a; }
inline Series operator/(Series a, double b) { return a /= b; }

inline Series sin(const Series& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({s, c, -s, -c, s});
}

inline Series cos(const Series& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({c, -s, -c, s, c});
}

/// x^p for x(p) > 0.
inline Series pow(const Series& x, double p) {
  const double a = x.value();
  if (!(a > 0.0)) throw std::domain_error("Series pow of a non-positive base");
  std::array<double, Series::kMaxOrder + 1> d{};
  double coef = 1.0;
  for (int k = 0; k <= Series::kMaxOrder; ++k) {
    d[k] = coef * std::pow(a, p - k);
    coef *= (p - k);
  }
  return x.compose(d);
}

inline Series sqrt(const Series& x) { return pow(x, 0.5); }

inline Series reciprocal(const Series& x) {
  const double a = x.value();
  if (a == 0.0) throw std::domain_error("Series reciprocal of zero");
  const double r = 1.0 / a;
  return x.compose({r, -r * r, 2 * r * r * r, -6 * r * r * r * r, 24 * r * r * r * r * r});
}

inline Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }
inline Series operator/(double a, const Series& b) { return a * reciprocal(b); }

}  // namespace tmc
