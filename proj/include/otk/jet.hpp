#pragma once

#include <array>
#include <span>

#include "otk/quadratic_form.hpp"

namespace otk {

/// Truncated Taylor data of a scalar function of (t1, t2) at a base point.
///
/// Coefficients are stored as derivative values, c(a, b) = d^{a+b} f / dt1^a dt2^b,
/// for a + b <= order, so a jet reads the same as comma notation f_{,12} etc.
/// The order is a runtime property bounded by kMaxOrder; arithmetic between
/// jets of different order throws OrderError.
class Jet {
 public:
  static constexpr int kMaxOrder = 3;
  static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  Jet() = default;

  static Jet constant(double value, int order);
  /// The coordinate function t_{direction+1} seeded at `value`.
  static Jet variable(double value, int direction, int order);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }

  /// Derivative d^{a+b}/dt1^a dt2^b; throws OrderError when a + b > order().
  double operator()(int a, int b) const;
  double& at(int a, int b);

  /// True when every derivative of positive order vanishes.
  bool is_constant() const noexcept;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s) noexcept;
  Jet& operator-=(double s) noexcept;
  Jet& operator*=(double s) noexcept;
  Jet& operator/=(double s);

  static constexpr int index(int a, int b) noexcept {
    const int n = a + b;
    return n * (n + 1) / 2 + b;
  }

 private:
  explicit Jet(int order);
  void require_same_order(const Jet& o) const;

  int order_ = 0;
  std::array<double, kSize> c_{};
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, const Jet& b) { return a *= b; }
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return -a + s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(double s, const Jet& a);

/// d/dt_{direction+1}; the result has order one less.
Jet partial(const Jet& j, int direction);
/// Drops all derivatives above `order`.
Jet truncate(const Jet& j, int order);

Vec2<double> gradient(const Jet& j);
/// Raw coordinate second derivatives f_{,ij}.
QuadraticForm2<double> hessian(const Jet& j);

/// f(u) for a smooth univariate f given its derivatives f, f', f'', ... at
/// u.value(); `derivatives` must hold at least u.order() + 1 entries.
Jet compose(const Jet& u, std::span<const double> derivatives);

Jet reciprocal(const Jet& u);
Jet sqrt(const Jet& u);
Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet abs(const Jet& u);
Jet sgn(const Jet& u);
Jet pow(const Jet& u, int n);
Jet pow(const Jet& u, double c);
Jet pow(const Jet& u, const Jet& e);

}  // namespace otk
