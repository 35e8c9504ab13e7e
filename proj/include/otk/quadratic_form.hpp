#pragma once

#include <array>

namespace otk {

template <class T>
using Vec2 = std::array<T, 2>;

/// Symmetric bilinear form on a two-dimensional space. Only the upper
/// triangle is stored, so symmetry is structural.
template <class T>
struct QuadraticForm2 {
  T a11{};
  T a12{};
  T a22{};

  const T& operator()(int i, int j) const {
    if (i == 0 && j == 0) return a11;
    if (i == 1 && j == 1) return a22;
    return a12;
  }
  T& operator()(int i, int j) {
    if (i == 0 && j == 0) return a11;
    if (i == 1 && j == 1) return a22;
    return a12;
  }

  T det() const { return a11 * a22 - a12 * a12; }

  /// alpha(u, v) = alpha_ij u^i v^j
  template <class V>
  auto apply(const Vec2<V>& u, const Vec2<V>& v) const {
    return a11 * (u[0] * v[0]) + a12 * (u[0] * v[1] + u[1] * v[0]) + a22 * (u[1] * v[1]);
  }
};

template <class T>
QuadraticForm2<T> operator+(const QuadraticForm2<T>& a, const QuadraticForm2<T>& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a22 + b.a22};
}

template <class T>
QuadraticForm2<T> operator-(const QuadraticForm2<T>& a, const QuadraticForm2<T>& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a22 - b.a22};
}

template <class T>
QuadraticForm2<T> operator*(double s, const QuadraticForm2<T>& a) {
  return {s * a.a11, s * a.a12, s * a.a22};
}

}  // namespace otk
