// Independent reference computations for the tests: plain doubles, metric
// coefficients written directly in C++, derivatives by finite differences.
#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

/// (g11, g12, g22, h11, h12, h22) at (t1, t2).
using Coefficients = std::array<double, 6>;
using MetricFn = std::function<Coefficients(double, double)>;

/// Fourth-order central difference of f along direction `dir`.
template <class F>
auto d1(const F& f, double t1, double t2, int dir, double step = 1e-3) {
  const double e1 = dir == 0 ? step : 0.0, e2 = dir == 1 ? step : 0.0;
  const auto fp1 = f(t1 + e1, t2 + e2);
  const auto fm1 = f(t1 - e1, t2 - e2);
  const auto fp2 = f(t1 + 2 * e1, t2 + 2 * e2);
  const auto fm2 = f(t1 - 2 * e1, t2 - 2 * e2);
  auto out = fp1;
  for (size_t k = 0; k < out.size(); ++k) {
    out[k] = (8.0 * (fp1[k] - fm1[k]) - (fp2[k] - fm2[k])) / (12.0 * step);
  }
  return out;
}

inline double scalar_d1(const std::function<double(double, double)>& f, double t1, double t2,
                        int dir, double step = 1e-3) {
  auto wrapped = [&](double a, double b) { return std::array<double, 1>{f(a, b)}; };
  return d1(wrapped, t1, t2, dir, step)[0];
}

struct Basic {
  double C_rho, C_chi, Q_chi, Q_gamma;
};

/// Basic invariants from values and first derivatives of h.
inline Basic basic_from(const Coefficients& c, const Coefficients& c1, const Coefficients& c2) {
  const double g11 = c[0], g12 = c[1], g22 = c[2];
  const double h11 = c[3], h12 = c[4], h22 = c[5];
  const double dg = g11 * g22 - g12 * g12;
  const double gi11 = g22 / dg, gi12 = -g12 / dg, gi22 = g11 / dg;
  const double x = h11 * h22 - h12 * h12;
  const Coefficients* d[2] = {&c1, &c2};
  double dx[2], chi[2][2];
  for (int i = 0; i < 2; ++i) {
    const auto& a = *d[i];
    dx[i] = a[3] * h22 + h11 * a[5] - 2 * h12 * a[4];
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto& a = *d[i];
      const auto& b = *d[j];
      chi[i][j] = (a[3] * b[5] + b[3] * a[5] - 2 * a[4] * b[4]) / (2 * x);
    }
  }
  double rho[2][2], gam[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      rho[i][j] = dx[i] * dx[j] / (x * x);
      gam[i][j] = chi[i][j] - 0.25 * rho[i][j];
    }
  }
  auto tr = [&](double a[2][2]) { return gi11 * a[0][0] + 2 * gi12 * a[0][1] + gi22 * a[1][1]; };
  auto qd = [&](double a[2][2]) { return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / dg; };
  return {tr(rho), tr(chi), qd(chi), qd(gam)};
}

inline Basic basic(const MetricFn& f, double t1, double t2) {
  return basic_from(f(t1, t2), d1(f, t1, t2, 0), d1(f, t1, t2, 1));
}

/// Gaussian curvature times two (scalar curvature) of a 2-metric given as a
/// function (a11, a12, a22), via the Brioschi formula with finite differences.
inline double scalar_curvature_2d(const std::function<std::array<double, 3>(double, double)>& m,
                                  double t1, double t2, double step = 1e-3) {
  const auto v = m(t1, t2);
  const double E = v[0], F = v[1], G = v[2];
  auto d = [&](int dir) { return d1(m, t1, t2, dir, step); };
  auto dd = [&](int a, int b) {
    auto inner = [&](double s1, double s2) { return d1(m, s1, s2, b, step); };
    return d1(inner, t1, t2, a, step);
  };
  const auto m1 = d(0), m2 = d(1);
  const auto m11 = dd(0, 0), m12 = dd(0, 1), m22 = dd(1, 1);
  const double Eu = m1[0], Ev = m2[0], Fu = m1[1], Fv = m2[1], Gu = m1[2], Gv = m2[2];
  const double Evv = m22[0], Fuv = m12[1], Guu = m11[2];
  const double a11 = -0.5 * Evv + Fuv - 0.5 * Guu, a12 = 0.5 * Eu, a13 = Fu - 0.5 * Ev;
  const double a21 = Fv - 0.5 * Gu, a31 = 0.5 * Gv;
  const double det1 = a11 * (E * G - F * F) - a12 * (a21 * G - F * a31) + a13 * (a21 * F - E * a31);
  const double b12 = 0.5 * Ev, b13 = 0.5 * Gu;
  const double det2 = -b12 * (b12 * G - F * b13) + b13 * (b12 * F - E * b13);
  const double K = (det1 - det2) / ((E * G - F * F) * (E * G - F * F));
  return 2.0 * K;
}

/// Kerr-NUT-(A)dS coefficients typed out independently of the expression engine.
inline MetricFn kerr_nut(double M, double L, double A, double Lambda) {
  return [=](double t1, double t2) {
    const double P = (A * A - t1 * t1) * (1 + Lambda * t1 * t1 / 3) + 2 * L * t1;
    const double Q = (A * A + t2 * t2) * (1 - Lambda * t2 * t2 / 3) - 2 * M * t2;
    const double r2 = t1 * t1 + t2 * t2;
    return Coefficients{r2 / P, 0.0, r2 / Q, (P - Q) / r2, (P * t2 * t2 + Q * t1 * t1) / r2,
                        (P * t2 * t2 * t2 * t2 - Q * t1 * t1 * t1 * t1) / r2};
  };
}

}  // namespace oracle
