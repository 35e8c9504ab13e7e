#include "otk/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "otk/error.hpp"
#include "otk/invariants.hpp"
#include "otk/surface.hpp"

namespace otk {
namespace {

using JetMatrix4 = std::array<std::array<Jet, 4>, 4>;

// Gauss-Jordan elimination with partial pivoting on jet entries.
JetMatrix4 invert(JetMatrix4 a) {
  const int order = a[0][0].order();
  JetMatrix4 inv;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) inv[i][j] = Jet::constant(i == j ? 1.0 : 0.0, order);
  }
  double scale = 0.0;
  for (const auto& row : a) {
    for (const auto& e : row) scale = std::max(scale, std::fabs(e.value()));
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::fabs(a[r][col].value()) > std::fabs(a[pivot][col].value())) pivot = r;
    }
    if (!(std::fabs(a[pivot][col].value()) > 1e-14 * scale)) {
      throw DegenerateMetric("four-metric is singular");
    }
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const Jet p = reciprocal(a[col][col]);
    for (int j = 0; j < 4; ++j) {
      a[col][j] *= p;
      inv[col][j] *= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const Jet f = a[r][col];
      for (int j = 0; j < 4; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// d_m of a jet; the metric does not depend on u1, u2.
Jet d(const Jet& j, int m) {
  if (m < 2) return partial(j, m);
  return Jet::constant(0.0, j.order() - 1);
}

JetMatrix4 assemble(const MetricJets& jets) {
  const int order = std::min(order_of(jets.g), order_of(jets.h));
  JetMatrix4 g;
  for (auto& row : g) row.fill(Jet::constant(0.0, order));
  const JetForm gs = truncate(jets.g, order);
  const JetForm hs = truncate(jets.h, order);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      g[i][j] = gs(i, j);
      g[2 + i][2 + j] = hs(i, j);
    }
  }
  return g;
}

}  // namespace

FullCurvature full_curvature(const MetricJets& jets) {
  JetMatrix4 g = assemble(jets);
  const int order = g[0][0].order();
  if (order < 2) throw OrderError("the curvature oracle needs coefficient jets of order >= 2");
  for (auto& row : g) {
    for (auto& e : row) e = truncate(e, 2);
  }
  const JetMatrix4 ginv2 = invert(g);

  // Gamma^a_bc = 1/2 g^ad (d_c g_db + d_b g_dc - d_d g_bc), order 1.
  std::array<std::array<std::array<Jet, 4>, 4>, 4> gamma;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        Jet sum = Jet::constant(0.0, 1);
        for (int e = 0; e < 4; ++e) {
          const Jet lower = d(g[e][b], c) + d(g[e][c], b) - d(g[b][c], e);
          sum += truncate(ginv2[a][e], 1) * lower;
        }
        gamma[a][b][c] = 0.5 * sum;
      }
    }
  }

  FullCurvature out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out.metric[a][b] = g[a][b].value();
  }

  // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
  Tensor4 up{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int dd = 0; dd < 4; ++dd) {
          double v = d(gamma[a][dd][b], c).value() - d(gamma[a][c][b], dd).value();
          for (int e = 0; e < 4; ++e) {
            v += gamma[a][c][e].value() * gamma[e][dd][b].value() -
                 gamma[a][dd][e].value() * gamma[e][c][b].value();
          }
          up[a][b][c][dd] = v;
        }
      }
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int dd = 0; dd < 4; ++dd) {
          double v = 0.0;
          for (int e = 0; e < 4; ++e) v += out.metric[a][e] * up[e][b][c][dd];
          out.riemann[a][b][c][dd] = v;
        }
      }
    }
  }

  Matrix4 gi{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) gi[a][b] = ginv2[a][b].value();
  }
  // Ric_bd = g^ac R_abcd
  for (int b = 0; b < 4; ++b) {
    for (int dd = 0; dd < 4; ++dd) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 4; ++c) v += gi[a][c] * out.riemann[a][b][c][dd];
      }
      out.ricci[b][dd] = v;
    }
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out.scalar += gi[a][b] * out.ricci[a][b];
  }

  // C = Riem - (g_a[c Ric_d]b - g_b[c Ric_d]a) + R/3 g_a[c g_d]b
  const auto& m = out.metric;
  const auto& ric = out.ricci;
  auto alt = [](const Matrix4& x, const Matrix4& y, int a, int b, int c, int dd) {
    return 0.5 * (x[a][c] * y[dd][b] - x[a][dd] * y[c][b]);
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int dd = 0; dd < 4; ++dd) {
          out.weyl[a][b][c][dd] = out.riemann[a][b][c][dd] -
                                  (alt(m, ric, a, b, c, dd) - alt(m, ric, b, a, c, dd)) +
                                  out.scalar / 3.0 * alt(m, m, a, b, c, dd);
        }
      }
    }
  }
  return out;
}

FullCurvature full_curvature(const MetricDefinition& def, Vec2<double> point) {
  return full_curvature(metric_jets(def, point, 2));
}

double einstein_residual(const FullCurvature& c, double lambda) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double e = c.ricci[a][b] - 0.5 * c.scalar * c.metric[a][b] + lambda * c.metric[a][b];
      worst = std::max(worst, std::fabs(e));
    }
  }
  return worst;
}

double riemann_symmetry_residual(const FullCurvature& c) {
  const auto& r = c.riemann;
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int cc = 0; cc < 4; ++cc) {
        for (int dd = 0; dd < 4; ++dd) {
          worst = std::max({worst, std::fabs(r[a][b][cc][dd] + r[b][a][cc][dd]),
                            std::fabs(r[a][b][cc][dd] + r[a][b][dd][cc]),
                            std::fabs(r[a][b][cc][dd] - r[cc][dd][a][b]),
                            std::fabs(r[a][b][cc][dd] + r[a][cc][dd][b] + r[a][dd][b][cc])});
        }
      }
    }
  }
  return worst;
}

RicciRestriction ricci_restriction_identity(const MetricJets& jets) {
  const FullCurvature oracle = full_curvature(jets);
  const SurfaceMetric g(truncate(jets.g, 2));
  const KillingBlock block(truncate(jets.h, 2));

  RicciRestriction out;
  const QuadraticForm2<double> ric = values(ricci(g));
  const QuadraticForm2<double> nu = values(form_nu(g, block));
  const QuadraticForm2<double> rho = values(form_rho(block));
  const QuadraticForm2<double> chi = values(form_chi(block));
  out.surface_formula = ric - 0.5 * nu - 0.25 * rho + 0.5 * chi;
  out.surface_oracle = {oracle.ricci[0][0], oracle.ricci[0][1], oracle.ricci[1][1]};

  const BasicInvariants inv = basic_invariants(g, block);
  const double c_chi = inv.C_chi.value();
  const Frame frame = invariant_frame(g, block);
  const SurfaceMetric g1 = g.truncated(1);
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      const Jet& hij = block.h()(i, j);
      const Vec2<double> dh = gradient(hij);
      out.killing_formula(i, j) = -0.5 * laplace_beltrami(g1, hij).value() +
                                  0.25 * (frame.X[0] * dh[0] + frame.X[1] * dh[1]) -
                                  0.5 * c_chi * hij.value();
      out.killing_oracle(i, j) = oracle.ricci[2 + i][2 + j];
    }
  }

  const double c_nu = laplace_beltrami(g1, block.log_abs_x()).value();
  out.scalar_formula =
      full_scalar_curvature(scalar_curvature(g).value(), c_nu, inv.C_rho.value(), c_chi);
  out.scalar_oracle = oracle.scalar;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.mixed_max = std::max(out.mixed_max, std::fabs(oracle.ricci[i][2 + j]));
    }
  }
  return out;
}

WeylComparison weyl_comparison(const MetricJets& jets) {
  const FullCurvature oracle = full_curvature(jets);
  const SurfaceMetric g(truncate(jets.g, 2));
  const KillingBlock block(truncate(jets.h, 2));
  const BasicInvariants inv = basic_invariants(g, block);
  const double det_g = g.det().value();
  const double det_h = block.x().value();
  const double r2 = scalar_curvature(g).value();
  const double c_nu = laplace_beltrami(g.truncated(1), block.log_abs_x()).value();
  const double factor = (r2 + 0.5 * c_nu + 0.25 * inv.C_rho.value() - inv.C_chi.value()) / 6.0;

  WeylComparison out;
  out.c1234_formula = 0.5 * std::sqrt(std::max(inv.Q_gamma.value() * det_h * det_g, 0.0));
  out.c1234_oracle = oracle.C1234();
  out.c1212_formula = factor * det_g;
  out.c1212_oracle = oracle.C1212();
  out.c3434_formula = factor * det_h;
  out.c3434_oracle = oracle.C3434();
  return out;
}

}  // namespace otk
