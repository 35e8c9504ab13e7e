#include "otk/wlp.hpp"

#include <algorithm>
#include <cmath>

#include "otk/error.hpp"

namespace otk {
namespace {

double max_abs(const QuadraticForm2<double>& a) {
  return std::max({std::fabs(a.a11), std::fabs(a.a12), std::fabs(a.a22)});
}

// Lie derivative of the chart metric G along V, both jets of order 1 in (s, w).
double lie_norm(const JetForm& G, const Vec2<Jet>& V) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      double v = 0.0;
      for (int k = 0; k < 2; ++k) {
        v += V[k].value() * partial(G(i, j), k).value();
        v += G(k, j).value() * partial(V[k], i).value();
        v += G(i, k).value() * partial(V[k], j).value();
      }
      worst = std::max(worst, std::fabs(v));
    }
  }
  return worst;
}

}  // namespace

WlpParams to_wlp(const KillingBlock& block) {
  const JetForm& h = block.h();
  if (is_null(h.a11.value(), max_abs(values(h)))) {
    throw NotGeneric("h11 vanishes; change the Killing basis so that the first Killing vector "
                     "is non-null");
  }
  WlpParams p;
  p.branch = block.sign();
  p.r = sqrt(p.branch > 0 ? block.x() : -block.x());
  p.s = p.r / h.a11;
  p.w = h.a12 / h.a11;
  return p;
}

JetForm reconstruct_h(const WlpParams& p) {
  const Jet f = p.r / p.s;
  return {f, f * p.w, f * (p.w * p.w + static_cast<double>(p.branch) * (p.s * p.s))};
}

double reconstruction_residual(const KillingBlock& block) {
  const QuadraticForm2<double> h = values(block.h());
  const QuadraticForm2<double> back = values(reconstruct_h(to_wlp(block)));
  return max_abs(h - back) / max_abs(h);
}

JetForm wlp_quadratic(const WlpParams& p) {
  const Jet ds[2] = {partial(p.s, 0), partial(p.s, 1)};
  const Jet dw[2] = {partial(p.w, 0), partial(p.w, 1)};
  const Jet inv = reciprocal(truncate(p.s * p.s, p.s.order() - 1));
  const double b = p.branch;
  JetForm out;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) out(i, j) = (ds[i] * ds[j] + b * (dw[i] * dw[j])) * inv;
  }
  return out;
}

JetForm cosgrove_metric(const KillingBlock& block) {
  const JetForm gamma = form_gamma(block);
  return {-gamma.a11, -gamma.a12, -gamma.a22};
}

WlpIdentity gamma_wlp_identity(const SurfaceMetric& g, const KillingBlock& block) {
  const WlpParams p = to_wlp(block);
  const QuadraticForm2<double> gamma = values(form_gamma(block));
  const QuadraticForm2<double> quad = values(wlp_quadratic(p));
  const SurfaceMetric g0 = g.truncated(0);
  const BasicInvariants inv = basic_invariants(g, block);

  const Vec2<double> ds = gradient(p.s);
  const Vec2<double> dw = gradient(p.w);
  const double s = p.s.value();
  const double b = p.branch;
  const QuadraticForm2<double> gi = values(g0.inverse());
  const QuadraticForm2<double> ss{ds[0] * ds[0], ds[0] * ds[1], ds[1] * ds[1]};
  const QuadraticForm2<double> ww{dw[0] * dw[0], dw[0] * dw[1], dw[1] * dw[1]};
  auto contract = [&](const QuadraticForm2<double>& a) {
    return gi.a11 * a.a11 + 2 * gi.a12 * a.a12 + gi.a22 * a.a22;
  };
  const double jac = ds[0] * dw[1] - ds[1] * dw[0];
  const double c_gamma = inv.C_gamma().value();
  const double q_gamma = inv.Q_gamma.value();

  WlpIdentity out;
  out.scale = std::max({max_abs(gamma), std::fabs(c_gamma), std::fabs(q_gamma), 1e-300});
  out.gamma = max_abs(gamma + quad);
  out.c_gamma = std::fabs(c_gamma + (contract(ss) + b * contract(ww)) / (s * s));
  out.c_gamma_printed = std::fabs(c_gamma + (contract(ss) - b * contract(ww)) / (s * s));
  out.q_gamma = std::fabs(q_gamma - b * jac * jac / (s * s * s * s * g0.det().value()));
  return out;
}

KillingCheck sl2_killing_check(double s0, double w0, int branch) {
  const Jet s = Jet::variable(s0, 0, 1);
  const Jet w = Jet::variable(w0, 1, 1);
  const double b = branch > 0 ? 1.0 : -1.0;
  const Jet inv = reciprocal(s * s);
  const JetForm G{inv, Jet::constant(0.0, 1), b * inv};
  const Jet zero = Jet::constant(0.0, 1);
  const Jet one = Jet::constant(1.0, 1);

  KillingCheck out;
  out.residual[0] = lie_norm(G, {zero, one});
  out.residual[1] = lie_norm(G, {s, w});
  out.residual[2] = lie_norm(G, {s * w, 0.5 * (w * w - b * (s * s))});
  out.third_opposite_sign = lie_norm(G, {s * w, 0.5 * (w * w + b * (s * s))});
  return out;
}

KillingCheck sl2_killing_check(const SurfaceMetric& g, const KillingBlock& block) {
  const BasicInvariants inv = basic_invariants(g, block);
  const double q = inv.Q_gamma.value();
  if (is_null(q, std::fabs(inv.C_chi.value()) * std::fabs(inv.C_chi.value()))) {
    throw NotGeneric("Q_gamma vanishes; gamma is degenerate and has no sl2 Killing algebra");
  }
  const WlpParams p = to_wlp(block);
  return sl2_killing_check(p.s.value(), p.w.value(), p.branch);
}

}  // namespace otk
