#include "otk/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otk/error.hpp"

namespace otk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_abs(const QuadraticForm2<double>& a) {
  return std::max({std::fabs(a.a11), std::fabs(a.a12), std::fabs(a.a22)});
}

}  // namespace

const char* invariant_name(Invariant p) {
  switch (p) {
    case Invariant::C_rho:
      return "C_rho";
    case Invariant::C_chi:
      return "C_chi";
    case Invariant::Q_chi:
      return "Q_chi";
    case Invariant::Q_gamma:
      return "Q_gamma";
  }
  return "?";
}

std::optional<Invariant> invariant_from_name(std::string_view name) {
  for (Invariant p : kBasicInvariants) {
    std::string full = invariant_name(p);
    std::string bare = full;
    bare.erase(std::remove(bare.begin(), bare.end(), '_'), bare.end());
    if (name == full || name == bare) return p;
  }
  return std::nullopt;
}

KillingBlock::KillingBlock(JetForm h) : h_(truncate(h, order_of(h))) {
  x_ = h_.det();
  const double scale = max_abs(values(h_));
  if (!(std::fabs(x_.value()) > 1e-14 * scale * scale)) {
    throw DegenerateMetric("Killing block is degenerate (det h = " +
                           std::to_string(x_.value()) + ")");
  }
}

Jet KillingBlock::log_abs_x() const { return log(x_.value() < 0.0 ? -x_ : x_); }

JetForm form_rho(const KillingBlock& block) {
  const int k = block.order() - 1;
  if (k < 0) throw OrderError("rho needs h of order >= 1");
  const Jet inv = reciprocal(truncate(block.x(), k));
  const Jet v[2] = {partial(block.x(), 0) * inv, partial(block.x(), 1) * inv};
  return {v[0] * v[0], v[0] * v[1], v[1] * v[1]};
}

JetForm form_chi(const KillingBlock& block) {
  const int k = block.order() - 1;
  if (k < 0) throw OrderError("chi needs h of order >= 1");
  const JetForm& h = block.h();
  const Jet a[2] = {partial(h.a11, 0), partial(h.a11, 1)};
  const Jet b[2] = {partial(h.a12, 0), partial(h.a12, 1)};
  const Jet c[2] = {partial(h.a22, 0), partial(h.a22, 1)};
  const Jet half_inv = 0.5 * reciprocal(truncate(block.x(), k));
  JetForm chi;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      chi(i, j) = (a[i] * c[j] + a[j] * c[i] - 2.0 * (b[i] * b[j])) * half_inv;
    }
  }
  return chi;
}

JetForm form_gamma(const KillingBlock& block) {
  return form_chi(block) - 0.25 * form_rho(block);
}

JetForm form_nu(const SurfaceMetric& g, const KillingBlock& block) {
  return covariant_hessian(g, block.log_abs_x());
}

const Jet& BasicInvariants::operator[](Invariant p) const {
  switch (p) {
    case Invariant::C_rho:
      return C_rho;
    case Invariant::C_chi:
      return C_chi;
    case Invariant::Q_chi:
      return Q_chi;
    case Invariant::Q_gamma:
      return Q_gamma;
  }
  return C_rho;
}

BasicInvariants basic_invariants(const SurfaceMetric& g, const KillingBlock& block) {
  const int k = std::min(block.order() - 1, g.order());
  const SurfaceMetric gk = g.truncated(k);
  const JetForm rho = truncate(form_rho(block), k);
  const JetForm chi = truncate(form_chi(block), k);
  const TraceQdet c = trace_and_qdet(gk, chi);
  BasicInvariants out;
  out.C_rho = trace(gk, rho);
  out.C_chi = c.trace;
  out.Q_chi = c.qdet;
  out.Q_gamma = trace_and_qdet(gk, chi - 0.25 * rho).qdet;
  return out;
}

double q_gamma_determinant_formula(const SurfaceMetric& g, const KillingBlock& block) {
  const JetForm& h = block.h();
  const double m[3][3] = {{h.a11.value(), h.a12.value(), h.a22.value()},
                          {h.a11(1, 0), h.a12(1, 0), h.a22(1, 0)},
                          {h.a11(0, 1), h.a12(0, 1), h.a22(0, 1)}};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double x = block.x().value();
  return det * det / (4.0 * x * x * x * g.det().value());
}

double c_rho_scale(const SurfaceMetric& g, const KillingBlock& block) {
  const Vec2<double> dx = gradient(block.x());
  const double v = std::max(std::fabs(dx[0]), std::fabs(dx[1])) / std::fabs(block.x().value());
  return max_abs(values(g.inverse())) * v * v;
}

Frame invariant_frame(const SurfaceMetric& g, const KillingBlock& block, double tol) {
  const double x = block.x().value();
  const Vec2<double> dx = gradient(block.x());
  const QuadraticForm2<double> gi = values(g.inverse());
  const double c_rho = (gi.a11 * dx[0] * dx[0] + 2 * gi.a12 * dx[0] * dx[1] +
                        gi.a22 * dx[1] * dx[1]) / (x * x);
  if (is_null(c_rho, c_rho_scale(g, block), tol)) {
    throw NullGradient("C_rho vanishes; the invariant frame is undefined");
  }
  Frame f;
  f.X = {(gi.a11 * dx[0] + gi.a12 * dx[1]) / x, (gi.a12 * dx[0] + gi.a22 * dx[1]) / x};
  const double n = x * std::sqrt(std::fabs(g.det().value()));
  f.Y = {-dx[1] / n, dx[0] / n};
  return f;
}

FrameComponents frame_components(const QuadraticForm2<double>& alpha, const Frame& frame) {
  return {alpha.apply(frame.X, frame.X), alpha.apply(frame.X, frame.Y),
          alpha.apply(frame.Y, frame.Y)};
}

FrameComponents frame_components_chi(const SurfaceMetric& g, const KillingBlock& block) {
  return frame_components(values(form_chi(block)), invariant_frame(g, block));
}

double chi_xy_magnitude(double c_rho, double c_chi, double q_chi, double q_gamma,
                        int g_signature) {
  const double s = g_signature > 0 ? 1.0 : -1.0;
  // chi(X,X) chi(Y,Y) - s C_rho^2 Q_chi
  const double arg = s * 4.0 * (q_chi - q_gamma) * (c_rho * c_chi - 4.0 * q_chi + 4.0 * q_gamma) -
                     s * c_rho * c_rho * q_chi;
  return std::sqrt(std::max(arg, 0.0));
}

SecondOrder second_order_invariants(const SurfaceMetric& g, const KillingBlock& block) {
  if (block.order() < 2 || g.order() < 1) {
    throw OrderError("second-order invariants need h of order >= 2 and g of order >= 1");
  }
  const Frame frame = invariant_frame(g, block);
  const BasicInvariants inv = basic_invariants(g, block);
  SecondOrder out;
  for (Invariant p : kBasicInvariants) {
    const Vec2<double> dp = gradient(inv[p]);
    out.X[index_of(p)] = frame.X[0] * dp[0] + frame.X[1] * dp[1];
    out.Y[index_of(p)] = frame.Y[0] * dp[0] + frame.Y[1] * dp[1];
  }
  return out;
}

Psi2 psi2(double c_chi, double q_gamma, double r2, double r_full, double tol) {
  if (q_gamma > tol * (1.0 + std::fabs(c_chi) * std::fabs(c_chi))) {
    throw NotGeneric("Q_gamma > 0: Psi_2 requires a Lorentzian metric");
  }
  return {c_chi / 16.0 - r2 / 8.0 + r_full / 24.0, 0.25 * std::sqrt(std::max(-q_gamma, 0.0))};
}

double full_scalar_curvature(double r2, double c_nu, double c_rho, double c_chi) {
  return r2 - c_nu - 0.5 * c_rho + 0.5 * c_chi;
}

InvariantRecord compute_record(const MetricJets& jets, Vec2<double> point,
                               const RecordOptions& options) {
  const SurfaceMetric g(jets.g);
  const KillingBlock block(jets.h);
  if (g.order() < 2 || block.order() < 2) {
    throw OrderError("an invariant record needs coefficient jets of order >= 2");
  }
  InvariantRecord rec;
  rec.point = point;
  rec.g_signature = g.signature();
  rec.h_signature = block.sign();

  const BasicInvariants inv = basic_invariants(g, block);
  for (Invariant p : kBasicInvariants) rec.basic[index_of(p)] = inv[p].value();
  const double c_rho = rec.value(Invariant::C_rho);
  const double c_chi = rec.value(Invariant::C_chi);
  const double q_gamma = rec.value(Invariant::Q_gamma);
  rec.C_gamma = c_chi - 0.25 * c_rho;

  const SurfaceMetric g2 = g.truncated(2);
  rec.C_nu = laplace_beltrami(g2, truncate(block.log_abs_x(), 2)).value();
  rec.R2 = scalar_curvature(g2).value();
  rec.Rfull = full_scalar_curvature(rec.R2, rec.C_nu, c_rho, c_chi);
  rec.RePsi2 = c_chi / 16.0 - rec.R2 / 8.0 + rec.Rfull / 24.0;
  const bool lorentzian = rec.g_signature * rec.h_signature < 0;
  rec.ImPsi2 = kNaN;
  if (lorentzian) {
    try {
      rec.ImPsi2 = psi2(c_chi, q_gamma, rec.R2, rec.Rfull, options.null_tolerance).im;
    } catch (const NotGeneric&) {
    }
  }

  try {
    const Frame frame = invariant_frame(g, block, options.null_tolerance);
    rec.X = frame.X;
    rec.Y = frame.Y;
    rec.derivatives = second_order_invariants(g, block);
    rec.frame_defined = true;
  } catch (const NullGradient&) {
    rec.X = rec.Y = {kNaN, kNaN};
    rec.derivatives.X.fill(kNaN);
    rec.derivatives.Y.fill(kNaN);
  }

  if (options.with_wlp) {
    const double h11 = jets.h.a11.value();
    if (h11 != 0.0) {
      const double r = std::sqrt(std::fabs(block.x().value()));
      rec.wlp = WlpValues{r, r / h11, jets.h.a12.value() / h11};
    }
  }
  return rec;
}

InvariantRecord compute_record(const MetricDefinition& def, Vec2<double> point,
                               const RecordOptions& options) {
  return compute_record(metric_jets(def, point, 2), point, options);
}

}  // namespace otk
