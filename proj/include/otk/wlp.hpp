#pragma once

#include <array>

#include "otk/invariants.hpp"

namespace otk {

/// Weyl-Lewis-Papapetrou variables of the Killing block:
///   h = (r/s) [[1, w], [w, w^2 + branch s^2]],  det h = branch r^2.
struct WlpParams {
  Jet r;
  Jet s;
  Jet w;
  int branch = 1;  ///< sign of det h
};

/// r = sqrt|det h|, s = r/h11, w = h12/h11. Throws NotGeneric when h11 is
/// null (a constant change of Killing basis makes it nonzero).
WlpParams to_wlp(const KillingBlock& block);

JetForm reconstruct_h(const WlpParams& p);

/// max_kl |h_kl - reconstructed h_kl| / max |h_kl|.
double reconstruction_residual(const KillingBlock& block);

/// (ds^2 + branch dw^2)/s^2 as a form on the surface, order K-1.
JetForm wlp_quadratic(const WlpParams& p);

/// The constant-curvature -1 metric -gamma = -(chi - rho/4).
JetForm cosgrove_metric(const KillingBlock& block);

struct WlpIdentity {
  double gamma = 0.0;            ///< max |gamma + wlp_quadratic| over components
  double c_gamma = 0.0;          ///< C_gamma + g^ij(s_i s_j + branch w_i w_j)/s^2
  double c_gamma_printed = 0.0;  ///< same with the sign of the w-term reversed
  double q_gamma = 0.0;          ///< Q_gamma - branch J^2/(s^4 det g), J = s1 w2 - s2 w1
  double scale = 0.0;            ///< magnitude used to make the residuals relative
};

WlpIdentity gamma_wlp_identity(const SurfaceMetric& g, const KillingBlock& block);

/// Norms of the Lie derivative of G = (ds^2 + branch dw^2)/s^2 along the three
/// generators d_w, s d_s + w d_w and s w d_s + (w^2 - branch s^2)/2 d_w,
/// evaluated in the (s, w) chart.
struct KillingCheck {
  std::array<double, 3> residual{};
  /// Third generator with the opposite sign of the s^2 term.
  double third_opposite_sign = 0.0;
};

KillingCheck sl2_killing_check(double s, double w, int branch);

/// Same check at the (s, w) values of a metric point. Throws NotGeneric when
/// Q_gamma is null there.
KillingCheck sl2_killing_check(const SurfaceMetric& g, const KillingBlock& block);

}  // namespace otk
