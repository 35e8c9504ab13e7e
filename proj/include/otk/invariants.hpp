#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "otk/metric.hpp"
#include "otk/surface.hpp"

namespace otk {

/// The four basic first-order invariants.
enum class Invariant { C_rho = 0, C_chi = 1, Q_chi = 2, Q_gamma = 3 };

inline constexpr std::array<Invariant, 4> kBasicInvariants = {
    Invariant::C_rho, Invariant::C_chi, Invariant::Q_chi, Invariant::Q_gamma};

inline constexpr int index_of(Invariant p) noexcept { return static_cast<int>(p); }

/// "C_rho", "C_chi", "Q_chi", "Q_gamma".
const char* invariant_name(Invariant p);
/// Accepts the names above, also without the underscore.
std::optional<Invariant> invariant_from_name(std::string_view name);

/// Default relative threshold below which a scalar counts as zero.
inline constexpr double kNullTolerance = 1e-10;

/// |value| < tol * (1 + scale)
inline bool is_null(double value, double scale, double tol = kNullTolerance) {
  return std::fabs(value) < tol * (1.0 + scale);
}

/// Killing-direction block h_kl du^k du^l with x = det h.
class KillingBlock {
 public:
  /// Throws DegenerateMetric when det h vanishes relative to the entry scale.
  explicit KillingBlock(JetForm h);

  const JetForm& h() const noexcept { return h_; }
  const Jet& x() const noexcept { return x_; }
  /// Sign of det h.
  int sign() const noexcept { return x_.value() > 0.0 ? 1 : -1; }
  int order() const noexcept { return h_.a11.order(); }
  /// ln |det h|.
  Jet log_abs_x() const;

 private:
  JetForm h_;
  Jet x_;
};

/// rho = dx dx / x^2, order K-1.
JetForm form_rho(const KillingBlock& block);
/// chi_ij = (h11,i h22,j + h11,j h22,i - 2 h12,i h12,j) / (2x), order K-1.
JetForm form_chi(const KillingBlock& block);
/// gamma = chi - rho/4.
JetForm form_gamma(const KillingBlock& block);
/// nu = Hess ln|x|.
JetForm form_nu(const SurfaceMetric& g, const KillingBlock& block);

struct BasicInvariants {
  Jet C_rho;
  Jet C_chi;
  Jet Q_chi;
  Jet Q_gamma;

  Jet C_gamma() const { return C_chi - 0.25 * C_rho; }
  const Jet& operator[](Invariant p) const;
};

/// Jets of order min(K_h - 1, K_g).
BasicInvariants basic_invariants(const SurfaceMetric& g, const KillingBlock& block);

/// Q_gamma from the squared 3x3 determinant of (h, dh/dt1, dh/dt2) over 4 x^3 det g.
double q_gamma_determinant_formula(const SurfaceMetric& g, const KillingBlock& block);

/// Typical size of C_rho at the point, for null tests.
double c_rho_scale(const SurfaceMetric& g, const KillingBlock& block);

/// X^i = g^ij x_,j / x and Y^i = eps^ij x_,j / (x sqrt|det g|) with eps^12 = -1.
struct Frame {
  Vec2<double> X;
  Vec2<double> Y;
};

/// Throws NullGradient where C_rho is null.
Frame invariant_frame(const SurfaceMetric& g, const KillingBlock& block,
                      double tol = kNullTolerance);

/// (alpha(X,X), alpha(X,Y), alpha(Y,Y)).
struct FrameComponents {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

FrameComponents frame_components(const QuadraticForm2<double>& alpha, const Frame& frame);
FrameComponents frame_components_chi(const SurfaceMetric& g, const KillingBlock& block);

/// Closed-form |chi(X,Y)| from the first-order invariants; `g_signature` is sgn det g.
double chi_xy_magnitude(double c_rho, double c_chi, double q_chi, double q_gamma,
                        int g_signature);

/// Derivatives of the basic invariants along X and Y, indexed by Invariant.
struct SecondOrder {
  std::array<double, 4> X{};
  std::array<double, 4> Y{};
};

/// Needs h of order >= 2; the invariants are carried as order-1 jets.
SecondOrder second_order_invariants(const SurfaceMetric& g, const KillingBlock& block);

/// Real and imaginary part of Psi_2. Throws NotGeneric when Q_gamma > tol
/// (the metric cannot be Lorentzian there).
struct Psi2 {
  double re = 0.0;
  double im = 0.0;
};

Psi2 psi2(double c_chi, double q_gamma, double r2, double r_full, double tol = kNullTolerance);

/// Scalar curvature of the four-metric from surface data:
/// R - C_nu - C_rho/2 + C_chi/2.
double full_scalar_curvature(double r2, double c_nu, double c_rho, double c_chi);

struct WlpValues {
  double r = 0.0;
  double s = 0.0;
  double w = 0.0;
};

/// Every scalar invariant at one point. Quantities that are undefined at the
/// point (frame where C_rho is null, ImPsi2 off the Lorentzian branch) are NaN.
struct InvariantRecord {
  Vec2<double> point{};
  std::array<double, 4> basic{};
  double C_gamma = 0.0;
  double C_nu = 0.0;
  double R2 = 0.0;
  double Rfull = 0.0;
  double RePsi2 = 0.0;
  double ImPsi2 = 0.0;
  Vec2<double> X{};
  Vec2<double> Y{};
  SecondOrder derivatives;
  bool frame_defined = false;
  int g_signature = 1;
  int h_signature = 1;
  std::optional<WlpValues> wlp;

  double value(Invariant p) const { return basic[index_of(p)]; }
  double along_x(Invariant p) const { return derivatives.X[index_of(p)]; }
  double along_y(Invariant p) const { return derivatives.Y[index_of(p)]; }
};

struct RecordOptions {
  bool with_wlp = false;
  double null_tolerance = kNullTolerance;
};

/// Builds a record from coefficient jets of order >= 2.
InvariantRecord compute_record(const MetricJets& jets, Vec2<double> point,
                               const RecordOptions& options = {});
InvariantRecord compute_record(const MetricDefinition& def, Vec2<double> point,
                               const RecordOptions& options = {});

}  // namespace otk
