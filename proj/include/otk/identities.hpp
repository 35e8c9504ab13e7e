#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otk/invariants.hpp"

namespace otk {

/// Worst residual of one identity over a set of sample points.
struct IdentityResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int points = 0;  ///< points where the identity applied
  std::string note;

  bool passed() const { return points > 0 && max_residual <= tolerance; }
};

/// Uniform random points in the box from a fixed-seed generator.
std::vector<Vec2<double>> random_points(const Box& box, int n, std::uint64_t seed);

struct KerrNutParameters {
  double M = 0.0;
  double L = 0.0;
  double A = 0.0;
  double Lambda = 0.0;
};

/// Parameters of an unmodified Kerr-NUT-(A)dS definition (parameters M, L, A,
/// Lambda bound, no pullback or Killing basis change); empty otherwise.
std::optional<KerrNutParameters> kerr_nut_parameters(const MetricDefinition& def);

/// Closed forms for Kerr-NUT-(A)dS at (t1, t2), r^2 = t1^2 + t2^2,
/// a = t1 (3 t2^2 - t1^2), b = t2 (t2^2 - 3 t1^2):
///   Q_gamma = -4 ((L b - M a)/r^6)^2,  C_chi = 4 (M b + L a)/r^6 - 4 Lambda/3,
/// and the frame X, Y (Y with the sign of invariant_frame).
struct KerrNutClosedForms {
  double Q_gamma = 0.0;
  double C_chi = 0.0;
  double simple_rhs = 0.0;  ///< 16 (M^2 + L^2) / r^6
  Vec2<double> X{};
  Vec2<double> Y{};
};

KerrNutClosedForms kerr_nut_closed_forms(const KerrNutParameters& k, Vec2<double> t);

/// (C_chi + 4 Lambda/3)^2 - 4 Q_gamma.
double simple_relation_lhs(double c_chi, double q_gamma, double lambda);

/// Cubic inversion of the chart: with D = (C_chi + 4 Lambda/3)^2 - 4 Q_gamma,
/// I = (16 (M^2 + L^2) / D)^(1/3), I+- = 4 (M (C_chi + 4 Lambda/3) +- 2 L root) / D,
/// root = sqrt(-Q_gamma) times `branch`. Residuals are divided by the sum of
/// term magnitudes.
struct CubicResiduals {
  double I = 0.0;
  double I_plus = 0.0;
  double I_minus = 0.0;
  double t1 = 0.0;  ///< 4 t1^3 - 3 I t1 + I+
  double t2 = 0.0;  ///< 4 t2^3 - 3 I t2 - I-
  /// 4 t1^3 - 3 I t1 + 4 (L (C_chi + 4 Lambda/3) - 2 M root) / D
  double t1_alternative = 0.0;
};

CubicResiduals cubic_residuals(const KerrNutParameters& k, double c_chi, double q_gamma,
                               Vec2<double> t, int branch);

/// Runs every identity that applies to the definition at `points` random
/// points of the box.
std::vector<IdentityResult> verify_identities(const MetricDefinition& def, const Box& box,
                                              int points = 50, std::uint64_t seed = 1);

}  // namespace otk
