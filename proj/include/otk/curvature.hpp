#pragma once

#include <array>

#include "otk/metric.hpp"

namespace otk {

using Matrix4 = std::array<std::array<double, 4>, 4>;
using Tensor4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

/// Curvature of the full four-metric in coordinates (t1, t2, u1, u2), indices
/// 0..3, computed from first principles with no use of the surface formulas.
struct FullCurvature {
  Matrix4 metric{};
  Matrix4 ricci{};
  Tensor4 riemann{};  ///< all indices down
  Tensor4 weyl{};
  double scalar = 0.0;

  /// Weyl components with 1-based labels as usually written: C_1234 etc.
  double C1234() const { return weyl[0][1][2][3]; }
  double C1212() const { return weyl[0][1][0][1]; }
  double C3434() const { return weyl[2][3][2][3]; }
};

/// Needs coefficient jets of order >= 2. Throws DegenerateMetric for a
/// singular four-metric.
FullCurvature full_curvature(const MetricJets& jets);
FullCurvature full_curvature(const MetricDefinition& def, Vec2<double> point);

/// max |Ric_ab - R/2 g_ab + Lambda g_ab|.
double einstein_residual(const FullCurvature& c, double lambda);

/// Largest violation of the algebraic Riemann symmetries (pair antisymmetry,
/// pair exchange, first Bianchi identity).
double riemann_symmetry_residual(const FullCurvature& c);

/// Surface-side expressions for the restricted Ricci tensor, the Killing block
/// of the Ricci tensor and the scalar curvature, next to the oracle values.
struct RicciRestriction {
  QuadraticForm2<double> surface_formula;  ///< Ric - nu/2 - rho/4 + chi/2
  QuadraticForm2<double> surface_oracle;
  QuadraticForm2<double> killing_formula;  ///< -Delta h/2 + X h/4 - C_chi h/2
  QuadraticForm2<double> killing_oracle;
  double scalar_formula = 0.0;  ///< R - C_nu - C_rho/2 + C_chi/2
  double scalar_oracle = 0.0;
  double mixed_max = 0.0;  ///< max |Ric_{i,2+j}|
};

RicciRestriction ricci_restriction_identity(const MetricJets& jets);

/// Weyl components predicted from surface invariants next to the oracle.
struct WeylComparison {
  double c1234_formula = 0.0;  ///< sqrt(Q_gamma det h det g)/2
  double c1234_oracle = 0.0;
  double c1212_formula = 0.0;
  double c1212_oracle = 0.0;
  double c3434_formula = 0.0;
  double c3434_oracle = 0.0;
};

WeylComparison weyl_comparison(const MetricJets& jets);

}  // namespace otk
