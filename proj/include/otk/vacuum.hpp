#pragma once

#include <array>
#include <optional>

#include "otk/invariants.hpp"

namespace otk {

/// First-order quantities entering the vacuum relations.
struct VacuumQuantities {
  double lambda = 0.0;
  int eps = 1;  ///< +1 where det g < 0, -1 where det g > 0
  double C_rho = 0.0;
  double C_chi = 0.0;
  double Q_chi = 0.0;
  double Q_gamma = 0.0;
  double C_gamma = 0.0;
  double I1_squared = 0.0;
  double I2 = 0.0;
  double I3 = 0.0;
  double I4 = 0.0;
};

VacuumQuantities vacuum_quantities(double c_rho, double c_chi, double q_chi, double q_gamma,
                                   int g_signature, double lambda);
VacuumQuantities vacuum_quantities(const InvariantRecord& record, double lambda);

/// max_ab |Ric_ab - R/2 g_ab + Lambda g_ab| from the four-dimensional oracle.
double vacuum_residual(const MetricDefinition& def, Vec2<double> point, double lambda);

/// Left and right sides of the four vacuum relations:
///   1. Y C_rho = -8 I1
///   2. X C_rho = 8 (Q_gamma - Q_chi) + C_rho (C_gamma - 3/4 C_rho - 4 Lambda)
///   3. 1/4 C_gamma I1 XC_chi - 1/2 I1 XQ_gamma + 1/2 I2 YQ_gamma - 1/2 I3 YC_chi - I4 YQ_chi
///        = I1 (I4 (C_gamma - C_rho/2 + 4 Lambda) - C_gamma C_rho (3/4 C_rho + 4 Lambda)/16)
///   4. -1/4 eps C_gamma I1 YC_chi + 1/2 eps I1 YQ_gamma - 1/2 I2 XQ_gamma + 1/2 I3 XC_chi
///        + I4 XQ_chi = I4 ((C_rho/2 + 4 Lambda)(Q_gamma - Q_chi) + 2 I3)
///        - 1/8 I3 C_rho (3/4 C_rho + 4 Lambda)
struct VacuumRelations {
  VacuumQuantities q;
  double I1 = 0.0;  ///< sqrt(I1^2) with the sign fixed by relation 1
  std::array<double, 4> lhs{};
  std::array<double, 4> rhs{};
  /// |lhs - rhs| / (sum of the magnitudes of all terms).
  std::array<double, 4> residual{};
  /// Relation 1 without a sign choice: |YC_rho^2 - 64 I1^2| / (YC_rho^2 + 64 |I1^2|).
  double relation1_squared = 0.0;
  /// Relation 4 with both eps I1 terms of opposite sign.
  double relation4_opposite_eps_terms = 0.0;
  /// Relation 2 with 4 Lambda replaced by 4 times `nut`, when given.
  std::optional<double> relation2_with_nut;
};

/// Throws NotGeneric when the frame is undefined or I4 vanishes.
VacuumRelations vacuum_relations(const InvariantRecord& record, double lambda,
                                 std::optional<double> nut = std::nullopt);

/// Second-order invariants recovered from first-order data: X C_rho from
/// relation 2, Y C_rho = -8 I1, and (Xq, Yq) by solving relations 3 and 4
/// with the remaining derivatives taken from the record.
struct RecoveredSecondOrder {
  double XC_rho = 0.0;
  double YC_rho = 0.0;
  double Xq = 0.0;
  double Yq = 0.0;
};

/// `i1_sign` picks the branch of I1 = +-sqrt(I1^2). Throws NotGeneric when the
/// linear system is singular (in particular when I4 = 0), and
/// std::invalid_argument when q is C_rho.
RecoveredSecondOrder recover_second_order(const InvariantRecord& record, double lambda,
                                          Invariant q, int i1_sign);

}  // namespace otk
