#include "otk/vacuum.hpp"

#include <cmath>
#include <stdexcept>

#include "otk/curvature.hpp"
#include "otk/error.hpp"

namespace otk {
namespace {

// Coefficients of relations 3 and 4 in the six derivatives
// (XC_chi, YC_chi, XQ_chi, YQ_chi, XQ_gamma, YQ_gamma).
struct LinearRelations {
  std::array<double, 6> a{};
  std::array<double, 6> b{};
  double r3 = 0.0;
  double r4 = 0.0;
};

LinearRelations linear_relations(const VacuumQuantities& q, double i1) {
  const double eps = q.eps;
  const double lam4 = 4.0 * q.lambda;
  LinearRelations L;
  L.a = {0.25 * q.C_gamma * i1, -0.5 * q.I3, 0.0, -q.I4, -0.5 * i1, 0.5 * q.I2};
  L.b = {0.5 * q.I3, -0.25 * eps * q.C_gamma * i1, q.I4, 0.0, -0.5 * q.I2, 0.5 * eps * i1};
  L.r3 = i1 * (q.I4 * (q.C_gamma - 0.5 * q.C_rho + lam4) -
               q.C_gamma * q.C_rho * (0.75 * q.C_rho + lam4) / 16.0);
  L.r4 = q.I4 * ((0.5 * q.C_rho + lam4) * (q.Q_gamma - q.Q_chi) + 2.0 * q.I3) -
         q.I3 * q.C_rho * (0.75 * q.C_rho + lam4) / 8.0;
  return L;
}

std::array<double, 6> derivative_vector(const InvariantRecord& r) {
  return {r.along_x(Invariant::C_chi), r.along_y(Invariant::C_chi),
          r.along_x(Invariant::Q_chi), r.along_y(Invariant::Q_chi),
          r.along_x(Invariant::Q_gamma), r.along_y(Invariant::Q_gamma)};
}

double relative(double lhs, double rhs, double magnitude) {
  return std::fabs(lhs - rhs) / (magnitude + 1e-300);
}

void require_generic(const VacuumQuantities& q, const InvariantRecord& r) {
  if (!r.frame_defined) throw NotGeneric("C_rho vanishes; vacuum relations need the frame");
  const double scale = q.C_gamma * q.C_gamma + std::fabs(q.Q_gamma);
  if (is_null(q.I4, scale)) throw NotGeneric("I4 vanishes; the vacuum system is singular");
}

}  // namespace

VacuumQuantities vacuum_quantities(double c_rho, double c_chi, double q_chi, double q_gamma,
                                   int g_signature, double lambda) {
  VacuumQuantities q;
  q.lambda = lambda;
  q.eps = g_signature < 0 ? 1 : -1;
  q.C_rho = c_rho;
  q.C_chi = c_chi;
  q.Q_chi = q_chi;
  q.Q_gamma = q_gamma;
  q.C_gamma = c_chi - 0.25 * c_rho;
  const double cg = q.C_gamma;
  q.I1_squared = q.eps * ((q_gamma - q_chi) * (q_gamma - q_chi) -
                          0.25 * c_rho * (cg * q_chi - (cg + 0.25 * c_rho) * q_gamma));
  q.I2 = -(q_gamma + q_chi) + 0.5 * cg * (cg + 0.25 * c_rho);
  q.I3 = 0.5 * cg * (q_gamma - q_chi) + 0.25 * c_rho * q_gamma;
  q.I4 = 0.25 * cg * cg - q_gamma;
  return q;
}

VacuumQuantities vacuum_quantities(const InvariantRecord& r, double lambda) {
  return vacuum_quantities(r.value(Invariant::C_rho), r.value(Invariant::C_chi),
                           r.value(Invariant::Q_chi), r.value(Invariant::Q_gamma),
                           r.g_signature, lambda);
}

double vacuum_residual(const MetricDefinition& def, Vec2<double> point, double lambda) {
  return einstein_residual(full_curvature(def, point), lambda);
}

VacuumRelations vacuum_relations(const InvariantRecord& r, double lambda,
                                 std::optional<double> nut) {
  VacuumRelations out;
  out.q = vacuum_quantities(r, lambda);
  const VacuumQuantities& q = out.q;
  require_generic(q, r);

  const double yc = r.along_y(Invariant::C_rho);
  const double xc = r.along_x(Invariant::C_rho);
  const double i1_abs = std::sqrt(std::max(q.I1_squared, 0.0));
  out.I1 = yc > 0 ? -i1_abs : i1_abs;
  out.relation1_squared = std::fabs(yc * yc - 64.0 * q.I1_squared) /
                          (yc * yc + 64.0 * std::fabs(q.I1_squared) + 1e-300);

  out.lhs[0] = yc;
  out.rhs[0] = -8.0 * out.I1;
  out.residual[0] = relative(out.lhs[0], out.rhs[0], std::fabs(yc) + 8.0 * i1_abs);

  auto rel2_rhs = [&](double lam) {
    return 8.0 * (q.Q_gamma - q.Q_chi) + q.C_rho * (q.C_gamma - 0.75 * q.C_rho - 4.0 * lam);
  };
  auto rel2_mag = [&](double lam) {
    return std::fabs(xc) + 8.0 * (std::fabs(q.Q_gamma) + std::fabs(q.Q_chi)) +
           std::fabs(q.C_rho) *
               (std::fabs(q.C_gamma) + 0.75 * std::fabs(q.C_rho) + 4.0 * std::fabs(lam));
  };
  out.lhs[1] = xc;
  out.rhs[1] = rel2_rhs(lambda);
  out.residual[1] = relative(xc, out.rhs[1], rel2_mag(lambda));
  if (nut) out.relation2_with_nut = relative(xc, rel2_rhs(*nut), rel2_mag(*nut));

  const LinearRelations L = linear_relations(q, out.I1);
  const std::array<double, 6> d = derivative_vector(r);
  double mag3 = std::fabs(L.r3);
  double mag4 = std::fabs(L.r4);
  for (int k = 0; k < 6; ++k) {
    out.lhs[2] += L.a[k] * d[k];
    out.lhs[3] += L.b[k] * d[k];
    mag3 += std::fabs(L.a[k] * d[k]);
    mag4 += std::fabs(L.b[k] * d[k]);
  }
  out.rhs[2] = L.r3;
  out.rhs[3] = L.r4;
  out.residual[2] = relative(out.lhs[2], out.rhs[2], mag3);
  out.residual[3] = relative(out.lhs[3], out.rhs[3], mag4);

  // b[1] and b[5] are the two eps I1 terms.
  const double flipped = out.lhs[3] - 2.0 * (L.b[1] * d[1] + L.b[5] * d[5]);
  out.relation4_opposite_eps_terms = relative(flipped, out.rhs[3], mag4);
  return out;
}

RecoveredSecondOrder recover_second_order(const InvariantRecord& r, double lambda, Invariant qc,
                                          int i1_sign) {
  if (qc == Invariant::C_rho) {
    throw std::invalid_argument("q must be one of C_chi, Q_chi, Q_gamma");
  }
  const VacuumQuantities q = vacuum_quantities(r, lambda);
  const double scale = q.C_gamma * q.C_gamma + std::fabs(q.Q_gamma);
  if (is_null(q.I4, scale)) throw NotGeneric("I4 vanishes; (Xq, Yq) cannot be recovered");

  const double i1 = (i1_sign < 0 ? -1.0 : 1.0) * std::sqrt(std::max(q.I1_squared, 0.0));
  RecoveredSecondOrder out;
  out.YC_rho = -8.0 * i1;
  out.XC_rho =
      8.0 * (q.Q_gamma - q.Q_chi) + q.C_rho * (q.C_gamma - 0.75 * q.C_rho - 4.0 * lambda);

  const LinearRelations L = linear_relations(q, i1);
  const std::array<double, 6> d = derivative_vector(r);
  const int kx = qc == Invariant::C_chi ? 0 : (qc == Invariant::Q_chi ? 2 : 4);
  const int ky = kx + 1;
  double r3 = L.r3;
  double r4 = L.r4;
  for (int k = 0; k < 6; ++k) {
    if (k == kx || k == ky) continue;
    r3 -= L.a[k] * d[k];
    r4 -= L.b[k] * d[k];
  }
  const double det = L.a[kx] * L.b[ky] - L.a[ky] * L.b[kx];
  const double norm = (std::fabs(L.a[kx]) + std::fabs(L.a[ky])) *
                      (std::fabs(L.b[kx]) + std::fabs(L.b[ky]));
  if (!(std::fabs(det) > 1e-12 * norm) || norm == 0.0) {
    throw NotGeneric("relations 3 and 4 do not determine the derivatives of " +
                     std::string(invariant_name(qc)));
  }
  out.Xq = (r3 * L.b[ky] - L.a[ky] * r4) / det;
  out.Yq = (L.a[kx] * r4 - r3 * L.b[kx]) / det;
  return out;
}

}  // namespace otk
