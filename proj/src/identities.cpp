#include "otk/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "otk/curvature.hpp"
#include "otk/error.hpp"
#include "otk/vacuum.hpp"
#include "otk/wlp.hpp"

namespace otk {
namespace {

double rel(double a, double b) { return std::fabs(a - b) / (std::fabs(a) + std::fabs(b) + 1e-300); }

// Accumulates the worst residual; a callback returning nullopt means "not applicable here".
IdentityResult run(const std::string& name, double tol, const std::vector<Vec2<double>>& pts,
                   const std::function<std::optional<double>(Vec2<double>)>& f) {
  IdentityResult r;
  r.name = name;
  r.tolerance = tol;
  int failed = 0;
  for (const auto& p : pts) {
    try {
      if (const auto v = f(p)) {
        ++r.points;
        r.max_residual = std::max(r.max_residual, std::isnan(*v) ? HUGE_VAL : *v);
      }
    } catch (const Error&) {
      ++failed;
    }
  }
  if (failed > 0) r.note = std::to_string(failed) + " points could not be evaluated";
  if (r.points == 0 && r.note.empty()) r.note = "not applicable on this box";
  return r;
}

}  // namespace

std::vector<Vec2<double>> random_points(const Box& box, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2<double>> out;
  for (int i = 0; i < n; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    out.push_back(box.at(a, b));
  }
  return out;
}

std::optional<KerrNutParameters> kerr_nut_parameters(const MetricDefinition& def) {
  if (def.pullback || def.killing_basis) return std::nullopt;
  const auto& p = def.parameters;
  for (const char* k : {"M", "L", "A", "Lambda"}) {
    if (!p.count(k)) return std::nullopt;
  }
  return KerrNutParameters{p.at("M"), p.at("L"), p.at("A"), p.at("Lambda")};
}

KerrNutClosedForms kerr_nut_closed_forms(const KerrNutParameters& k, Vec2<double> t) {
  const double t1 = t[0], t2 = t[1];
  const double r2 = t1 * t1 + t2 * t2;
  const double r6 = r2 * r2 * r2;
  const double a = t1 * (3 * t2 * t2 - t1 * t1);
  const double b = t2 * (t2 * t2 - 3 * t1 * t1);
  const double lam = k.Lambda;
  KerrNutClosedForms c;
  const double z = (k.L * b - k.M * a) / r6;
  c.Q_gamma = -4.0 * z * z;
  c.C_chi = 4.0 * (k.M * b + k.L * a) / r6 - 4.0 * lam / 3.0;
  c.simple_rhs = 16.0 * (k.M * k.M + k.L * k.L) / r6;

  const double P = (k.A * k.A - t1 * t1) * (1 + lam * t1 * t1 / 3) + 2 * k.L * t1;
  const double Q = (k.A * k.A + t2 * t2) * (1 - lam * t2 * t2 / 3) - 2 * k.M * t2;
  const double la3 = lam * k.A * k.A - 3;
  c.X = {-2.0 / 3.0 * (2 * lam * t1 * t1 * t1 - la3 * t1 - 3 * k.L) / r2,
         -2.0 / 3.0 * (2 * lam * t2 * t2 * t2 + la3 * t2 + 3 * k.M) / r2};
  const double sP = P > 0 ? 1.0 : -1.0;
  const double sQ = Q > 0 ? 1.0 : -1.0;
  c.Y = {-sQ * std::sqrt(std::fabs(P / Q)) * c.X[1], sP * std::sqrt(std::fabs(Q / P)) * c.X[0]};
  return c;
}

double simple_relation_lhs(double c_chi, double q_gamma, double lambda) {
  const double c = c_chi + 4.0 * lambda / 3.0;
  return c * c - 4.0 * q_gamma;
}

CubicResiduals cubic_residuals(const KerrNutParameters& k, double c_chi, double q_gamma,
                               Vec2<double> t, int branch) {
  const double c = c_chi + 4.0 * k.Lambda / 3.0;
  const double D = simple_relation_lhs(c_chi, q_gamma, k.Lambda);
  const double root = (branch < 0 ? -1.0 : 1.0) * std::sqrt(std::max(-q_gamma, 0.0));
  CubicResiduals r;
  r.I = std::cbrt(16.0 * (k.M * k.M + k.L * k.L) / D);
  r.I_plus = 4.0 * (k.M * c + 2.0 * k.L * root) / D;
  r.I_minus = 4.0 * (k.M * c - 2.0 * k.L * root) / D;
  const double alt = 4.0 * (k.L * c - 2.0 * k.M * root) / D;
  auto cubic = [&](double x, double constant) {
    const double terms[3] = {4 * x * x * x, -3 * r.I * x, constant};
    const double mag = std::fabs(terms[0]) + std::fabs(terms[1]) + std::fabs(terms[2]);
    return std::fabs(terms[0] + terms[1] + terms[2]) / (mag + 1e-300);
  };
  r.t1 = cubic(t[0], r.I_plus);
  r.t2 = cubic(t[1], -r.I_minus);
  r.t1_alternative = cubic(t[0], alt);
  return r;
}

std::vector<IdentityResult> verify_identities(const MetricDefinition& def, const Box& box,
                                              int points, std::uint64_t seed) {
  const auto pts = random_points(box, points, seed);
  std::vector<IdentityResult> out;
  auto record = [&](Vec2<double> p) { return compute_record(def, p); };

  if (const auto k = kerr_nut_parameters(def)) {
    out.push_back(run("closed form Q_gamma, C_chi", 1e-9, pts, [&](Vec2<double> p) {
      const auto r = record(p);
      const auto c = kerr_nut_closed_forms(*k, p);
      return std::max(rel(r.value(Invariant::Q_gamma), c.Q_gamma),
                      rel(r.value(Invariant::C_chi), c.C_chi));
    }));
    out.push_back(run("simple relation (C_chi + 4Lambda/3)^2 - 4Q_gamma", 1e-9, pts,
                      [&](Vec2<double> p) {
                        const auto r = record(p);
                        return rel(simple_relation_lhs(r.value(Invariant::C_chi),
                                                       r.value(Invariant::Q_gamma), k->Lambda),
                                   kerr_nut_closed_forms(*k, p).simple_rhs);
                      }));
    auto best_branch = [&](Vec2<double> p, auto pick) {
      const auto r = record(p);
      const double cc = r.value(Invariant::C_chi), qg = r.value(Invariant::Q_gamma);
      return std::min(pick(cubic_residuals(*k, cc, qg, p, 1)),
                      pick(cubic_residuals(*k, cc, qg, p, -1)));
    };
    out.push_back(run("cubic in t1", 1e-7, pts, [&](Vec2<double> p) {
      return best_branch(p, [](const CubicResiduals& c) { return c.t1; });
    }));
    out.push_back(run("cubic in t2", 1e-7, pts, [&](Vec2<double> p) {
      return best_branch(p, [](const CubicResiduals& c) { return c.t2; });
    }));
    out.push_back(run("cubic in t1, L and M exchanged in the constant", 1e-7, pts,
                      [&](Vec2<double> p) {
                        return best_branch(p,
                                           [](const CubicResiduals& c) { return c.t1_alternative; });
                      }));
    out.push_back(run("frame closed forms X, Y", 1e-9, pts, [&](Vec2<double> p) {
      const auto r = record(p);
      const auto c = kerr_nut_closed_forms(*k, p);
      double m = 0.0;
      for (int i = 0; i < 2; ++i) m = std::max({m, rel(r.X[i], c.X[i]), rel(r.Y[i], c.Y[i])});
      return m;
    }));
  }

  out.push_back(run("Cosgrove metric has scalar curvature -2", 1e-6, pts,
                    [&](Vec2<double> p) -> std::optional<double> {
                      const MetricJets j = metric_jets(def, p, 3);
                      const SurfaceMetric g(truncate(j.g, 2));
                      const KillingBlock block(j.h);
                      const double qg = basic_invariants(g, block).Q_gamma.value();
                      if (!(std::fabs(qg) > 1e-6)) return std::nullopt;
                      const double R = scalar_curvature(SurfaceMetric(cosgrove_metric(block))).value();
                      return std::fabs(R + 2.0) / 2.0;
                    }));

  out.push_back(run("frame: X ln x = C_rho, Y ln x = 0, g and rho components", 1e-9, pts,
                    [&](Vec2<double> p) -> std::optional<double> {
                      const MetricJets j = metric_jets(def, p, 2);
                      const SurfaceMetric g(j.g);
                      const KillingBlock block(j.h);
                      const double c = basic_invariants(g, block).C_rho.value();
                      if (is_null(c, c_rho_scale(g, block))) return std::nullopt;
                      const Frame f = invariant_frame(g, block);
                      const Vec2<double> dl = gradient(block.log_abs_x());
                      const double xl = f.X[0] * dl[0] + f.X[1] * dl[1];
                      const double yl = f.Y[0] * dl[0] + f.Y[1] * dl[1];
                      const auto fg = frame_components(values(g.g()), f);
                      const auto fr = frame_components(values(form_rho(block)), f);
                      const double s = g.signature();
                      const double ac = std::fabs(c);
                      return std::max({std::fabs(xl - c) / ac, std::fabs(yl) / ac,
                                       std::fabs(fg.xx - c) / ac, std::fabs(fg.xy) / ac,
                                       std::fabs(fg.yy - s * c) / ac,
                                       std::fabs(fr.xx - c * c) / (c * c), std::fabs(fr.xy) / (c * c),
                                       std::fabs(fr.yy) / (c * c)});
                    }));

  out.push_back(run("frame: chi product identity", 1e-9, pts,
                    [&](Vec2<double> p) -> std::optional<double> {
                      const MetricJets j = metric_jets(def, p, 2);
                      const SurfaceMetric g(j.g);
                      const KillingBlock block(j.h);
                      const auto inv = basic_invariants(g, block);
                      const double c = inv.C_rho.value();
                      if (is_null(c, c_rho_scale(g, block))) return std::nullopt;
                      const auto fc = frame_components_chi(g, block);
                      const double lhs = fc.xx * fc.yy - fc.xy * fc.xy;
                      const double rhs = g.signature() * c * c * inv.Q_chi.value();
                      const double mag = std::fabs(fc.xx * fc.yy) + fc.xy * fc.xy + std::fabs(rhs);
                      const double xy = chi_xy_magnitude(c, inv.C_chi.value(), inv.Q_chi.value(),
                                                         inv.Q_gamma.value(), g.signature());
                      return std::max(std::fabs(lhs - rhs) / (mag + 1e-300),
                                      rel(std::fabs(fc.xy), xy) * (xy > 1e-12 * c * c));
                    }));

  out.push_back(run("four-dimensional scalar curvature from surface data", 1e-8, pts,
                    [&](Vec2<double> p) {
                      const auto rr = ricci_restriction_identity(metric_jets(def, p, 2));
                      return std::fabs(rr.scalar_formula - rr.scalar_oracle) /
                             (1.0 + std::fabs(rr.scalar_oracle));
                    }));

  out.push_back(run("Ricci restriction to surface and Killing block", 1e-7, pts,
                    [&](Vec2<double> p) {
                      const auto rr = ricci_restriction_identity(metric_jets(def, p, 2));
                      double m = rr.mixed_max;
                      for (int a = 0; a < 2; ++a) {
                        for (int b = 0; b < 2; ++b) {
                          m = std::max({m,
                                        std::fabs(rr.surface_formula(a, b) - rr.surface_oracle(a, b)) /
                                            (1.0 + std::fabs(rr.surface_oracle(a, b))),
                                        std::fabs(rr.killing_formula(a, b) - rr.killing_oracle(a, b)) /
                                            (1.0 + std::fabs(rr.killing_oracle(a, b)))});
                        }
                      }
                      return m;
                    }));

  out.push_back(run("Weyl components C1234, C1212, C3434", 1e-7, pts,
                    [&](Vec2<double> p) -> std::optional<double> {
                      const MetricJets j = metric_jets(def, p, 2);
                      const auto w = weyl_comparison(j);
                      if (std::isnan(w.c1234_formula)) return std::nullopt;
                      auto d = [](double a, double b) { return std::fabs(a - b) / (1.0 + std::fabs(b)); };
                      // The display fixes C1234 only up to the sign of the square root.
                      return std::max({d(w.c1234_formula, std::fabs(w.c1234_oracle)),
                                       d(w.c1212_formula, w.c1212_oracle),
                                       d(w.c3434_formula, w.c3434_oracle)});
                    }));

  if (def.vacuum) {
    const double lam = def.lambda;
    out.push_back(run("Einstein equations Ric = Lambda g", 1e-7, pts,
                      [&](Vec2<double> p) { return vacuum_residual(def, p, lam); }));
    const char* names[4] = {"vacuum relation 1 (Y C_rho)", "vacuum relation 2 (X C_rho)",
                            "vacuum relation 3", "vacuum relation 4"};
    for (int i = 0; i < 4; ++i) {
      out.push_back(run(names[i], 1e-6, pts, [&, i](Vec2<double> p) {
        return vacuum_relations(record(p), lam).residual[i];
      }));
    }
    out.push_back(run("vacuum: C_nu + C_rho/2 + 4 Lambda, R + C_chi/2, full R - 4 Lambda", 1e-8,
                      pts, [&](Vec2<double> p) {
                        const auto r = record(p);
                        return std::max({std::fabs(r.C_nu + 0.5 * r.value(Invariant::C_rho) + 4 * lam),
                                         std::fabs(r.R2 + 0.5 * r.value(Invariant::C_chi)),
                                         std::fabs(r.Rfull - 4 * lam)});
                      }));
    out.push_back(run("vacuum: Re Psi2 = C_chi/8 + Lambda/6", 1e-9, pts,
                      [&](Vec2<double> p) -> std::optional<double> {
                        const auto r = record(p);
                        if (std::isnan(r.RePsi2)) return std::nullopt;
                        return std::fabs(r.RePsi2 - (r.value(Invariant::C_chi) / 8 + lam / 6)) /
                               (1.0 + std::fabs(r.RePsi2));
                      }));
  }
  return out;
}

}  // namespace otk
