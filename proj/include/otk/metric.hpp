#pragma once

#include <array>
#include <optional>
#include <string>

#include "otk/expr.hpp"
#include "otk/jet.hpp"
#include "otk/quadratic_form.hpp"

namespace otk {

/// Axis-aligned coordinate rectangle [t1_min, t1_max] x [t2_min, t2_max].
struct Box {
  double t1_min = 0.0;
  double t1_max = 1.0;
  double t2_min = 0.0;
  double t2_max = 1.0;

  bool contains(Vec2<double> p) const noexcept {
    return p[0] >= t1_min && p[0] <= t1_max && p[1] >= t2_min && p[1] <= t2_max;
  }
  /// Point at relative position (u, v) in [0,1]^2.
  Vec2<double> at(double u, double v) const noexcept {
    return {t1_min + u * (t1_max - t1_min), t2_min + v * (t2_max - t2_min)};
  }
  Vec2<double> center() const noexcept { return at(0.5, 0.5); }
};

/// Row-major constant 2x2 matrix a acting on the Killing block as h -> a^T h a.
using BasisChange = std::array<double, 4>;

/// A metric  g_ij dt^i dt^j + h_kl du^k du^l  given by coefficient expressions
/// in (t1, t2), optionally composed with a coordinate map and a constant change
/// of Killing basis.
struct MetricDefinition {
  std::string name;
  std::array<std::string, 2> coordinate_names{"t1", "t2"};
  ParamBindings parameters;
  Expr g11, g12, g22;
  Expr h11, h12, h22;

  /// When set, the metric is pulled back along t -> (pullback[0](t), pullback[1](t)).
  std::optional<std::array<Expr, 2>> pullback;
  std::optional<BasisChange> killing_basis;

  std::optional<Box> domain;
  bool vacuum = false;
  double lambda = 0.0;
};

/// Jets of the six coefficients at one point.
struct MetricJets {
  QuadraticForm2<Jet> g;
  QuadraticForm2<Jet> h;
};

/// Coefficient jets of order `order` at `point`. A pulled-back metric needs
/// one extra derivative of the map, so its order is limited to kMaxOrder - 1.
MetricJets metric_jets(const MetricDefinition& def, Vec2<double> point, int order);

/// def pulled back along t -> phi(t); composes with an existing pullback.
MetricDefinition pull_back(const MetricDefinition& def, const Expr& phi1, const Expr& phi2);

/// def with Killing block h replaced by a^T h a; composes with an existing change.
MetricDefinition change_killing_basis(const MetricDefinition& def, const BasisChange& a);

/// Stable text form of everything that determines the metric.
std::string canonical_text(const MetricDefinition& def);

/// 64-bit FNV-1a of canonical_text, as 16 hex digits.
std::string fingerprint(const MetricDefinition& def);

}  // namespace otk
