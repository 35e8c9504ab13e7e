#pragma once

#include <array>

#include "otk/jet.hpp"
#include "otk/quadratic_form.hpp"

namespace otk {

using JetForm = QuadraticForm2<Jet>;

JetForm truncate(const JetForm& form, int order);
int order_of(const JetForm& form);
QuadraticForm2<double> values(const JetForm& form);
JetForm constant_form(const QuadraticForm2<double>& form, int order);

/// Metric g_ij dt^i dt^j on the orbit surface, with jet-valued entries.
class SurfaceMetric {
 public:
  /// Throws DegenerateMetric when det g vanishes relative to the entry scale.
  explicit SurfaceMetric(JetForm g);

  const JetForm& g() const noexcept { return g_; }
  const JetForm& inverse() const noexcept { return inverse_; }
  const Jet& det() const noexcept { return det_; }
  int order() const noexcept { return g_.a11.order(); }
  /// +1 for elliptic (det g > 0), -1 for hyperbolic.
  int signature() const noexcept { return det_.value() > 0.0 ? 1 : -1; }

  /// Same metric with all jets truncated to `order`.
  SurfaceMetric truncated(int order) const;

 private:
  JetForm g_;
  Jet det_;
  JetForm inverse_;
};

/// gamma[k] holds the symmetric form Gamma^k_ij; jets of order K-1.
using Christoffel = std::array<JetForm, 2>;

Christoffel christoffel(const SurfaceMetric& g);

/// Ricci tensor of the Levi-Civita connection, order K-2.
JetForm ricci(const SurfaceMetric& g);

/// Scalar curvature R = g^ij Ric_ij (twice the Gaussian curvature), order K-2.
Jet scalar_curvature(const SurfaceMetric& g);

/// Hess_ij f = f_,ij - Gamma^k_ij f_,k, of order min(order(f) - 2, K - 1).
JetForm covariant_hessian(const SurfaceMetric& g, const Jet& f);

/// Delta f = g^ij Hess_ij f.
Jet laplace_beltrami(const SurfaceMetric& g, const Jet& f);

/// Contraction g^ij alpha_ij with jets brought to a common order.
Jet trace(const SurfaceMetric& g, const JetForm& alpha);

struct TraceQdet {
  Jet trace;  ///< C_alpha = g^ij alpha_ij
  Jet qdet;   ///< Q_alpha = det alpha / det g
};

/// Coefficients of det(alpha - lambda g)/det g = lambda^2 - C lambda + Q.
TraceQdet trace_and_qdet(const SurfaceMetric& g, const JetForm& alpha);

/// Raises the index of a covector: v^i = g^ij w_j.
Vec2<Jet> raise(const SurfaceMetric& g, const Vec2<Jet>& covector);

}  // namespace otk
