#include "otk/surface.hpp"

#include <algorithm>
#include <cmath>

#include "otk/error.hpp"

namespace otk {

JetForm truncate(const JetForm& form, int order) {
  return {truncate(form.a11, order), truncate(form.a12, order), truncate(form.a22, order)};
}

int order_of(const JetForm& form) {
  return std::min({form.a11.order(), form.a12.order(), form.a22.order()});
}

QuadraticForm2<double> values(const JetForm& form) {
  return {form.a11.value(), form.a12.value(), form.a22.value()};
}

JetForm constant_form(const QuadraticForm2<double>& form, int order) {
  return {Jet::constant(form.a11, order), Jet::constant(form.a12, order),
          Jet::constant(form.a22, order)};
}

SurfaceMetric::SurfaceMetric(JetForm g) : g_(truncate(g, order_of(g))) {
  det_ = g_.det();
  const double scale = std::max({std::fabs(g_.a11.value()), std::fabs(g_.a12.value()),
                                 std::fabs(g_.a22.value())});
  if (!(std::fabs(det_.value()) > 1e-14 * scale * scale)) {
    throw DegenerateMetric("surface metric is degenerate (det g = " +
                           std::to_string(det_.value()) + ")");
  }
  const Jet inv_det = reciprocal(det_);
  inverse_ = {g_.a22 * inv_det, -g_.a12 * inv_det, g_.a11 * inv_det};
}

SurfaceMetric SurfaceMetric::truncated(int order) const {
  return SurfaceMetric(truncate(g_, order));
}

Christoffel christoffel(const SurfaceMetric& metric) {
  const int k = metric.order() - 1;
  if (k < 0) throw OrderError("Christoffel symbols need a metric jet of order >= 1");
  const JetForm& g = metric.g();
  // dg[m] = d_m g
  const JetForm dg[2] = {{partial(g.a11, 0), partial(g.a12, 0), partial(g.a22, 0)},
                         {partial(g.a11, 1), partial(g.a12, 1), partial(g.a22, 1)}};
  const JetForm ginv = truncate(metric.inverse(), k);
  // Christoffel symbols of the first kind: lower[l](i,j) = Gamma_{l ij}
  JetForm lower[2];
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        lower[l](i, j) = 0.5 * (dg[j](l, i) + dg[i](l, j) - dg[l](i, j));
      }
    }
  }
  Christoffel gamma;
  for (int m = 0; m < 2; ++m) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        gamma[m](i, j) = ginv(m, 0) * lower[0](i, j) + ginv(m, 1) * lower[1](i, j);
      }
    }
  }
  return gamma;
}

JetForm ricci(const SurfaceMetric& metric) {
  const int k = metric.order() - 2;
  if (k < 0) throw OrderError("curvature needs a metric jet of order >= 2");
  const Christoffel full = christoffel(metric);
  Christoffel gm = {truncate(full[0], k), truncate(full[1], k)};
  // Ric_ij = d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik
  JetForm ric;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      Jet sum = Jet::constant(0.0, k);
      for (int a = 0; a < 2; ++a) {
        sum += partial(full[a](i, j), a);
        sum -= partial(full[a](i, a), j);
        for (int l = 0; l < 2; ++l) {
          sum += gm[a](a, l) * gm[l](i, j);
          sum -= gm[a](j, l) * gm[l](i, a);
        }
      }
      ric(i, j) = sum;
    }
  }
  return ric;
}

Jet scalar_curvature(const SurfaceMetric& metric) { return trace(metric, ricci(metric)); }

JetForm covariant_hessian(const SurfaceMetric& metric, const Jet& f) {
  const int k = std::min(f.order() - 2, metric.order() - 1);
  if (k < 0) throw OrderError("covariant Hessian needs f of order >= 2 and g of order >= 1");
  const Christoffel gm = christoffel(metric);
  const Jet f1 = partial(f, 0);
  const Jet f2 = partial(f, 1);
  const Jet df[2] = {truncate(f1, k), truncate(f2, k)};
  JetForm hess;
  hess.a11 = truncate(partial(f1, 0), k);
  hess.a12 = truncate(partial(f1, 1), k);
  hess.a22 = truncate(partial(f2, 1), k);
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      for (int m = 0; m < 2; ++m) hess(i, j) -= truncate(gm[m](i, j), k) * df[m];
    }
  }
  return hess;
}

Jet laplace_beltrami(const SurfaceMetric& g, const Jet& f) {
  return trace(g, covariant_hessian(g, f));
}

Jet trace(const SurfaceMetric& metric, const JetForm& alpha) {
  const int k = std::min(order_of(alpha), metric.order());
  const JetForm a = truncate(alpha, k);
  const JetForm gi = truncate(metric.inverse(), k);
  return gi.a11 * a.a11 + 2.0 * (gi.a12 * a.a12) + gi.a22 * a.a22;
}

TraceQdet trace_and_qdet(const SurfaceMetric& metric, const JetForm& alpha) {
  const int k = std::min(order_of(alpha), metric.order());
  const JetForm a = truncate(alpha, k);
  return {trace(metric, a), a.det() / truncate(metric.det(), k)};
}

Vec2<Jet> raise(const SurfaceMetric& metric, const Vec2<Jet>& w) {
  const int k = std::min({w[0].order(), w[1].order(), metric.order()});
  const JetForm gi = truncate(metric.inverse(), k);
  const Jet w0 = truncate(w[0], k);
  const Jet w1 = truncate(w[1], k);
  return {gi.a11 * w0 + gi.a12 * w1, gi.a12 * w0 + gi.a22 * w1};
}

}  // namespace otk
