#include "otk/metric.hpp"

#include <cstdint>
#include <cstdio>

#include "otk/error.hpp"

namespace otk {
namespace {

QuadraticForm2<Jet> eval_form(const Expr& e11, const Expr& e12, const Expr& e22,
                              const ParamBindings& p, const Jet& t1, const Jet& t2) {
  return {evaluate(e11, p, t1, t2), evaluate(e12, p, t1, t2), evaluate(e22, p, t1, t2)};
}

// a^T h a for constant a (row-major).
QuadraticForm2<Jet> conjugate(const QuadraticForm2<Jet>& h, const BasisChange& a) {
  QuadraticForm2<Jet> r;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      Jet sum = Jet::constant(0.0, h.a11.order());
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) sum += h(k, l) * (a[2 * k + i] * a[2 * l + j]);
      }
      r(i, j) = sum;
    }
  }
  return r;
}

}  // namespace

MetricJets metric_jets(const MetricDefinition& def, Vec2<double> point, int order) {
  const ParamBindings& p = def.parameters;
  MetricJets out;
  if (!def.pullback) {
    const Jet t1 = Jet::variable(point[0], 0, order);
    const Jet t2 = Jet::variable(point[1], 1, order);
    out.g = eval_form(def.g11, def.g12, def.g22, p, t1, t2);
    out.h = eval_form(def.h11, def.h12, def.h22, p, t1, t2);
  } else {
    if (order + 1 > Jet::kMaxOrder) {
      throw OrderError("a pulled-back metric supports jets up to order " +
                       std::to_string(Jet::kMaxOrder - 1));
    }
    const Jet s1 = Jet::variable(point[0], 0, order + 1);
    const Jet s2 = Jet::variable(point[1], 1, order + 1);
    const Jet phi1 = evaluate((*def.pullback)[0], p, s1, s2);
    const Jet phi2 = evaluate((*def.pullback)[1], p, s1, s2);
    const Jet f1 = truncate(phi1, order);
    const Jet f2 = truncate(phi2, order);
    // jac[a][i] = d phi^a / d t^i
    const Jet jac[2][2] = {{partial(phi1, 0), partial(phi1, 1)},
                           {partial(phi2, 0), partial(phi2, 1)}};
    const QuadraticForm2<Jet> g = eval_form(def.g11, def.g12, def.g22, p, f1, f2);
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        Jet sum = Jet::constant(0.0, order);
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) sum += jac[a][i] * jac[b][j] * g(a, b);
        }
        out.g(i, j) = sum;
      }
    }
    out.h = eval_form(def.h11, def.h12, def.h22, p, f1, f2);
  }
  if (def.killing_basis) out.h = conjugate(out.h, *def.killing_basis);
  return out;
}

MetricDefinition pull_back(const MetricDefinition& def, const Expr& phi1, const Expr& phi2) {
  MetricDefinition r = def;
  if (def.pullback) {
    r.pullback = std::array<Expr, 2>{substitute((*def.pullback)[0], phi1, phi2),
                                     substitute((*def.pullback)[1], phi1, phi2)};
  } else {
    r.pullback = std::array<Expr, 2>{phi1, phi2};
  }
  r.domain.reset();
  return r;
}

MetricDefinition change_killing_basis(const MetricDefinition& def, const BasisChange& a) {
  MetricDefinition r = def;
  if (def.killing_basis) {
    const BasisChange& b = *def.killing_basis;
    // (a^T (b^T h b) a) = (b a)^T h (b a)
    r.killing_basis = BasisChange{b[0] * a[0] + b[1] * a[2], b[0] * a[1] + b[1] * a[3],
                                  b[2] * a[0] + b[3] * a[2], b[2] * a[1] + b[3] * a[3]};
  } else {
    r.killing_basis = a;
  }
  return r;
}

std::string canonical_text(const MetricDefinition& def) {
  std::string s;
  char buf[64];
  for (const auto& [name, value] : def.parameters) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    s += "param " + name + " = " + buf + "\n";
  }
  const std::pair<const char*, const Expr*> coeffs[] = {{"g11", &def.g11}, {"g12", &def.g12},
                                                        {"g22", &def.g22}, {"h11", &def.h11},
                                                        {"h12", &def.h12}, {"h22", &def.h22}};
  for (const auto& [key, e] : coeffs) s += std::string(key) + " = " + e->to_string() + "\n";
  if (def.pullback) {
    s += "pullback = " + (*def.pullback)[0].to_string() + " ; " + (*def.pullback)[1].to_string() +
         "\n";
  }
  if (def.killing_basis) {
    s += "basis =";
    for (double v : *def.killing_basis) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      s += buf;
    }
    s += "\n";
  }
  return s;
}

std::string fingerprint(const MetricDefinition& def) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : canonical_text(def)) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace otk
