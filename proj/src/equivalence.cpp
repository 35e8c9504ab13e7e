#include "otk/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otk/error.hpp"
#include "otk/parallel.hpp"

namespace otk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Slot { Value, AlongX, AlongY };

struct Quantity {
  std::string name;
  Slot slot;
  Invariant inv;
};

std::vector<Quantity> compared_quantities(const Chart& chart) {
  std::vector<Quantity> out;
  for (Invariant o : chart.others()) out.push_back({invariant_name(o), Slot::Value, o});
  for (Invariant c : {chart.p, chart.q}) {
    out.push_back({std::string("X") + invariant_name(c), Slot::AlongX, c});
    out.push_back({std::string("Y") + invariant_name(c), Slot::AlongY, c});
  }
  return out;
}

double pick(const SignatureSample& s, const Quantity& q) {
  switch (q.slot) {
    case Slot::Value:
      return s.values[index_of(q.inv)];
    case Slot::AlongX:
      return s.along_x[index_of(q.inv)];
    case Slot::AlongY:
      return s.along_y[index_of(q.inv)];
  }
  return 0.0;
}

double scale_of(const Signature& sig, const Quantity& q) {
  const auto v = sig.value_scale();
  const auto d = sig.derivative_scale();
  const double s = q.slot == Slot::Value ? v[index_of(q.inv)] : d[index_of(q.inv)];
  return s > 0.0 ? s : 1e-300;
}

SignatureSample sample_from(const InvariantRecord& rec) {
  SignatureSample s;
  s.source = rec.point;
  s.values = rec.basic;
  s.along_x = rec.derivatives.X;
  s.along_y = rec.derivatives.Y;
  return s;
}

struct ChartValue {
  Vec2<double> pq;
  std::array<Vec2<double>, 2> grad;  // grad p, grad q
};

ChartValue chart_value(const MetricDefinition& def, const Chart& chart, Vec2<double> t) {
  const MetricJets jets = metric_jets(def, t, 2);
  const BasicInvariants inv = basic_invariants(SurfaceMetric(jets.g), KillingBlock(jets.h));
  return {{inv[chart.p].value(), inv[chart.q].value()},
          {gradient(inv[chart.p]), gradient(inv[chart.q])}};
}

double residual_norm(const ChartValue& v, Vec2<double> target, Vec2<double> scale) {
  return std::max(std::fabs(v.pq[0] - target[0]) / scale[0],
                  std::fabs(v.pq[1] - target[1]) / scale[1]);
}

// Largest relative mismatch over the compared quantities.
double mismatch(const Signature& sig, const std::vector<Quantity>& quantities,
                const SignatureSample& a, const SignatureSample& b, int y_sign,
                const Quantity** worst = nullptr) {
  double m = 0.0;
  for (const auto& q : quantities) {
    const double sign = q.slot == Slot::AlongY ? y_sign : 1.0;
    const double d = std::fabs(pick(a, q) - sign * pick(b, q)) / scale_of(sig, q);
    if (!(d <= m)) {
      m = std::isnan(d) ? kInf : d;
      if (worst) *worst = &q;
    }
  }
  return m;
}

struct Outcome {
  bool located = false;
  std::vector<SignatureSample> candidates;
};

}  // namespace

std::array<Invariant, 2> Chart::others() const {
  std::array<Invariant, 2> out{};
  int k = 0;
  for (Invariant i : kBasicInvariants) {
    if (i != p && i != q && k < 2) out[k++] = i;
  }
  return out;
}

std::array<double, 4> Signature::value_scale() const {
  std::array<double, 4> s{};
  for (const auto& smp : samples) {
    for (int k = 0; k < 4; ++k) s[k] = std::max(s[k], std::fabs(smp.values[k]));
  }
  return s;
}

std::array<double, 4> Signature::derivative_scale() const {
  std::array<double, 4> s{};
  for (const auto& smp : samples) {
    for (int k = 0; k < 4; ++k) {
      s[k] = std::max({s[k], std::fabs(smp.along_x[k]), std::fabs(smp.along_y[k])});
    }
  }
  return s;
}

Signature build_signature(const MetricDefinition& def, const Box& box,
                          const SignatureOptions& options) {
  Signature sig;
  sig.metric_name = def.name;
  sig.fingerprint = fingerprint(def);
  sig.box = box;
  sig.grid = options.grid;
  sig.tolerances = options.tolerances;

  if (options.chart) {
    sig.chart = *options.chart;
  } else {
    GenericityOptions gopt;
    gopt.independence_threshold = options.tolerances.independence;
    const auto ranking = functional_independence(def, grid_points(box, 12, 12), gopt);
    const auto it = std::find_if(ranking.begin(), ranking.end(),
                                 [](const PairScore& s) { return s.independent; });
    if (it == ranking.end()) {
      throw NoIndependentPair("no functionally independent pair of basic invariants on the box");
    }
    sig.chart = {it->p, it->q};
  }
  if (sig.chart.p == sig.chart.q) throw NoIndependentPair("chart needs two distinct invariants");

  const auto points = grid_points(box, options.grid, options.grid);
  std::vector<std::optional<SignatureSample>> found(points.size());
  std::vector<char> evaluable(points.size(), 0);
  parallel_for(points.size(), options.threads, [&](std::size_t i) {
    try {
      const MetricJets jets = metric_jets(def, points[i], 2);
      const SurfaceMetric g(jets.g);
      const KillingBlock block(jets.h);
      evaluable[i] = 1;
      const BasicInvariants inv = basic_invariants(g, block);
      if (!(pair_score(inv, sig.chart.p, sig.chart.q) > options.tolerances.independence)) return;
      const InvariantRecord rec = compute_record(jets, points[i]);
      if (!rec.frame_defined) return;
      found[i] = sample_from(rec);
    } catch (const Error&) {
    }
  });

  std::vector<SignatureSample> valid;
  for (auto& f : found) {
    if (f) valid.push_back(*f);
  }
  const auto evaluated = std::count(evaluable.begin(), evaluable.end(), 1);
  if (valid.size() < static_cast<size_t>(options.tolerances.min_samples)) {
    if (valid.size() * 10 < static_cast<size_t>(evaluated) || valid.empty()) {
      throw NoIndependentPair(std::string("chart (") + invariant_name(sig.chart.p) + ", " +
                              invariant_name(sig.chart.q) +
                              ") is not locally independent on the box");
    }
    throw DomainTooSmall("only " + std::to_string(valid.size()) + " valid samples, need " +
                         std::to_string(options.tolerances.min_samples));
  }

  const int ip = index_of(sig.chart.p);
  const int iq = index_of(sig.chart.q);
  double pmin = kInf, pmax = -kInf, qmin = kInf, qmax = -kInf;
  for (const auto& s : valid) {
    pmin = std::min(pmin, s.values[ip]);
    pmax = std::max(pmax, s.values[ip]);
    qmin = std::min(qmin, s.values[iq]);
    qmax = std::max(qmax, s.values[iq]);
  }
  const double dp = std::max(pmax - pmin, 1e-300);
  const double dq = std::max(qmax - qmin, 1e-300);
  // In coordinates normalised by the ranges, the chart diameter is sqrt(2).
  const double delta = options.tolerances.separation * std::sqrt(2.0);
  for (const auto& s : valid) {
    bool close = false;
    for (const auto& kept : sig.samples) {
      const double a = (s.values[ip] - kept.values[ip]) / dp;
      const double b = (s.values[iq] - kept.values[iq]) / dq;
      if (std::hypot(a, b) < delta) {
        close = true;
        break;
      }
    }
    if (!close) sig.samples.push_back(s);
  }
  if (sig.samples.size() < static_cast<size_t>(options.tolerances.min_samples)) {
    throw DomainTooSmall("only " + std::to_string(sig.samples.size()) +
                         " separated samples, need " +
                         std::to_string(options.tolerances.min_samples));
  }
  return sig;
}

Vec2<double> locate(const MetricDefinition& def, const Chart& chart, Vec2<double> target,
                    Vec2<double> seed, const Box& domain, const LocateOptions& options) {
  if (!domain.contains(seed)) throw LeftDomain("seed lies outside the domain");
  Vec2<double> t = seed;
  ChartValue cur = chart_value(def, chart, t);
  double norm = residual_norm(cur, target, options.scale);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (norm <= options.tolerance) return t;
    const auto& g = cur.grad;
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double size = std::hypot(g[0][0], g[0][1]) * std::hypot(g[1][0], g[1][1]);
    if (!(std::fabs(det) > 1e-14 * size)) throw NoConvergence("chart Jacobian is singular");
    const double fp = cur.pq[0] - target[0];
    const double fq = cur.pq[1] - target[1];
    const Vec2<double> step = {-(g[1][1] * fp - g[0][1] * fq) / det,
                               -(-g[1][0] * fp + g[0][0] * fq) / det};
    bool accepted = false;
    bool left = false;
    for (double lambda = 1.0; lambda > 1e-6; lambda *= 0.5) {
      const Vec2<double> next = {t[0] + lambda * step[0], t[1] + lambda * step[1]};
      if (!domain.contains(next)) {
        left = true;
        continue;
      }
      try {
        const ChartValue v = chart_value(def, chart, next);
        const double n = residual_norm(v, target, options.scale);
        if (n < (1.0 - 1e-4 * lambda) * norm || n <= options.tolerance) {
          t = next;
          cur = v;
          norm = n;
          accepted = true;
          break;
        }
      } catch (const Error&) {
        left = true;
      }
    }
    if (!accepted) {
      if (left) throw LeftDomain("Newton iteration left the domain");
      throw NoConvergence("Newton iteration stalled");
    }
  }
  if (norm <= options.tolerance) return t;
  throw NoConvergence("Newton iteration did not converge in " +
                      std::to_string(options.max_iterations) + " steps");
}

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Equivalent:
      return "Equivalent";
    case VerdictKind::Inequivalent:
      return "Inequivalent";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Verdict compare(const Signature& a, const MetricDefinition& b, const Box& box_b,
                const CompareOptions& options) {
  Verdict v;
  v.samples = static_cast<int>(a.samples.size());

  GenericityOptions gopt;
  gopt.independence_threshold = a.tolerances.independence;
  const GenericityReport rep = genericity_report(b, grid_points(box_b, 12, 12), false, gopt);
  if (!rep.det_g_ok || !rep.det_h_ok || !rep.c_rho_nonzero || !rep.independence_ok ||
      rep.killing_dim != 2) {
    v.reason = "genericity";
    for (const auto& n : rep.notes) v.reason += "; " + n;
    return v;
  }
  const auto chart_rank = std::find_if(rep.ranking.begin(), rep.ranking.end(), [&](const auto& s) {
    return (s.p == a.chart.p && s.q == a.chart.q) || (s.p == a.chart.q && s.q == a.chart.p);
  });
  if (chart_rank == rep.ranking.end() || !chart_rank->independent) {
    v.reason = std::string("chart mismatch: (") + invariant_name(a.chart.p) + ", " +
               invariant_name(a.chart.q) + ") is not independent for the second metric";
    return v;
  }

  const auto values = a.value_scale();
  const Vec2<double> scale = {std::max(values[index_of(a.chart.p)], 1e-300),
                              std::max(values[index_of(a.chart.q)], 1e-300)};
  struct Seed {
    Vec2<double> t;
    Vec2<double> pq;
  };
  std::vector<Seed> prescan;
  for (const auto& t : grid_points(box_b, options.prescan, options.prescan)) {
    try {
      prescan.push_back({t, chart_value(b, a.chart, t).pq});
    } catch (const Error&) {
    }
  }
  const double diam = std::hypot(box_b.t1_max - box_b.t1_min, box_b.t2_max - box_b.t2_min);
  LocateOptions lopt;
  lopt.scale = scale;

  std::vector<Outcome> outcomes(a.samples.size());
  parallel_for(a.samples.size(), options.threads, [&](std::size_t i) {
    const SignatureSample& s = a.samples[i];
    const Vec2<double> target = {s.values[index_of(a.chart.p)], s.values[index_of(a.chart.q)]};
    std::vector<std::pair<double, size_t>> near;
    for (size_t k = 0; k < prescan.size(); ++k) {
      const double dp = (prescan[k].pq[0] - target[0]) / scale[0];
      const double dq = (prescan[k].pq[1] - target[1]) / scale[1];
      near.push_back({dp * dp + dq * dq, k});
    }
    const size_t n = std::min<size_t>(options.seeds, near.size());
    std::partial_sort(near.begin(), near.begin() + n, near.end());
    Outcome& out = outcomes[i];
    for (size_t k = 0; k < n; ++k) {
      try {
        const Vec2<double> t = locate(b, a.chart, target, prescan[near[k].second].t, box_b, lopt);
        const bool seen = std::any_of(out.candidates.begin(), out.candidates.end(), [&](auto& c) {
          return std::hypot(c.source[0] - t[0], c.source[1] - t[1]) < 1e-7 * diam;
        });
        if (seen) continue;
        const InvariantRecord rec = compute_record(b, t);
        if (!rec.frame_defined) continue;
        out.candidates.push_back(sample_from(rec));
        out.located = true;
      } catch (const Error&) {
      }
    }
  });

  const auto quantities = compared_quantities(a.chart);
  const double tau = a.tolerances.compare;
  auto best = [&](size_t i, int sign, size_t* which = nullptr) {
    double m = kInf;
    for (size_t c = 0; c < outcomes[i].candidates.size(); ++c) {
      const double d = mismatch(a, quantities, a.samples[i], outcomes[i].candidates[c], sign);
      if (d < m) {
        m = d;
        if (which) *which = c;
      }
    }
    return m;
  };
  int matched[2] = {0, 0};
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].located) continue;
    ++v.locatable;
    for (int f = 0; f < 2; ++f) {
      if (best(i, f == 0 ? 1 : -1) <= tau) ++matched[f];
    }
  }
  v.y_sign = matched[1] > matched[0] ? -1 : 1;
  v.matched = std::max(matched[0], matched[1]);
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].located) v.max_mismatch = std::max(v.max_mismatch, best(i, v.y_sign));
  }

  if (v.locatable >= options.min_locatable * v.samples && v.locatable > 0 &&
      v.matched >= options.min_matched * v.locatable) {
    v.kind = VerdictKind::Equivalent;
    v.reason = "invariants agree on the sampled chart region";
    return v;
  }

  // Re-check the worst mismatches at tighter tolerance before reporting one.
  std::vector<std::pair<double, size_t>> bad;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].located) continue;
    const double m = best(i, v.y_sign);
    if (m > tau) bad.push_back({m, i});
  }
  std::sort(bad.begin(), bad.end(), std::greater<>());
  LocateOptions tight = lopt;
  tight.tolerance = 1e-13;
  tight.max_iterations = 40;
  for (size_t k = 0; k < std::min<size_t>(bad.size(), 20); ++k) {
    const size_t i = bad[k].second;
    const SignatureSample& s = a.samples[i];
    const Vec2<double> target = {s.values[index_of(a.chart.p)], s.values[index_of(a.chart.q)]};
    double confirmed = kInf;
    SignatureSample chosen;
    const Quantity* worst = nullptr;
    for (const auto& cand : outcomes[i].candidates) {
      try {
        const Vec2<double> t = locate(b, a.chart, target, cand.source, box_b, tight);
        const SignatureSample again = sample_from(compute_record(b, t));
        const Quantity* w = nullptr;
        const double m = mismatch(a, quantities, s, again, v.y_sign, &w);
        if (m < confirmed) {
          confirmed = m;
          chosen = again;
          worst = w;
        }
      } catch (const Error&) {
      }
    }
    if (worst && confirmed > options.confirm_factor * tau && std::isfinite(confirmed)) {
      Witness w;
      w.pq = target;
      w.quantity = worst->name;
      w.value_a = pick(s, *worst);
      w.value_b = (worst->slot == Slot::AlongY ? v.y_sign : 1) * pick(chosen, *worst);
      w.mismatch = confirmed;
      w.source_a = s.source;
      w.source_b = chosen.source;
      v.kind = VerdictKind::Inequivalent;
      v.reason = "invariant " + w.quantity + " differs at the same chart value";
      v.witness = w;
      return v;
    }
  }

  v.reason = v.locatable < options.min_locatable * v.samples
                 ? "insufficient overlap of chart ranges"
                 : "mismatches could not be confirmed";
  return v;
}

double witness_mismatch(const Signature& a, const MetricDefinition& def_a,
                        const MetricDefinition& def_b, const Box& box_b, const Witness& w,
                        int y_sign) {
  const auto quantities = compared_quantities(a.chart);
  const auto it = std::find_if(quantities.begin(), quantities.end(),
                               [&](const Quantity& q) { return q.name == w.quantity; });
  if (it == quantities.end()) throw Error("unknown witness quantity " + w.quantity);
  const auto values = a.value_scale();
  LocateOptions opt;
  opt.tolerance = 1e-13;
  opt.max_iterations = 40;
  opt.scale = {std::max(values[index_of(a.chart.p)], 1e-300),
               std::max(values[index_of(a.chart.q)], 1e-300)};
  const Vec2<double> ta = locate(def_a, a.chart, w.pq, w.source_a, a.box, opt);
  const Vec2<double> tb = locate(def_b, a.chart, w.pq, w.source_b, box_b, opt);
  const SignatureSample sa = sample_from(compute_record(def_a, ta));
  const SignatureSample sb = sample_from(compute_record(def_b, tb));
  const double sign = it->slot == Slot::AlongY ? y_sign : 1.0;
  return std::fabs(pick(sa, *it) - sign * pick(sb, *it)) / scale_of(a, *it);
}

}  // namespace otk
