#include "otk/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "otk/error.hpp"

namespace otk {
namespace {

constexpr double kEta = 1e-300;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  }
  return m;
}

std::string point_text(Vec2<double> p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p[0], p[1]);
  return buf;
}

constexpr std::array<std::array<Invariant, 2>, 6> kPairs = {{
    {Invariant::C_rho, Invariant::C_chi},
    {Invariant::C_rho, Invariant::Q_chi},
    {Invariant::C_rho, Invariant::Q_gamma},
    {Invariant::C_chi, Invariant::Q_chi},
    {Invariant::C_chi, Invariant::Q_gamma},
    {Invariant::Q_chi, Invariant::Q_gamma},
}};

}  // namespace

std::vector<Vec2<double>> grid_points(const Box& box, int n1, int n2) {
  std::vector<Vec2<double>> out;
  out.reserve(static_cast<size_t>(std::max(n1, 0) * std::max(n2, 0)));
  for (int j = 0; j < n2; ++j) {
    const double v = n2 == 1 ? 0.5 : static_cast<double>(j) / (n2 - 1);
    for (int i = 0; i < n1; ++i) {
      const double u = n1 == 1 ? 0.5 : static_cast<double>(i) / (n1 - 1);
      out.push_back(box.at(u, v));
    }
  }
  return out;
}

double pair_score(const BasicInvariants& inv, Invariant p, Invariant q) {
  const Vec2<double> a = gradient(inv[p]);
  const Vec2<double> b = gradient(inv[q]);
  const double det = a[0] * b[1] - a[1] * b[0];
  return std::fabs(det) / (std::hypot(a[0], a[1]) * std::hypot(b[0], b[1]) + kEta);
}

std::vector<PairScore> functional_independence(const MetricDefinition& def,
                                               const std::vector<Vec2<double>>& samples,
                                               const GenericityOptions& options) {
  std::array<std::vector<double>, 6> scores;
  for (const auto& pt : samples) {
    try {
      const MetricJets jets = metric_jets(def, pt, 2);
      const BasicInvariants inv = basic_invariants(SurfaceMetric(jets.g), KillingBlock(jets.h));
      for (size_t k = 0; k < kPairs.size(); ++k) {
        scores[k].push_back(pair_score(inv, kPairs[k][0], kPairs[k][1]));
      }
    } catch (const Error&) {
      for (auto& s : scores) s.push_back(0.0);
    }
  }
  std::vector<PairScore> out;
  for (size_t k = 0; k < kPairs.size(); ++k) {
    PairScore ps;
    ps.p = kPairs[k][0];
    ps.q = kPairs[k][1];
    ps.median_score = median(scores[k]);
    const auto above = std::count_if(scores[k].begin(), scores[k].end(), [&](double s) {
      return s > options.independence_threshold;
    });
    ps.fraction_independent =
        scores[k].empty() ? 0.0 : static_cast<double>(above) / scores[k].size();
    ps.independent = ps.median_score > options.independence_threshold &&
                     ps.fraction_independent >= options.minimum_fraction;
    out.push_back(ps);
  }
  std::stable_sort(out.begin(), out.end(), [](const PairScore& a, const PairScore& b) {
    return a.median_score > b.median_score;
  });
  return out;
}

std::array<double, 6> killing_minors(const JetForm& h) {
  const double h11 = h.a11.value(), h12 = h.a12.value(), h22 = h.a22.value();
  const double x = h11 * h22 - h12 * h12;
  std::array<double, 6> d{};
  for (int i = 0; i < 2; ++i) {
    const double a = i == 0 ? h.a11(1, 0) : h.a11(0, 1);
    const double b = i == 0 ? h.a12(1, 0) : h.a12(0, 1);
    const double c = i == 0 ? h.a22(1, 0) : h.a22(0, 1);
    d[3 * i + 0] = 8.0 * (h11 * b - h12 * a) * x;
    d[3 * i + 1] = 4.0 * (h11 * c - h22 * a) * x;
    d[3 * i + 2] = 8.0 * (h12 * c - h22 * b) * x;
  }
  return d;
}

double scaled_killing_minor(const JetForm& h) {
  const auto d = killing_minors(h);
  const double x = h.a11.value() * h.a22.value() - h.a12.value() * h.a12.value();
  double dh = 0.0;
  for (const Jet* e : {&h.a11, &h.a12, &h.a22}) {
    dh = std::max({dh, std::fabs((*e)(1, 0)), std::fabs((*e)(0, 1))});
  }
  const double hmax =
      std::max({std::fabs(h.a11.value()), std::fabs(h.a12.value()), std::fabs(h.a22.value())});
  const double scale = std::fabs(x) * dh * hmax;
  double worst = 0.0;
  for (double v : d) worst = std::max(worst, std::fabs(v));
  if (scale == 0.0) return 0.0;
  return worst / scale;
}

int killing_dimension(const MetricDefinition& def, const std::vector<Vec2<double>>& samples,
                      double threshold) {
  for (const auto& pt : samples) {
    const MetricJets jets = metric_jets(def, pt, 1);
    if (scaled_killing_minor(jets.h) >= threshold) return 2;
  }
  return 3;
}

GenericityReport genericity_report(const MetricDefinition& def,
                                   const std::vector<Vec2<double>>& samples, bool vacuum,
                                   const GenericityOptions& options) {
  GenericityReport rep;
  rep.samples = static_cast<int>(samples.size());
  bool i4_ok = true;
  double kill = 0.0;
  for (const auto& pt : samples) {
    MetricJets jets;
    try {
      jets = metric_jets(def, pt, 2);
    } catch (const Error& e) {
      ++rep.failed_samples;
      rep.notes.push_back("evaluation failed at " + point_text(pt) + ": " + e.what());
      continue;
    }
    kill = std::max(kill, scaled_killing_minor(jets.h));
    std::optional<SurfaceMetric> g;
    std::optional<KillingBlock> block;
    try {
      g.emplace(jets.g);
    } catch (const DegenerateMetric&) {
      if (rep.det_g_ok) rep.notes.push_back("det g = 0 at " + point_text(pt));
      rep.det_g_ok = false;
    }
    try {
      block.emplace(jets.h);
    } catch (const DegenerateMetric&) {
      if (rep.det_h_ok) rep.notes.push_back("det h = 0 at " + point_text(pt));
      rep.det_h_ok = false;
    }
    if (!g || !block) continue;
    const BasicInvariants inv = basic_invariants(*g, *block);
    const double c_rho = inv.C_rho.value();
    if (is_null(c_rho, c_rho_scale(*g, *block), options.null_tolerance)) {
      if (rep.c_rho_nonzero) rep.notes.push_back("C_rho = 0 at " + point_text(pt));
      rep.c_rho_nonzero = false;
    }
    rep.max_abs_q_chi = std::max(rep.max_abs_q_chi, std::fabs(inv.Q_chi.value()));
    rep.max_abs_q_gamma = std::max(rep.max_abs_q_gamma, std::fabs(inv.Q_gamma.value()));
    if (vacuum) {
      const double c_gamma = inv.C_gamma().value();
      const double i4 = 0.25 * c_gamma * c_gamma - inv.Q_gamma.value();
      const double scale = c_gamma * c_gamma + std::fabs(inv.Q_gamma.value());
      if (is_null(i4, scale, options.null_tolerance)) {
        if (i4_ok) rep.notes.push_back("I4 = 0 at " + point_text(pt));
        i4_ok = false;
      }
    }
  }
  if (vacuum) rep.i4_nonzero = i4_ok;

  rep.killing_dim = kill < options.killing_threshold ? 3 : 2;
  rep.ranking = functional_independence(def, samples, options);
  for (const auto& ps : rep.ranking) {
    if (ps.independent) {
      rep.pair = ps;
      break;
    }
  }
  rep.independence_ok = rep.pair.has_value();
  if (rep.killing_dim == 3) {
    rep.independence_ok = false;
    rep.pair.reset();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "h_kl are constant multiples of each other: a third Killing vector exists "
                  "(max |Q_chi| = %.3g, max |Q_gamma| = %.3g)",
                  rep.max_abs_q_chi, rep.max_abs_q_gamma);
    rep.notes.push_back(buf);
  }
  if (!rep.independence_ok && rep.killing_dim == 2) {
    rep.notes.push_back("no functionally independent pair among the basic invariants");
  }
  return rep;
}

}  // namespace otk
