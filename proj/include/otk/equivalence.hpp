#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "otk/genericity.hpp"
#include "otk/invariants.hpp"

namespace otk {

/// Two basic invariants used as coordinates on the orbit surface.
struct Chart {
  Invariant p = Invariant::Q_gamma;
  Invariant q = Invariant::C_chi;

  /// The two basic invariants that are not p or q, in enum order.
  std::array<Invariant, 2> others() const;
};

struct SignatureTolerances {
  double independence = 1e-6;  ///< local Jacobian score of the chart
  double separation = 1e-4;    ///< minimal sample spacing relative to the chart diameter
  int min_samples = 200;
  double compare = 1e-5;       ///< relative tolerance when comparing signatures
};

struct SignatureSample {
  Vec2<double> source{};          ///< (t1, t2) where the sample was taken
  std::array<double, 4> values{};  ///< basic invariants, indexed by Invariant
  std::array<double, 4> along_x{};
  std::array<double, 4> along_y{};
};

/// Invariants of one metric tabulated over a chart of two independent ones.
struct Signature {
  int format = 1;
  std::string metric_name;
  std::string fingerprint;
  Chart chart;
  Box box;
  int grid = 24;
  SignatureTolerances tolerances;
  std::vector<SignatureSample> samples;

  /// Largest |value| of each basic invariant and of its X and Y derivatives
  /// over the samples; the comparison is relative to these.
  std::array<double, 4> value_scale() const;
  std::array<double, 4> derivative_scale() const;
};

struct SignatureOptions {
  std::optional<Chart> chart;  ///< chosen from the independence ranking when empty
  int grid = 24;
  SignatureTolerances tolerances;
  int threads = 1;
};

/// Samples a grid x grid lattice of the box and keeps points where the chart
/// is locally independent and C_rho is not null. Throws NoIndependentPair or
/// DomainTooSmall.
Signature build_signature(const MetricDefinition& def, const Box& box,
                          const SignatureOptions& options = {});

struct LocateOptions {
  double tolerance = 1e-10;
  int max_iterations = 25;
  /// Magnitudes of p and q the residual is measured against.
  Vec2<double> scale{1.0, 1.0};
};

/// Newton iteration for t with (p(t), q(t)) = target, starting at `seed`.
/// Throws NoConvergence or LeftDomain.
Vec2<double> locate(const MetricDefinition& def, const Chart& chart, Vec2<double> target,
                    Vec2<double> seed, const Box& domain, const LocateOptions& options = {});

enum class VerdictKind { Equivalent, Inequivalent, Inconclusive };

const char* verdict_name(VerdictKind kind);

/// A chart value where the two metrics disagree.
struct Witness {
  Vec2<double> pq{};
  std::string quantity;  ///< e.g. "C_rho" or "YQ_chi"
  double value_a = 0.0;
  double value_b = 0.0;
  double mismatch = 0.0;  ///< |value_a - value_b| relative to the quantity's scale
  Vec2<double> source_a{};
  Vec2<double> source_b{};
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string reason;
  std::optional<Witness> witness;
  int samples = 0;
  int locatable = 0;
  int matched = 0;
  int y_sign = 1;  ///< global orientation of Y used for the comparison
  double max_mismatch = 0.0;
};

struct CompareOptions {
  int prescan = 24;
  int seeds = 12;
  int threads = 1;
  double min_locatable = 0.8;
  double min_matched = 0.99;
  /// A mismatch counts as confirmed when it exceeds this multiple of the
  /// comparison tolerance after re-locating at tighter tolerance.
  double confirm_factor = 100.0;
};

Verdict compare(const Signature& a, const MetricDefinition& b, const Box& box_b,
                const CompareOptions& options = {});

/// Relative mismatch of `quantity` between a and b at chart value pq, found by
/// locating pq in both metrics from the given seeds. Used to re-check a witness.
double witness_mismatch(const Signature& a, const MetricDefinition& def_a,
                        const MetricDefinition& def_b, const Box& box_b,
                        const Witness& witness, int y_sign);

}  // namespace otk
