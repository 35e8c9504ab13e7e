#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "otk/invariants.hpp"

namespace otk {

/// n1 x n2 lattice over the box including its edges, row-major (t1 varies fastest).
std::vector<Vec2<double>> grid_points(const Box& box, int n1, int n2);

struct PairScore {
  Invariant p = Invariant::C_rho;
  Invariant q = Invariant::C_chi;
  double median_score = 0.0;        ///< median of |det J| / (|grad p| |grad q| + eta)
  double fraction_independent = 0;  ///< share of samples with score above threshold
  bool independent = false;
};

struct GenericityOptions {
  double independence_threshold = 1e-6;
  double minimum_fraction = 0.9;
  double killing_threshold = 1e-9;
  double null_tolerance = kNullTolerance;
};

/// All six pairs of basic invariants, strongest first.
std::vector<PairScore> functional_independence(const MetricDefinition& def,
                                               const std::vector<Vec2<double>>& samples,
                                               const GenericityOptions& options = {});

/// |det J| / (|grad p| |grad q| + eta) of one pair at one point.
double pair_score(const BasicInvariants& inv, Invariant p, Invariant q);

/// D_1 ... D_6 of the Killing equations, from h jets of order >= 1.
std::array<double, 6> killing_minors(const JetForm& h);

/// max_j |D_j| / (|det h| max|h_kl,i| max|h_kl|); 0 when the scale vanishes.
double scaled_killing_minor(const JetForm& h);

/// 3 when every scaled minor vanishes on the samples, else 2.
int killing_dimension(const MetricDefinition& def, const std::vector<Vec2<double>>& samples,
                      double threshold = 1e-9);

struct GenericityReport {
  bool det_g_ok = true;
  bool det_h_ok = true;
  bool c_rho_nonzero = true;
  bool independence_ok = false;
  std::optional<PairScore> pair;  ///< best independent pair
  std::vector<PairScore> ranking;
  int killing_dim = 2;
  std::optional<bool> i4_nonzero;  ///< only for vacuum checks
  double max_abs_q_chi = 0.0;
  double max_abs_q_gamma = 0.0;
  int samples = 0;
  int failed_samples = 0;
  std::vector<std::string> notes;

  bool passes() const {
    return det_g_ok && det_h_ok && c_rho_nonzero && independence_ok && killing_dim == 2 &&
           i4_nonzero.value_or(true);
  }
};

GenericityReport genericity_report(const MetricDefinition& def,
                                   const std::vector<Vec2<double>>& samples, bool vacuum,
                                   const GenericityOptions& options = {});

}  // namespace otk
