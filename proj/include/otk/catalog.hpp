#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otk/metric.hpp"

namespace otk {

/// Properties a catalog metric is known to have; the test suite checks each.
struct KnownFacts {
  bool vacuum = false;
  double lambda = 0.0;
  bool flat = false;
  bool lorentzian = true;
  int killing_dimension = 2;
  bool independent_pair = true;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  MetricDefinition metric;  ///< metric.domain holds the generic box
  KnownFacts facts;

  const Box& box() const { return *metric.domain; }
};

/// Kerr-NUT-(anti-)de Sitter with
///   P = (A^2 - t1^2)(1 + Lambda t1^2/3) + 2 L t1,
///   Q = (A^2 + t2^2)(1 - Lambda t2^2/3) - 2 M t2,
///   g = diag(r^2/P, r^2/Q), r^2 = t1^2 + t2^2,
///   h11 = (P - Q)/r^2, h12 = (P t2^2 + Q t1^2)/r^2, h22 = (P t2^4 - Q t1^4)/r^2.
CatalogEntry kerr_nut_desitter(double M, double L, double A, double Lambda,
                               const Box& box = {0.6, 1.4, 0.6, 1.4});

/// Flat space as g = dt1^2 + dt2^2, h = -du1^2 + t1^2 du2^2.
CatalogEntry minkowski_cyl();

/// h = e^t1 diag(1, 2), g = dt1^2 + dt2^2: Killing block with a third Killing vector.
CatalogEntry degenerate_hc();

/// All presets, in a fixed order.
std::vector<CatalogEntry> catalog();

std::optional<CatalogEntry> find_entry(std::string_view name);

}  // namespace otk
