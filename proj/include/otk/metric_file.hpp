#pragma once

#include <string>
#include <string_view>

#include "otk/catalog.hpp"
#include "otk/error.hpp"
#include "otk/metric.hpp"

namespace otk {

/// Problem in a metric definition file; line is 1-based, 0 when not tied to a line.
class MetricFileError : public Error {
 public:
  MetricFileError(const std::string& message, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Reads the key-value metric format:
///
///   name = kerr-nut
///   [coordinates]   names = t1, t2
///   [parameters]    M = 1
///   [definitions]   P = 1 - t1^2       (inlined into later expressions)
///   [metric]        g11 = ... h22 = ...  (missing g12/h12 default to 0)
///   [domain]        t1 = [0.6, 1.4]
///   [pullback]      t1 = ...  t2 = ...
///   [killing-basis] a = [1, 0, 0, 1]
///   [facts]         vacuum = true  lambda = 0
///
/// '#' starts a comment. Every parameter used must be bound.
MetricDefinition parse_metric_file(std::string_view text);
MetricDefinition load_metric_file(const std::string& path);

/// Text that parse_metric_file reads back to an identical definition.
std::string write_metric_file(const MetricDefinition& def);

/// A catalog preset name or a path to a metric file.
MetricDefinition load_metric(const std::string& name_or_path);

}  // namespace otk
