#pragma once

#include "otk/expr.hpp"
#include "otk/metric.hpp"
#include "otk/surface.hpp"

namespace testing_support {

inline otk::JetForm form_of(const char* a11, const char* a12, const char* a22,
                            otk::Vec2<double> point, int order,
                            const otk::ParamBindings& params = {}) {
  return {otk::eval_jet(otk::parse(a11), point, params, order),
          otk::eval_jet(otk::parse(a12), point, params, order),
          otk::eval_jet(otk::parse(a22), point, params, order)};
}

inline otk::MetricDefinition metric_of(const char* g11, const char* g12, const char* g22,
                                       const char* h11, const char* h12, const char* h22,
                                       otk::ParamBindings params = {}) {
  otk::MetricDefinition d;
  d.g11 = otk::parse(g11);
  d.g12 = otk::parse(g12);
  d.g22 = otk::parse(g22);
  d.h11 = otk::parse(h11);
  d.h12 = otk::parse(h12);
  d.h22 = otk::parse(h22);
  d.parameters = std::move(params);
  return d;
}

}  // namespace testing_support
