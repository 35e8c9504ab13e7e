#include "otk/catalog.hpp"

namespace otk {
namespace {

Expr expand(std::string_view source, const Expr& p, const Expr& q) {
  return substitute_parameter(substitute_parameter(parse(source), "P", p), "Q", q);
}

}  // namespace

CatalogEntry kerr_nut_desitter(double M, double L, double A, double Lambda, const Box& box) {
  const Expr p = parse("(A^2 - t1^2)*(1 + Lambda*t1^2/3) + 2*L*t1");
  const Expr q = parse("(A^2 + t2^2)*(1 - Lambda*t2^2/3) - 2*M*t2");

  CatalogEntry e;
  e.name = "kerr-nut-ds";
  e.description = "Kerr-NUT-(anti-)de Sitter; M mass, L NUT parameter, A rotation, Lambda "
                  "cosmological constant";
  MetricDefinition& m = e.metric;
  m.name = e.name;
  m.parameters = {{"M", M}, {"L", L}, {"A", A}, {"Lambda", Lambda}};
  m.g11 = expand("(t1^2 + t2^2)/P", p, q);
  m.g12 = Expr::number(0.0);
  m.g22 = expand("(t1^2 + t2^2)/Q", p, q);
  m.h11 = expand("(P - Q)/(t1^2 + t2^2)", p, q);
  m.h12 = expand("(P*t2^2 + Q*t1^2)/(t1^2 + t2^2)", p, q);
  m.h22 = expand("(P*t2^4 - Q*t1^4)/(t1^2 + t2^2)", p, q);
  m.domain = box;
  m.vacuum = true;
  m.lambda = Lambda;
  e.facts.vacuum = true;
  e.facts.lambda = Lambda;
  return e;
}

CatalogEntry minkowski_cyl() {
  CatalogEntry e;
  e.name = "minkowski-cyl";
  e.description = "flat space with h = diag(-1, t1^2); C_rho = 4/t1^2, no independent pair";
  MetricDefinition& m = e.metric;
  m.name = e.name;
  m.g11 = Expr::number(1.0);
  m.g22 = Expr::number(1.0);
  m.h11 = Expr::number(-1.0);
  m.h22 = parse("t1^2");
  m.domain = Box{1.5, 3.0, 0.0, 6.0};
  m.vacuum = true;
  e.facts.vacuum = true;
  e.facts.flat = true;
  e.facts.independent_pair = false;
  return e;
}

CatalogEntry degenerate_hc() {
  CatalogEntry e;
  e.name = "degenerate-hc";
  e.description = "h = e^t1 diag(1, 2): coefficients of h proportional, three Killing vectors";
  MetricDefinition& m = e.metric;
  m.name = e.name;
  m.g11 = Expr::number(1.0);
  m.g22 = Expr::number(1.0);
  m.h11 = parse("exp(t1)");
  m.h22 = parse("2*exp(t1)");
  m.domain = Box{0.0, 1.0, 0.0, 1.0};
  e.facts.lorentzian = false;
  e.facts.killing_dimension = 3;
  e.facts.independent_pair = false;
  return e;
}

std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  CatalogEntry kn = kerr_nut_desitter(1.0, 0.0, 2.0, 0.0);
  kn.name = kn.metric.name = "kerr-nut";
  kn.description = "Kerr-NUT (Lambda = 0), M = 1, L = 0, A = 2";
  out.push_back(kn);
  out.push_back(kerr_nut_desitter(1.3, 0.4, 2.0, 0.1));
  CatalogEntry hyp = kerr_nut_desitter(1.0, -0.1, 0.5, -0.1, Box{0.6, 1.4, 2.0, 3.0});
  hyp.name = hyp.metric.name = "kerr-nut-hyperbolic";
  hyp.description = "Kerr-NUT-anti-de Sitter on a slice where det g < 0";
  out.push_back(hyp);
  out.push_back(minkowski_cyl());
  out.push_back(degenerate_hc());
  return out;
}

std::optional<CatalogEntry> find_entry(std::string_view name) {
  for (auto& e : catalog()) {
    if (e.name == name) return e;
  }
  return std::nullopt;
}

}  // namespace otk
