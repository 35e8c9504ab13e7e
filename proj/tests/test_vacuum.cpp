#include <doctest.h>

#include <cmath>

#include "otk/catalog.hpp"
#include "otk/error.hpp"
#include "otk/identities.hpp"
#include "otk/vacuum.hpp"
#include "support/build.hpp"

using namespace otk;

namespace {

std::vector<CatalogEntry> vacuum_entries() {
  std::vector<CatalogEntry> out;
  for (auto& e : catalog()) {
    if (e.facts.vacuum && e.facts.independent_pair) out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_SUITE("vacuum") {
  TEST_CASE("quantities satisfy C_rho = 4 (C_chi - C_gamma)") {
    const auto q = vacuum_quantities(1.5, -0.3, 0.2, -0.7, -1, 0.1);
    CHECK(q.C_rho == doctest::Approx(4 * (q.C_chi - q.C_gamma)));
    CHECK(q.eps == 1);
    CHECK(vacuum_quantities(1.5, -0.3, 0.2, -0.7, 1, 0.1).eps == -1);
  }

  TEST_CASE("the four relations hold on elliptic and hyperbolic Kerr-NUT-(A)dS") {
    int hyperbolic = 0, elliptic = 0;
    for (const auto& e : vacuum_entries()) {
      for (const auto& p : random_points(e.box(), 10, 73)) {
        const auto r = compute_record(e.metric, p);
        (r.g_signature < 0 ? hyperbolic : elliptic)++;
        const auto v = vacuum_relations(r, e.facts.lambda);
        for (int i = 0; i < 4; ++i) CHECK(v.residual[i] <= 1e-6);
        CHECK(v.relation1_squared <= 1e-6);
        CHECK(v.q.eps == (r.g_signature < 0 ? 1 : -1));
      }
    }
    CHECK(hyperbolic > 0);
    CHECK(elliptic > 0);
  }

  TEST_CASE("relation 4 as printed and relation 2 with the NUT parameter both fail") {
    const auto e = kerr_nut_desitter(1.3, 0.4, 2, 0.1);
    const auto r = compute_record(e.metric, {1.1, 0.7});
    const auto v = vacuum_relations(r, 0.1, 0.4);
    CHECK(v.relation4_opposite_eps_terms > 1e-4);
    REQUIRE(v.relation2_with_nut.has_value());
    CHECK(*v.relation2_with_nut > 1e-3);
  }

  TEST_CASE("first-order consequences of the Einstein equations") {
    for (const auto& e : vacuum_entries()) {
      const double lam = e.facts.lambda;
      for (const auto& p : random_points(e.box(), 10, 79)) {
        const auto r = compute_record(e.metric, p);
        CHECK(std::fabs(r.C_nu + 0.5 * r.value(Invariant::C_rho) + 4 * lam) <= 1e-8);
        CHECK(std::fabs(r.R2 + 0.5 * r.value(Invariant::C_chi)) <= 1e-8);
        CHECK(std::fabs(r.Rfull - 4 * lam) <= 1e-8);
      }
    }
  }

  TEST_CASE("a non-vacuum perturbation breaks at least one relation") {
    auto def = kerr_nut_desitter(1.3, 0.4, 2, 0.1).metric;
    def.h11 = def.h11 * parse("1 + 0.01*t2");
    const auto r = compute_record(def, {1.1, 0.9});
    const auto v = vacuum_relations(r, 0.1);
    CHECK(*std::max_element(v.residual.begin(), v.residual.end()) > 1e-3);
  }

  TEST_CASE("second-order invariants are recovered from first-order data") {
    for (const auto& e : vacuum_entries()) {
      for (const auto& p : random_points(e.box(), 8, 83)) {
        const auto r = compute_record(e.metric, p);
        const auto v = vacuum_relations(r, e.facts.lambda);
        const int sign = v.I1 < 0 ? -1 : 1;
        for (Invariant q : {Invariant::C_chi, Invariant::Q_chi, Invariant::Q_gamma}) {
          const auto rec = recover_second_order(r, e.facts.lambda, q, sign);
          const double scale = std::fabs(r.along_x(q)) + std::fabs(r.along_y(q));
          CHECK(rec.Xq == doctest::Approx(r.along_x(q)).epsilon(1e-5).scale(scale));
          CHECK(rec.Yq == doctest::Approx(r.along_y(q)).epsilon(1e-5).scale(scale));
        }
        const auto rec = recover_second_order(r, e.facts.lambda, Invariant::Q_chi, sign);
        CHECK(rec.YC_rho == doctest::Approx(r.along_y(Invariant::C_rho)).epsilon(1e-6));
        CHECK(rec.XC_rho == doctest::Approx(v.rhs[1]).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("singular systems are rejected") {
    const auto e = kerr_nut_desitter(1.3, 0.4, 2, 0.1);
    const auto r = compute_record(e.metric, {1.1, 0.7});
    CHECK_THROWS_AS(recover_second_order(r, 0.1, Invariant::C_rho, 1), std::invalid_argument);
    InvariantRecord z = r;
    // C_gamma = 0 and Q_gamma = 0 make I4 vanish.
    z.basic = {1.0, 0.25, 0.3, 0.0};
    CHECK_THROWS_AS(recover_second_order(z, 0.1, Invariant::Q_chi, 1), NotGeneric);
    CHECK_THROWS_AS(vacuum_relations(z, 0.1), NotGeneric);
    InvariantRecord nf = r;
    nf.frame_defined = false;
    CHECK_THROWS_AS(vacuum_relations(nf, 0.1), NotGeneric);
  }

  TEST_CASE("E1 is a vacuum with Lambda = 0") {
    const auto e1 = minkowski_cyl();
    for (const auto& p : random_points(e1.box(), 5, 89)) CHECK(vacuum_residual(e1.metric, p, 0.0) <= 1e-12);
  }
}
