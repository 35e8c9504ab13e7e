#include <doctest.h>

#include <cmath>

#include "otk/catalog.hpp"
#include "otk/curvature.hpp"
#include "otk/identities.hpp"
#include "otk/vacuum.hpp"
#include "support/build.hpp"

using namespace otk;

TEST_SUITE("curvature") {
  TEST_CASE("E1 is flat") {
    const auto e1 = minkowski_cyl();
    for (const auto& p : random_points(e1.box(), 5, 53)) {
      const auto c = full_curvature(e1.metric, p);
      CHECK(std::fabs(c.scalar) <= 1e-12);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          CHECK(std::fabs(c.ricci[a][b]) <= 1e-12);
          for (int d = 0; d < 4; ++d) {
            for (int e = 0; e < 4; ++e) CHECK(std::fabs(c.riemann[a][b][d][e]) <= 1e-12);
          }
        }
      }
      CHECK(std::fabs(c.C1234()) <= 1e-12);
      CHECK(std::fabs(c.C1212()) <= 1e-12);
      CHECK(std::fabs(c.C3434()) <= 1e-12);
    }
  }

  TEST_CASE("Kerr-NUT-(A)dS is an Einstein space") {
    for (const auto& e : catalog()) {
      if (!e.facts.vacuum) continue;
      for (const auto& p : random_points(e.box(), 10, 59)) {
        const auto c = full_curvature(e.metric, p);
        CHECK(einstein_residual(c, e.facts.lambda) <= 1e-7);
        CHECK(c.scalar == doctest::Approx(4 * e.facts.lambda).scale(1.0).epsilon(1e-8));
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            CHECK(c.ricci[a][b] == doctest::Approx(e.facts.lambda * c.metric[a][b]).scale(1.0).epsilon(1e-8));
          }
        }
      }
    }
  }

  TEST_CASE("a perturbed coefficient is detected as non-vacuum") {
    auto def = kerr_nut_desitter(1, 0, 2, 0).metric;
    def.h11 = def.h11 * parse("1 + 0.01*t2");
    CHECK(vacuum_residual(def, {1.0, 0.9}, 0.0) > 1e-3);
  }

  TEST_CASE("Riemann symmetries") {
    for (const auto& e : catalog()) {
      for (const auto& p : random_points(e.box(), 5, 61)) {
        CHECK(riemann_symmetry_residual(full_curvature(e.metric, p)) <= 1e-10);
      }
    }
  }

  TEST_CASE("surface-data formulas agree with the four-dimensional oracle") {
    for (const auto& e : catalog()) {
      for (const auto& p : random_points(e.box(), 10, 67)) {
        const auto r = ricci_restriction_identity(metric_jets(e.metric, p, 2));
        CHECK(r.mixed_max <= 1e-10);
        CHECK(r.scalar_formula == doctest::Approx(r.scalar_oracle).scale(1.0).epsilon(1e-8));
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            CHECK(r.surface_formula(a, b) == doctest::Approx(r.surface_oracle(a, b)).scale(1.0).epsilon(1e-7));
            CHECK(r.killing_formula(a, b) == doctest::Approx(r.killing_oracle(a, b)).scale(1.0).epsilon(1e-7));
          }
        }
      }
    }
  }

  TEST_CASE("Weyl component displays") {
    for (const auto& e : catalog()) {
      for (const auto& p : random_points(e.box(), 10, 71)) {
        const auto w = weyl_comparison(metric_jets(e.metric, p, 2));
        if (!std::isnan(w.c1234_formula)) {
          // The display is a square root: it fixes |C1234|.
          CHECK(w.c1234_formula == doctest::Approx(std::fabs(w.c1234_oracle)).scale(1.0).epsilon(1e-8));
        }
        CHECK(w.c1212_formula == doctest::Approx(w.c1212_oracle).scale(1.0).epsilon(1e-8));
        CHECK(w.c3434_formula == doctest::Approx(w.c3434_oracle).scale(1.0).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("C1234 changes sign across the line where Q_gamma vanishes") {
    const auto def = kerr_nut_desitter(1, 0, 2, 0).metric;
    // alpha = t1 (3 t2^2 - t1^2) changes sign at t1 = sqrt(3) t2.
    const double a = full_curvature(def, {1.0, 0.7}).C1234();
    const double b = full_curvature(def, {1.3, 0.6}).C1234();
    CHECK(a * b < 0);
  }
}
