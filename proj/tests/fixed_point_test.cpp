#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "irg/irg.hpp"
#include "oracles.hpp"

using namespace irg;

namespace {

Kernel scalar_kernel(double c) { return constant_kernel(TypeSpace({0}, {1.0}), c); }

}  // namespace

TEST_CASE("progeny_gf on the scalar kernel") {
  Kernel k = scalar_kernel(0.5);

  SECTION("z = 1 fixes the constant function 1") {
    GFOutcome out = progeny_gf(k, 1.0);
    REQUIRE(out.status == GFStatus::Converged);
    CHECK(out.h[0] == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("z = 1.1 matches the frozen fixed point") {
    GFOutcome out = progeny_gf(k, 1.1);
    REQUIRE(out.status == GFStatus::Converged);
    CHECK(out.h[0] == Catch::Approx(oracle::frozen::kH05Z11).margin(1e-9));
    CHECK(out.residual <= 1e-12);
  }

  SECTION("z past the radius diverges") {
    GFOutcome out = progeny_gf(k, 1.3);
    CHECK(out.status == GFStatus::Diverged);
  }

  SECTION("z < 1 refused") {
    CHECK_THROWS_AS(progeny_gf(k, 0.99), ConfigError);
  }
}

TEST_CASE("progeny_gf properties over random subcritical kernels") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + rng() % 4;
    const double norm = 0.3 + 0.5 * static_cast<double>(trial) / 50.0;
    const auto data = oracle::random_kernel(rng, dim, norm);
    Kernel k = explicit_kernel(TypeSpace(data.labels, data.weights), data.matrix);

    double prev_h = 0.0;
    for (double z : {1.0, 1.01, 1.02}) {
      GFOutcome out = progeny_gf(k, z);
      REQUIRE(out.status == GFStatus::Converged);
      CHECK(out.residual <= 1e-12);
      double max_h = 0.0;
      for (double h : out.h) {
        CHECK(h >= z - 1e-12);  // h_z >= z since X >= 1
        max_h = std::max(max_h, h);
      }
      CHECK(max_h >= prev_h - 1e-12);  // nondecreasing in z
      prev_h = max_h;
    }
  }
}

TEST_CASE("r_kappa matches the scalar closed form") {
  SECTION("c = 0.5 within 1e-6") {
    RKappaEstimate est = r_kappa(scalar_kernel(0.5));
    CHECK(est.mid() == Catch::Approx(oracle::frozen::kR05).margin(1e-6));
    CHECK(est.lo <= oracle::frozen::kR05 + 1e-7);
    CHECK(est.hi >= oracle::frozen::kR05 - 1e-7);
  }

  SECTION("closed form itself against the bisection oracle") {
    CHECK(scalar_r_closed_form(0.5) == Catch::Approx(oracle::scalar_r_bisect(0.5)).margin(1e-6));
    CHECK(scalar_r_closed_form(0.7) == Catch::Approx(oracle::scalar_r_bisect(0.7)).margin(1e-6));
    CHECK(scalar_r_closed_form(2.0) == 1.0);
  }

  SECTION("critical collapse: nonincreasing toward 1") {
    RKappaEstimate e09 = r_kappa(scalar_kernel(0.9));
    RKappaEstimate e095 = r_kappa(scalar_kernel(0.95));
    RKappaEstimate e1 = r_kappa(scalar_kernel(1.0));
    CHECK(e09.mid() == Catch::Approx(oracle::frozen::kR09).margin(1e-4));
    CHECK(e095.mid() == Catch::Approx(oracle::frozen::kR095).margin(1e-4));
    CHECK(e09.mid() >= e095.mid());
    CHECK(e095.mid() >= e1.mid() - 1e-7);
    CHECK(e1.lo <= 1.0 + 1e-12);
    CHECK(e1.hi >= 1.0);
  }

  SECTION("supercritical radius is the trivial bracket at 1") {
    RKappaEstimate est = r_kappa(scalar_kernel(2.0));
    CHECK(est.lo == 1.0);
    CHECK(est.hi <= 1.0 + 1e-3);
  }

  SECTION("multi-type radius against the scalar oracle via an equivalent kernel") {
    // two identical types with a constant kernel reduce to the scalar case
    TypeSpace sp({0, 1}, {0.5, 0.5});
    RKappaEstimate est = r_kappa(constant_kernel(sp, 0.5));
    CHECK(est.mid() == Catch::Approx(oracle::frozen::kR05).margin(1e-6));
  }
}

TEST_CASE("survival probability") {
  SECTION("c = 2 matches the bisected root to 1e-8") {
    SurvivalResult res = survival_prob(scalar_kernel(2.0));
    REQUIRE(res.converged);
    CHECK(res.rho[0] == Catch::Approx(oracle::frozen::kRho2).margin(1e-8));
    CHECK(res.rho_aggregate == Catch::Approx(oracle::scalar_survival_root(2.0)).margin(1e-8));
  }

  SECTION("subcritical kernels die out") {
    SurvivalResult res = survival_prob(scalar_kernel(0.5));
    REQUIRE(res.converged);
    CHECK(res.rho[0] == Catch::Approx(0.0).margin(1e-5));
  }

  SECTION("two-type survival solves the vector fixed point") {
    TypeSpace sp({0, 1}, {0.5, 0.5});
    Kernel k = explicit_kernel(sp, {3.0, 1.0, 1.0, 2.0});
    SurvivalResult res = survival_prob(k);
    REQUIRE(res.converged);
    const std::vector<double> t = apply_T(k, res.rho);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(res.rho[i] == Catch::Approx(1.0 - std::exp(-t[i])).margin(1e-10));
      CHECK(res.rho[i] > 0.0);
    }
  }
}

TEST_CASE("negative solutions of the survival equation") {
  SECTION("scalar c = 0.5 matches 1 - g*") {
    auto neg = negative_solution(scalar_kernel(0.5));
    REQUIRE(neg.has_value());
    CHECK(neg->f[0] == Catch::Approx(1.0 - oracle::frozen::kGStar05).margin(1e-6));
    CHECK(neg->f[0] == Catch::Approx(1.0 - oracle::scalar_upper_root(0.5)).margin(1e-6));
    CHECK(neg->residual <= 1e-10);
  }

  SECTION("supercritical scalar kernel has none (radius is 1)") {
    CHECK_FALSE(negative_solution(scalar_kernel(2.0)).has_value());
  }

  SECTION("any returned solution is strictly negative with a tiny residual") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      const auto data = oracle::random_kernel(rng, 1 + rng() % 4, 0.6);
      Kernel k = explicit_kernel(TypeSpace(data.labels, data.weights), data.matrix);
      auto neg = negative_solution(k);
      if (!neg) continue;
      CHECK(neg->residual <= 1e-10);
      for (double v : neg->f) CHECK(v < 0.0);
    }
  }
}

namespace {

RKappaEstimate tilt_sandwich_check(const Kernel& k, double q, double c,
                                   const RKappaEstimate& base) {
  RKappaEstimate t = r_transformed(k, TiltTransform{q, c});
  CHECK(t.lo <= base.hi + 1e-7);  // r(q,c) <= r
  return t;
}

}  // namespace

TEST_CASE("transformed radii") {
  TypeSpace sp({0, 1, 2}, {0.5, 0.3, 0.2});
  Kernel k = explicit_kernel(sp, {0.2, 0.3, 0.4, 0.3, 0.5, 0.6, 0.4, 0.6, 0.8});
  const RKappaEstimate base = r_kappa(k);

  SECTION("tilt lower-bounds the radius when c m_q >= 1") {
    for (double q : {0.05, 0.2}) {
      const double c = 1.0 / tilt_normalizer(k, q);
      RKappaEstimate t = tilt_sandwich_check(k, q, c, base);
      (void)t;
    }
  }

  SECTION("tilt with c m_q < 1 refused") {
    CHECK_THROWS_AS(r_transformed(k, TiltTransform{0.2, 0.5}), PreconditionError);
  }

  SECTION("truncation upper-bounds the radius, nonincreasing in D") {
    double prev = std::numeric_limits<double>::infinity();
    for (int D : {0, 1, 2}) {
      const double md = truncation_mass(sp, D);
      RKappaEstimate t = r_transformed(k, TruncateTransform{D, md});
      CHECK(t.lo >= base.lo - 1e-7);  // r-hat(D) >= r
      CHECK(t.mid() <= prev + 1e-7);
      prev = t.mid();
    }
    // D at the max label reproduces the base kernel exactly
    RKappaEstimate full = r_transformed(k, TruncateTransform{2, 1.0});
    CHECK(full.mid() == Catch::Approx(base.mid()).margin(1e-7));
  }
}
