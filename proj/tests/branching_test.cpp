#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "irg/irg.hpp"
#include "oracles.hpp"

using namespace irg;

namespace {

Kernel scalar_kernel(double c) { return constant_kernel(TypeSpace({0}, {1.0}), c); }

}  // namespace

TEST_CASE("sample_progeny basics") {
  Kernel k = scalar_kernel(0.5);

  SECTION("deterministic under the same stream") {
    Rng a = make_stream(7, 3), b = make_stream(7, 3);
    ProgenyOutcome oa = sample_progeny(k, 0, 1000, a);
    ProgenyOutcome ob = sample_progeny(k, 0, 1000, b);
    CHECK(oa.size == ob.size);
    CHECK(oa.generations == ob.generations);
  }

  SECTION("size at least 1, generations 0 only for a childless root") {
    Rng rng = make_stream(1, 0);
    for (int i = 0; i < 200; ++i) {
      ProgenyOutcome o = sample_progeny(k, 0, 1000, rng);
      CHECK(o.size >= 1);
      if (o.generations == 0) CHECK(o.size == 1);
    }
  }

  SECTION("cap marks censorship") {
    Kernel big = scalar_kernel(3.0);
    int censored = 0;
    Rng rng = make_stream(2, 0);
    for (int i = 0; i < 50; ++i) {
      ProgenyOutcome o = sample_progeny(big, 0, 100, rng);
      if (o.censored) {
        CHECK(o.size == 100);
        ++censored;
      }
    }
    CHECK(censored > 0);  // rho ~ 0.94 for c = 3
    CHECK_THROWS_AS(sample_progeny(k, 0, 0, rng), ConfigError);
  }

  SECTION("unknown root label refused") {
    Rng rng = make_stream(3, 0);
    CHECK_THROWS_AS(sample_progeny(k, 5, 100, rng), ConfigError);
  }
}

TEST_CASE("sample_batch is reproducible and indexed by sample") {
  Kernel k = scalar_kernel(0.8);
  SampleBatch a = sample_batch(k, 0, 500, 100000, 11);
  SampleBatch b = sample_batch(k, 0, 500, 100000, 11);
  REQUIRE(a.outcomes.size() == 500);
  for (std::size_t i = 0; i < 500; ++i) CHECK(a.outcomes[i].size == b.outcomes[i].size);
  SampleBatch c = sample_batch(k, 0, 500, 100000, 12);
  bool any_diff = false;
  for (std::size_t i = 0; i < 500; ++i) any_diff = any_diff || a.outcomes[i].size != c.outcomes[i].size;
  CHECK(any_diff);
}

TEST_CASE("mean progeny") {
  SECTION("scalar closed form 1/(1-c)") {
    CHECK(mean_progeny(scalar_kernel(0.5))[0] == Catch::Approx(2.0));
    CHECK(mean_progeny(scalar_kernel(0.8))[0] == Catch::Approx(5.0));
  }

  SECTION("refused at or past criticality") {
    CHECK_THROWS_AS(mean_progeny(scalar_kernel(1.0)), PreconditionError);
    CHECK_THROWS_AS(mean_progeny(scalar_kernel(1.5)), PreconditionError);
  }

  SECTION("empirical mean within 4 standard errors") {
    Kernel k = scalar_kernel(0.5);
    SampleBatch b = sample_batch(k, 0, 20000, 1000000, 21);
    double mean = 0.0, sq = 0.0;
    for (const auto& o : b.outcomes) {
      mean += static_cast<double>(o.size);
      sq += static_cast<double>(o.size) * static_cast<double>(o.size);
    }
    const double n = 20000.0;
    mean /= n;
    const double se = std::sqrt((sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 2.0) <= 4.0 * se);
  }
}

TEST_CASE("empirical generating function") {
  Kernel k = scalar_kernel(0.5);
  SampleBatch b = sample_batch(k, 0, 50000, 1000000, 31);

  SECTION("agrees with the fixed point at z on the grid") {
    for (double z : {1.02, 1.05, 1.1}) {
      GFOutcome gf = progeny_gf(k, z);
      REQUIRE(gf.status == GFStatus::Converged);
      GFEstimate est = empirical_gf(b, z);
      CHECK(std::abs(est.estimate - gf.h[0]) <= 4.0 * est.std_error);
      CHECK(est.ci_lo <= est.estimate);
      CHECK(est.ci_hi >= est.estimate);
      CHECK_FALSE(est.lower_bound);
    }
  }

  SECTION("z below 1 refused") {
    CHECK_THROWS_AS(empirical_gf(b, 0.9), ConfigError);
  }

  SECTION("censored batches are flagged as lower bounds") {
    SampleBatch sup = sample_batch(scalar_kernel(2.0), 0, 200, 1000, 32);
    GFEstimate est = empirical_gf(sup, 1.0);
    CHECK(est.lower_bound);
    CHECK(est.censored_count > 0);
  }
}

TEST_CASE("tail fit") {
  SECTION("scalar c = 0.5 within 15% at 1e5 samples") {
    Kernel k = scalar_kernel(0.5);
    SampleBatch b = sample_batch(k, 0, 100000, 10000000, 41);
    TailFit fit = tail_fit(b);
    CHECK(std::abs(fit.rate - oracle::frozen::kLogR05) <= 0.15 * oracle::frozen::kLogR05);
    CHECK(fit.k_min < fit.k_max);
    CHECK(fit.exceedances_at_kmin >= kTailMinExceedances);
    CHECK(fit.censored_count == 0);
    CHECK(fit.std_error > 0.0);
  }

  SECTION("explicit window") {
    Kernel k = scalar_kernel(0.5);
    SampleBatch b = sample_batch(k, 0, 100000, 10000000, 41);
    TailFit fit = tail_fit(b, std::make_pair<std::uint64_t, std::uint64_t>(8, 60));
    CHECK(fit.k_min == 8);
    CHECK(std::abs(fit.rate - oracle::frozen::kLogR05) <= 0.2 * oracle::frozen::kLogR05);
  }

  SECTION("heavily censored batch refused") {
    SampleBatch sup = sample_batch(scalar_kernel(2.0), 0, 2000, 10000, 42);
    CHECK_THROWS_AS(tail_fit(sup), PreconditionError);
  }

  SECTION("tiny batch refused") {
    SampleBatch small = sample_batch(scalar_kernel(0.5), 0, 50, 1000, 43);
    CHECK_THROWS_AS(tail_fit(small), PreconditionError);
  }
}

TEST_CASE("stochastic dominance checks") {
  Kernel k = scalar_kernel(0.5);
  SampleBatch base = sample_batch(k, 0, 30000, 1000000, 51);

  SECTION("tilted process dominates the base process") {
    const double q = 0.1;
    const double c = 1.0 / tilt_normalizer(k, q);
    Kernel tilted = tilted_kernel(k, q, c);
    SampleBatch upper = sample_batch(tilted, 0, 30000, 1000000, 52);
    DominanceReport rep = dominance_check(base, upper);
    CHECK(rep.pass);
  }

  SECTION("base process dominates the truncated process") {
    TypeSpace sp({0, 1}, {0.5, 0.5});
    Kernel k2 = constant_kernel(sp, 0.5);
    SampleBatch base2 = sample_batch(k2, 0, 30000, 1000000, 53);
    const double md = truncation_mass(sp, 0);
    Kernel trunc = truncated_kernel(k2, 0, md);
    SampleBatch lower = sample_batch(trunc, 0, 30000, 1000000, 54);
    DominanceReport rep = dominance_check(lower, base2);
    CHECK(rep.pass);
  }

  SECTION("a clearly larger process fails the reversed check") {
    Kernel bigger = scalar_kernel(0.9);
    SampleBatch upper = sample_batch(bigger, 0, 30000, 1000000, 55);
    DominanceReport rep = dominance_check(upper, base);  // claims base dominates upper
    CHECK_FALSE(rep.pass);
  }

  SECTION("mismatched batches refused") {
    SampleBatch other_cap = sample_batch(k, 0, 100, 999, 56);
    CHECK_THROWS_AS(dominance_check(base, other_cap), ConfigError);
  }
}

TEST_CASE("batch CSV layout") {
  Kernel k = scalar_kernel(0.5);
  SampleBatch b = sample_batch(k, 0, 3, 1000, 61);
  std::ostringstream os;
  write_batch_csv(b, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "root_type,size,censored,generations");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);
}
