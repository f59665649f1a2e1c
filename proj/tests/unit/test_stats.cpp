#include <doctest.h>

#include <cmath>

#include "psz/stats.hpp"

using namespace psz;

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a = make_rng(12345), b = make_rng(12345), c = make_rng(12345, 1);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    Rng d = make_rng(12345);
    CHECK(d() != c());
}

TEST_CASE("uniform01 stays in [0,1) with the right mean") {
    Rng r = make_rng(7);
    double s = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = uniform01(r);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        s += u;
    }
    CHECK(s / n == doctest::Approx(0.5).epsilon(5e-3));
}

TEST_CASE("renewal accumulator reproduces a known ratio") {
    RenewalAccumulator acc;
    for (int c = 0; c < 1000; ++c) {
        acc.add_step(1.0);
        acc.add_step(c % 2 ? 0.0 : 1.0);
        acc.close_cycle();
    }
    const MeanError m = acc.estimate();
    CHECK(m.mean == doctest::Approx(0.75));
    CHECK(m.stderr_ > 0.0);
    CHECK(m.stderr_ < 0.02);
    CHECK(acc.complete_cycles() == 1000);
}

TEST_CASE("boltzmann sums of a two-level ladder") {
    // E = 0 and 1 only: the third level is pushed out by a huge gap.
    auto e = [](std::uint64_t n) { return n == 1 ? 0.0 : (n == 2 ? 1.0 : 1e6 * double(n)); };
    const BoltzmannSums s = boltzmann_sums(e, 1.0);
    const double z = 1.0 + std::exp(-1.0);
    CHECK(std::exp(s.log_z(1.0)) == doctest::Approx(z));
    CHECK(s.mean == doctest::Approx(std::exp(-1.0) / z));
    CHECK(s.variance() == doctest::Approx(std::exp(-1.0) / z - std::pow(std::exp(-1.0) / z, 2)));
}

TEST_CASE("sample moments") {
    const SampleMoments m = sample_moments({1.0, 2.0, 3.0, 4.0});
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.variance == doctest::Approx(5.0 / 3.0));
}
