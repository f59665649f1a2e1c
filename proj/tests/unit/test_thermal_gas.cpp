#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psz/errors.hpp"
#include "psz/thermal_gas.hpp"

using namespace psz;
using std::numbers::ln2;
using std::numbers::pi;

TEST_CASE("partition functions") {
    GasThermalState st;
    st.T_G = 100.0;
    const PartitionReport r = gas_partition(st);
    CHECK(r.closed == doctest::Approx(8.8623).epsilon(1e-4));
    CHECK(r.mean_E_closed == doctest::Approx(50.0));

    st.T_G = 1e6;
    const PartitionReport big = gas_partition(st);
    CHECK(big.summed == doctest::Approx(big.closed).epsilon(1e-3));
    CHECK(big.mean_E_summed == doctest::Approx(big.mean_E_closed).epsilon(1e-3));

    st.mode = GasMode::partitioned;
    const PartitionReport part = gas_partition(st);
    CHECK(part.closed == doctest::Approx((1 - st.p) * big.closed));

    st.mode = GasMode::confined_left;
    st.Y = 1.0 - st.p;
    const PartitionReport conf = gas_partition(st);
    CHECK(conf.closed == doctest::Approx((1 - st.p) * big.closed));
}

TEST_CASE("insertion work") {
    const InsertionWork w = insertion_work(1e4, 0.01);
    CHECK(w.W_odd == doctest::Approx(0.0199 * 5000.0 / 0.9801).epsilon(1e-9));
    CHECK(w.W_even > w.W_odd);
    CHECK(w.W_mean / 5000.0 < 0.05);
    const InsertionWork s = insertion_work_sum(1e4, 0.01);
    CHECK(s.W_odd == doctest::Approx(w.W_odd).epsilon(0.02));
    // The level sums give a linear term 4/sqrt(pi T) in the even shift.
    const double even_ref = 5000.0 / (0.99 * 0.99) * (0.0199 + 4.0 / std::sqrt(pi * 1e4) + 2e-4);
    CHECK(s.W_even == doctest::Approx(even_ref).epsilon(0.03));
    CHECK(insertion_work(1e8, 1e-4).W_mean / 5e7 < 1e-3);
}

TEST_CASE("work table in closed form") {
    const double T = 100.0, p = 0.01;
    CHECK(expansion_profile(ExpansionRegime::isolated, 1 - p, T, p).W == doctest::Approx(0.375 * T));
    CHECK(expansion_profile(ExpansionRegime::essential, 1 - p, T, p).W == doctest::Approx(0.375 * T));
    CHECK(expansion_profile(ExpansionRegime::isothermal, 1 - p, T, p).W == doctest::Approx(T * ln2));
    CHECK(isolated_recompression_work(T) == doctest::Approx(-1.5 * T));
    CHECK(isothermal_compression_work(T) == doctest::Approx(-T * ln2));
    CHECK(-isolated_recompression_work(T) - 0.375 * T == doctest::Approx(9.0 / 8.0 * T));
}

TEST_CASE("work table from level sums at high temperature") {
    const double T = 1e6, p = 0.01;
    CHECK(expansion_profile_sum(ExpansionRegime::isolated, 1 - p, T, p).W ==
          doctest::Approx(0.375 * T).epsilon(0.01));
    CHECK(expansion_profile_sum(ExpansionRegime::isothermal, 1 - p, T, p).W ==
          doctest::Approx(T * ln2).epsilon(0.01));
    CHECK(isolated_recompression_work_sum(T, p) == doctest::Approx(-1.5 * T).epsilon(0.01));
    CHECK(isothermal_compression_work_sum(T, p) == doctest::Approx(-T * ln2).epsilon(0.01));
}

TEST_CASE("expansion profile consistency") {
    const double T = 10.0, p = 0.01;
    for (double Y : {0.0, 0.2, 0.5, 0.99}) {
        const ExpansionPoint iso = expansion_profile(ExpansionRegime::isothermal, Y, T, p);
        CHECK(iso.P * (Y + 1 - p) == doctest::Approx(T));
        const ExpansionPoint ad = expansion_profile(ExpansionRegime::isolated, Y, T, p);
        CHECK(ad.E + ad.W == doctest::Approx(0.5 * T));
        CHECK(ad.P > 0.0);
    }
    CHECK_THROWS_AS(expansion_profile(ExpansionRegime::isolated, 1.5, T, p), ParameterError);
}

TEST_CASE("fluctuation moments") {
    const FluctuationRatios f = fluctuation_moments(ExpansionRegime::isolated, 0.0, 100.0, 0.01);
    CHECK(f.E_ratio == doctest::Approx(3.0));
    CHECK(f.E_ratio - 1.0 == doctest::Approx(2.0));
    const FluctuationRatios s = fluctuation_moments_sum(ExpansionRegime::isothermal, 0.3, 1e6, 0.01);
    CHECK(s.E_ratio == doctest::Approx(3.0).epsilon(0.01));
    CHECK(s.P_ratio == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("gearing") {
    CHECK(gearing_height(0.99, 1.0, 1.0, 0.01) == doctest::Approx(ln2));
    CHECK(gearing_height(0.0, 1.0, 1.0, 0.01) == doctest::Approx(0.0));
    CHECK(gearing_height_essential(0.99, 1.0, 1.0, 0.01) == doctest::Approx(0.375));
}

TEST_CASE("stepped expansion work") {
    const double T = 1e6, p = 0.01;
    const SampleMoments one = sample_moments(mc_expansion_work_batch(1, T, p, 1000, 20000));
    CHECK(one.variance / (one.mean * one.mean) == doctest::Approx(2.0).epsilon(0.1));

    const SampleMoments m = sample_moments(mc_expansion_work_batch(100, T, p, 1, 10000));
    const double se = std::sqrt(m.variance / 10000.0);
    CHECK(std::abs(m.mean - T * ln2) < 3.0 * se);

    CHECK(mc_expansion_work(10, T, p, 42) == mc_expansion_work(10, T, p, 42));
    CHECK_THROWS_AS(ExpansionWorkSampler(0, T, p), ParameterError);
}
