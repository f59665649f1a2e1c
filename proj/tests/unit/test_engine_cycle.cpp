#include <doctest.h>

#include <cmath>

#include "psz/engine_cycle.hpp"
#include "psz/errors.hpp"

using namespace psz;

namespace {
EngineParams at(double P1, double ma, double mb, double mc) {
    return EngineParams::from_p1(P1, ResetUnitary{ma, mb, mc});
}
EngineParams sym(double P1, double ma) { return at(P1, ma, 0.5 * (1 - ma), 0.5 * (1 - ma)); }
}  // namespace

TEST_CASE("P1 from temperatures") {
    CHECK(p1_from_temperatures(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(p1_from_temperatures(2.0, 1.0) == doctest::Approx(0.25));
    const EngineParams e = EngineParams::from_temperatures(1.0, 3.0, ResetUnitary{});
    CHECK(EngineParams::from_p1(e.P1, ResetUnitary{}).T_W == doctest::Approx(3.0));
}

TEST_CASE("cycle weights") {
    const CycleWeights w0 = cycle_weights(sym(0.0, 0.3));
    CHECK(w0.w1 == doctest::Approx(1.0));
    CHECK(w0.w4 == doctest::Approx(1.0));
    const CycleWeights w = cycle_weights(at(0.5, 1.0 / 3, 1.0 / 3, 1.0 / 3));
    CHECK(w.w1 == doctest::Approx(2.0 / 3.0));
    CHECK(w.w2 == doctest::Approx(w.w3));
    CHECK(w.w5 == doctest::Approx(w.w6));
    const CycleWeights g = cycle_weights(at(0.37, 0.2, 0.5, 0.3));
    CHECK(g.w1 + g.w2 + g.w3 == doctest::Approx(1.0));
    CHECK(g.w4 + g.w5 + g.w6 == doctest::Approx(1.0));
}

TEST_CASE("reversal probabilities and run lengths") {
    const FlowStats a = reversal_and_lengths(sym(0.5, 1.0));
    CHECK(a.P_r == doctest::Approx(0.5));
    CHECK(a.P_l == doctest::Approx(0.5));
    CHECK(a.N_r == doctest::Approx(2.0));
    const FlowStats b = reversal_and_lengths(sym(0.5, 0.0));
    CHECK(b.N_r == doctest::Approx(4.0));
    CHECK(b.N_l == doctest::Approx(4.0));
    const EngineParams g = sym(0.3, 0.4);
    const FlowStats c = reversal_and_lengths(g);
    CHECK(1.0 - c.P_l == doctest::Approx(2.0 * g.P1 * (1.0 - c.P_r)));
    const FlowStats z = reversal_and_lengths(sym(0.0, 0.5));
    CHECK(z.N_r_infinite);
}

TEST_CASE("long-run energy flow") {
    for (double ma : {0.0, 0.3, 1.0}) CHECK(std::abs(energy_flow(sym(0.5, ma))) < 1e-15);
    CHECK(energy_flow(sym(0.0, 0.5)) == doctest::Approx(1.0));
    CHECK(energy_flow(sym(1.0, 1.0)) == doctest::Approx(0.0));
    CHECK(energy_flow(sym(1.0, 0.0)) == doctest::Approx(-1.0));
    CHECK(energy_flow(sym(0.25, 0.0)) == doctest::Approx(0.4375 / 0.6875));
}

TEST_CASE("stationary raising fraction") {
    CHECK(stationary_fraction(sym(0.0, 0.5)) == doctest::Approx(1.0));
    CHECK(stationary_fraction(sym(0.5, 1.0)) == doctest::Approx(0.5));
    const EngineParams g = sym(0.3, 0.5);
    CHECK(stationary_fraction(g) == doctest::Approx(stationary_mix(g)).epsilon(1e-10));
    CHECK_THROWS_AS(stationary_fraction(at(0.3, 0.2, 0.5, 0.3)), AsymmetricReset);
}

TEST_CASE("stationary mixture iteration oscillates at P1 = 1, m_a = 1") {
    // w1 = 0 and w4 = 1, so the map w_r <- 1 - w_r flips between 0 and 1.
    CHECK_THROWS_AS(stationary_mix(sym(1.0, 1.0)), NonConvergence);
    CHECK(stationary_mix(sym(1.0, 0.0)) == doctest::Approx(stationary_fraction(sym(1.0, 0.0))));
}

TEST_CASE("Monte Carlo engine") {
    const EngineMcResult z = mc_engine(sym(0.0, 0.5), 10000, 1);
    CHECK(z.mean_flow == doctest::Approx(1.0));
    const EngineMcResult h = mc_engine(sym(0.5, 0.0), 1000000, 2);
    CHECK(std::abs(h.mean_flow) < 3.0 * h.stderr_flow);
    const EngineParams q = sym(0.25, 0.0);
    const EngineMcResult r = mc_engine(q, 1000000, 3);
    CHECK(std::abs(r.mean_flow - energy_flow(q)) < 3.0 * r.stderr_flow);
    CHECK(std::abs(r.fraction_raising - stationary_fraction(q)) < 3.0 * r.stderr_fraction);
    const EngineMcResult again = mc_engine(q, 1000000, 3);
    CHECK(again.mean_flow == r.mean_flow);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(at(1.2, 1.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(at(0.5, 0.5, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(mc_engine(sym(0.5, 0.5), 0, 1), ParameterError);
}
