#include <doctest.h>

#include <cmath>
#include <random>

#include "psz/engine_cycle.hpp"
#include "psz/errors.hpp"
#include "psz/general_demon.hpp"

using namespace psz;

TEST_CASE("fluctuation relation") {
    CHECK(fluctuation_relation(0.5, 1.0, 1.0) == doctest::Approx(0.5));
    CHECK(fluctuation_relation(0.1, 2.0, 1.0) == doctest::Approx(0.01));
    CHECK(fluctuation_relation(0.5, 1.0, 3.0) == doctest::Approx(p1_from_temperatures(1.0, 3.0)));
    CHECK(fluctuation_relation(0.4, 2.0, 1.0) < 0.4);
    CHECK_THROWS_AS(fluctuation_relation(0.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("demon probabilities") {
    const DemonProbs q = demon_probs({0.5, 0.5});
    CHECK(q.p_alpha == doctest::Approx(std::sqrt(0.5)));
    CHECK(q.p_alphabeta == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(q.p_alpha_prime + q.p_beta_prime + q.p_alphabeta == doctest::Approx(1.0));
    CHECK(demon_probs({0.3, 0.999999}).p_alphabeta < 1e-5);
    CHECK_THROWS_AS(demon_probs({0.3, 1.0}), ParameterError);
    CHECK_THROWS_AS(demon_probs({1.0, 0.5}), ParameterError);
}

TEST_CASE("demon flow at the worked point") {
    const DemonFlow f = demon_flow({0.5, 0.5});
    CHECK(f.Q == doctest::Approx(-0.11893).epsilon(1e-4));
    CHECK(f.Q == doctest::Approx(demon_q_closed({0.5, 0.5})).epsilon(1e-12));
    CHECK(f.N_L / f.N_R == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.Q_R == doctest::Approx(std::log(2.0)));
}

TEST_CASE("demon flow over a grid") {
    for (int i = 1; i < 30; ++i)
        for (int j = 1; j < 30; ++j) {
            const DemonParams d{i / 30.0, j / 30.0};
            const DemonFlow f = demon_flow(d);
            CHECK(f.Q <= 1e-12);
            CHECK(f.N_L >= f.N_R);
            CHECK(f.Q == doctest::Approx(demon_q_closed(d)).epsilon(1e-10));
            const DemonProbs q = demon_probs(d);
            CHECK(q.p_alphabeta / q.p_alpha >= q.p_alphabeta);
        }
    CHECK(std::abs(demon_flow({0.3, 1e-6}).Q) < 1e-4);
}

TEST_CASE("perfect correlation branch") {
    const DemonFlow f = demon_flow({0.3, 1.5});
    CHECK(f.perfect_correlation);
    CHECK(f.Q == doctest::Approx(f.Q_R));
    CHECK(std::isinf(f.N_R));
    CHECK(std::isnan(f.Q_L));
}

TEST_CASE("demon Monte Carlo") {
    const DemonMcResult m = mc_demon({0.5, 0.5}, 1000000, 11);
    CHECK(std::abs(m.mean_Q - demon_flow({0.5, 0.5}).Q) < 3.0 * m.stderr_);
    const double nA = double(m.lower_A_cycles), nB = double(m.lower_B_cycles);
    CHECK(std::abs(nA - nB) < 3.0 * std::sqrt(4.0 * (nA + nB)));

    const DemonParams d{0.2, 0.3};
    const DemonMcResult r = mc_demon(d, 1000000, 12);
    const DemonFlow f = demon_flow(d);
    CHECK(std::abs(r.mean_Q - f.Q) < 3.0 * r.stderr_);
    const double n = double(r.first_lowerings);
    CHECK(std::abs(r.first_lowering_A_fraction() - f.p_A1) < 3.0 * std::sqrt(f.p_A1 * (1 - f.p_A1) / n));
    CHECK_THROWS_AS(mc_demon(d, 100, 1), ParameterError);
}

TEST_CASE("Carnot bounds") {
    const DemonParams d{0.3, 0.6};
    const auto opt = carnot_bounds(d, {{0.3, 0.7}});
    CHECK(std::abs(opt[0].dF_G - opt[0].bound) < 1e-12);

    const DemonParams hot{0.3, 2.0};  // T_G > T_W: engine branch
    const auto h = carnot_bounds(hot, {{0.3, 0.7}});
    CHECK(h[0].efficiency == doctest::Approx(h[0].carnot_efficiency));
    CHECK(h[0].carnot_efficiency == doctest::Approx(0.5));
    CHECK(h[0].pump_bound == doctest::Approx(-0.5));

    const auto eq = carnot_bounds({0.4, 1.0}, {{0.4, 0.6}, {0.2, 0.5}});
    CHECK(std::abs(eq[0].dF_G) < 1e-12);
    CHECK(eq[1].dF_G < 0.0);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    std::vector<CarnotSplit> splits;
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng), s = u(rng);
        splits.push_back({a * s, (1 - a) * s});
    }
    for (const auto& c : carnot_bounds(d, splits)) CHECK(c.dF_G < c.bound);

    CHECK_THROWS_AS(carnot_bounds(d, {{0.6, 0.6}}), InfeasibleSplit);
    CHECK_THROWS_AS(carnot_bounds(d, {{0.0, 0.6}}), InfeasibleSplit);
}
