#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psz/errors.hpp"
#include "psz/thermal_gas.hpp"
#include "psz/thermo_ledger.hpp"

using namespace psz;
using std::numbers::ln2;

TEST_CASE("mixing entropy and free energy") {
    CHECK(mix_entropy({{1.0, 0, 2.5}, {0.0, 0, 7.0}}) == doctest::Approx(2.5));
    CHECK(mix_entropy({{0.5, 0, 1.0}, {0.5, 0, 1.0}}) == doctest::Approx(1.0 + ln2));
    const double t = 1.0 / 3.0;
    CHECK(mix_entropy({{t, 0, 2.0}, {t, 0, 2.0}, {t, 0, 2.0}}) == doctest::Approx(2.0 + std::log(3.0)));
    CHECK(mix_free_energy({{0.5, 4.0}, {0.5, 4.0}}, 2.0) == doctest::Approx(4.0 - 2.0 * ln2));
    CHECK_THROWS_AS(mix_entropy({{0.5}, {0.6}}), ProbabilityMismatch);
}

TEST_CASE("subensemble free energies") {
    CHECK(subensemble_free_energy(3.0, 1.0, 2.0) == doctest::Approx(3.0));
    const std::vector<double> F{1.0, 1.7, 2.2};
    const double T = 0.8;
    const double Feq = equilibrium_free_energy(F, T);
    std::vector<Subensemble> parts;
    std::vector<double> p;
    for (double f : F) {
        const double pa = prob_from_free_energy(Feq, f, T);
        p.push_back(pa);
        parts.push_back({pa, f});
    }
    CHECK(mix_free_energy(parts, T) == doctest::Approx(Feq));
    CHECK(noneq_free_energy(p, F, T) == doctest::Approx(Feq));
    for (std::size_t i = 0; i < F.size(); ++i)
        CHECK(subensemble_free_energy(Feq, p[i], T) == doctest::Approx(F[i]));
}

TEST_CASE("non-equilibrium free energy") {
    const double T = 1.5;
    const double F = noneq_free_energy({0.9, 0.1}, {2.0, 2.0}, T);
    CHECK(F == doctest::Approx(2.0 + T * (0.9 * std::log(0.9) + 0.1 * std::log(0.1))));
    CHECK(F > 2.0 - T * ln2);
    CHECK(noneq_free_energy({1.0, 0.0}, {2.0, 5.0}, T) == doctest::Approx(2.0));
}

TEST_CASE("gas thermodynamics") {
    const double T = 3.0, p = 0.01;
    const ThermoPair g0 = gas_thermo_unpartitioned(T);
    CHECK(gas_thermo(1 - p, T, p).S - g0.S == doctest::Approx(std::log(1 - p)));
    CHECK(gas_thermo(0.0, T, p).F - (g0.F + T * ln2) == doctest::Approx(-T * std::log(1 - p)));
    for (double Y : {0.0, 0.3, 0.7}) {
        const double W = expansion_profile(ExpansionRegime::isothermal, Y, T, p).W;
        CHECK(gas_thermo(Y, T, p).F + W == doctest::Approx(gas_thermo(0.0, T, p).F));
    }
    CHECK(0.5 * T - g0.F == doctest::Approx(T * g0.S));
}

TEST_CASE("weight thermodynamics") {
    WeightParams w;
    w.T_W = 2.0;
    const double hT = std::log(2.0);  // T_G = 1, Mg = 1
    CHECK(weight_thermo(hT, w).F - weight_thermo(0.0, w).F == doctest::Approx(ln2));
    CHECK(weight_thermo(5.0 * w.T_W, w).S == doctest::Approx(weight_thermo(0.0, w).S));
    const double h = 0.4;
    const double E = 1.5 * w.T_W + w.Mg * h;
    CHECK(E - weight_thermo(h, w).F == doctest::Approx(w.T_W * weight_thermo(h, w).S));
}

TEST_CASE("cycle totals at the corners") {
    const auto sym = [](double P1, double ma) {
        return EngineParams::from_p1(P1, ResetUnitary{ma, 0.5 * (1 - ma), 0.5 * (1 - ma)});
    };
    CHECK(std::abs(cycle_totals(sym(1.0, 1.0)).dS_R) < 1e-12);
    const CycleTotals z = cycle_totals(sym(0.0, 0.4));
    CHECK(std::abs(z.dS_L) < 1e-12);
    CHECK(z.dS_L_total == doctest::Approx(ln2));
    CHECK(cycle_totals(sym(0.5, 0.3)).dS_R > 0.0);
}

TEST_CASE("ledgers conserve energy and match the totals") {
    const EngineParams e = EngineParams::from_temperatures(1.0, 2.5, ResetUnitary{0.2, 0.5, 0.3});
    const WeightParams w;
    for (const Ledger& L : {raising_ledger(e, w), lowering_ledger(e, w)}) {
        for (const LedgerRow& r : L.rows)
            CHECK(r.total_energy() == doctest::Approx(L.rows.front().total_energy()).epsilon(1e-12));
    }
    const Ledger R = raising_ledger(e, w);
    CHECK(R.rows.back().total_entropy() - R.rows.front().total_entropy() == doctest::Approx(R.totals.dS_R));
    CHECK((*R.rows.back().engine.F - *R.rows.front().engine.F) / e.T_W == doctest::Approx(R.totals.dF_R));
    const LedgerRow& b = R.rows[2];
    CHECK(b.stage == "b");
    CHECK(*b.engine.F - *R.rows.front().engine.F == doctest::Approx(-(e.T_W - e.T_G) * ln2));
    CHECK_FALSE(R.rows[1].engine.F.has_value());

    const Ledger Lw = lowering_ledger(e, w);
    const double dS = Lw.rows.back().total_entropy() - Lw.rows.front().total_entropy();
    CHECK(dS == doctest::Approx(Lw.totals.dS_L_total));
    const double dF = Lw.rows.back().engine.F.value() + Lw.rows.back().gas.F.value() -
                      Lw.rows.front().engine.F.value() - Lw.rows.front().gas.F.value();
    CHECK(dF / e.T_W == doctest::Approx(Lw.totals.dF_L));

    CHECK_THROWS_AS(raising_ledger(EngineParams::from_p1(0.0, ResetUnitary{}), w), ParameterError);
}

TEST_CASE("entropy engine") {
    CHECK(entropy_engine_delta(ln2, 2.0, 1.0) == doctest::Approx(ln2));
    CHECK(entropy_engine_delta(1.3, 4.0, 4.0) == doctest::Approx(0.0));
    const double S = 0.7, T1 = 3.0, T2 = 1.2;
    CHECK(entropy_engine_delta(S, T1, T2) / (S * T1) == doctest::Approx(1.0 - T2 / T1));
}
