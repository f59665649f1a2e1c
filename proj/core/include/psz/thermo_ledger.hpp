#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psz/engine_cycle.hpp"
#include "psz/quantum_weight.hpp"

namespace psz {

// k_B = 1 throughout: entropies in nats, energies in epsilon.

struct Subensemble {
    double p = 0.0;
    double F = 0.0;
    double S = 0.0;
    double E = 0.0;
    double T = 1.0;
};

// p ln p with 0 ln 0 = 0.
double xlogx(double p);

// S = sum p S_i - sum p ln p. Throws ProbabilityMismatch when sum p is off 1.
double mix_entropy(const std::vector<Subensemble>& parts);

// F = sum p F_i + T sum p ln p
double mix_free_energy(const std::vector<Subensemble>& parts, double T);

// F = -T ln sum exp(-F_i/T), the partition-function form of the same mixture
// when the p_i are the equilibrium weights.
double equilibrium_free_energy(const std::vector<double>& F, double T);

double subensemble_free_energy(double F, double p, double T);
double prob_from_free_energy(double F, double F_a, double T);

// F' = sum p'_a (F_a + T ln p'_a)
double noneq_free_energy(const std::vector<double>& p_prime, const std::vector<double>& F,
                         double T);

struct ThermoPair {
    double S = 0.0;
    double F = 0.0;
};

// Unpartitioned gas, Z = (1/2) sqrt(pi T).
ThermoPair gas_thermo_unpartitioned(double T_G);

// Gas confined to width Y+1-p, with ln(1-p) terms neglected.
ThermoPair gas_thermo(double Y, double T_G, double p);

// Thermal weight at height h. S is independent of h; F rises by Mg h.
ThermoPair weight_thermo(double h, const WeightParams& w);

struct CycleTotals {
    double dS_R = 0.0;  // raising-cycle entropy change
    double dF_R = 0.0;  // raising-cycle free energy change (units T_W)
    double dS_L = 0.0;  // lowering cycle, without the free-expansion ln 2
    double dS_L_total = 0.0;
    double dF_L = 0.0;  // lowering-cycle free energy change (units T_W)
};

// Closed-form totals from the cycle weights. At P1 = 0 the w ln P1 terms
// with nonzero w are infinite; the others vanish under the 0 ln 0 rule.
CycleTotals cycle_totals(const EngineParams& params);

struct BathColumn {
    double dE = 0.0;
    double dS = 0.0;
};

struct SubsystemColumn {
    double E = 0.0;
    double S = 0.0;
    std::optional<double> F;  // empty where the free energy is undefined
};

struct LedgerRow {
    std::string stage;
    std::string note;
    BathColumn bath_G;
    SubsystemColumn gas;
    SubsystemColumn engine;  // piston and both weights, possibly correlated
    BathColumn bath_W;

    double total_energy() const { return bath_G.dE + gas.E + engine.E + bath_W.dE; }
    double total_entropy() const { return bath_G.dS + gas.S + engine.S + bath_W.dS; }
};

struct Ledger {
    std::vector<LedgerRow> rows;
    CycleTotals totals;
};

// Stage-by-stage accounts. The gearing ties the weight rise to the gas:
// Mg h_T = T_G ln 2 = -T_W ln P1. `mid_Y` places the extra mid-expansion row
// of the raising ledger, where the free energy is undefined.
Ledger raising_ledger(const EngineParams& params, const WeightParams& weight, double p = 0.01,
                      double mid_Y = 0.495);
Ledger lowering_ledger(const EngineParams& params, const WeightParams& weight, double p = 0.01);

// Delta F = -S Delta T with Delta T = T2 - T1.
double entropy_engine_delta(double S, double T1, double T2);

}  // namespace psz
