#pragma once

#include <cstdint>
#include <vector>

namespace psz {

struct DemonParams {
    double p_A = 0.5;
    double tau = 0.5;  // T_G / T_W

    double p_B() const { return 1.0 - p_A; }
    // p_A in (0,1) and tau > 0. The overlap formulas further need tau < 1.
    void validate() const;
};

// p2 = p1^(T1/T2)
double fluctuation_relation(double p1, double T1, double T2);

struct DemonProbs {
    double p_alpha = 0.0;
    double p_beta = 0.0;
    double p_alphabeta = 0.0;
    double p_alpha_prime = 0.0;
    double p_beta_prime = 0.0;
};

DemonProbs demon_probs(const DemonParams& params);

// Energies are in units of kT_G and count flow out of the T_G bath.
// For tau >= 1 the resetting is perfect: raising never reverses, Q = Q_R,
// N_R is infinite and every lowering quantity is NaN.
struct DemonFlow {
    double P_R = 0.0;
    double P_L = 0.0;
    double N_R = 0.0;
    double N_L = 0.0;
    double Q_R = 0.0;
    double Q_1 = 0.0;
    double Q_2 = 0.0;
    double Q_L = 0.0;
    double Q = 0.0;
    double p_A1 = 0.0;  // subensemble A on the first lowering cycle
    double p_A2 = 0.0;  // subensemble A on later lowering cycles
    bool perfect_correlation = false;
};

DemonFlow demon_flow(const DemonParams& params);

// Closed form of the long-run Q, kept separate as a check on demon_flow.
double demon_q_closed(const DemonParams& params);

struct DemonMcResult {
    double mean_Q = 0.0;
    double stderr_ = 0.0;
    std::uint64_t cycles = 0;
    std::uint64_t raising_cycles = 0;
    std::uint64_t lower_A_cycles = 0;
    std::uint64_t lower_B_cycles = 0;
    std::uint64_t first_lowerings = 0;
    std::uint64_t first_lowerings_A = 0;

    double first_lowering_A_fraction() const {
        return first_lowerings ? double(first_lowerings_A) / double(first_lowerings) : 0.0;
    }
};

// Three-state chain {raising, lowering-A, lowering-B}. Needs tau in (0,1)
// and at least 10^4 cycles.
DemonMcResult mc_demon(const DemonParams& params, std::uint64_t n_cycles, std::uint64_t seed);

struct CarnotSplit {
    double p_alpha2 = 0.0;
    double p_beta2 = 0.0;
};

struct CarnotResult {
    double dF_G = 0.0;        // free energy gained, units kT_G
    double bound = 0.0;       // (T_W - T_G)(p_A ln p_A + p_B ln p_B)
    double efficiency = 0.0;  // dF_G over the heat Q_R drawn from T_G
    double carnot_efficiency = 0.0;
    double pump_bound = 0.0;  // minimum W/Q when run as a heat pump
};

// T_G = 1 and T_W = 1/tau; any tau > 0 is accepted. Throws InfeasibleSplit if
// a split has a non-positive entry or sums above one.
std::vector<CarnotResult> carnot_bounds(const DemonParams& params,
                                        const std::vector<CarnotSplit>& splits);

}  // namespace psz
