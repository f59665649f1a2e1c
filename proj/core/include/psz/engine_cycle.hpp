#pragma once

#include <cstdint>

namespace psz {

// Squared magnitudes of the first-row entries of the reset operation on
// {phi_0, phi_L, phi_R}. Phases never enter the cycle statistics.
struct ResetUnitary {
    double m_a = 1.0 / 3;
    double m_b = 1.0 / 3;
    double m_c = 1.0 / 3;

    void validate() const;
    bool symmetric(double tol = 1e-12) const;
};

struct EngineParams {
    double P1 = 0.5;  // probability an unraised weight sits above the shelf
    ResetUnitary reset;
    double T_G = 1.0;
    double T_W = 1.0;

    // P1 = (1/2)^(T_G/T_W)
    static EngineParams from_temperatures(double T_G, double T_W, const ResetUnitary& reset);
    // P1 given directly; endpoints 0 and 1 are allowed.
    static EngineParams from_p1(double P1, const ResetUnitary& reset, double T_G = 1.0);

    void validate() const;
};

double p1_from_temperatures(double T_G, double T_W);

struct CycleWeights {
    double w1 = 0, w2 = 0, w3 = 0;  // end of a raising cycle: centre, right, left
    double w4 = 0, w5 = 0, w6 = 0;  // end of a lowering cycle
};

CycleWeights cycle_weights(const EngineParams& params);

struct FlowStats {
    double P_r = 0.0;
    double P_l = 0.0;
    double N_r = 0.0;  // +infinity when P_r = 0
    double N_l = 0.0;
    bool N_r_infinite = false;
    bool N_l_infinite = false;
    double delta_E = 0.0;  // long-run flow T_G -> T_W per cycle, units T_G ln 2
};

FlowStats reversal_and_lengths(const EngineParams& params);

// Closed-form long-run energy flow per cycle in units of T_G ln 2.
double energy_flow(const EngineParams& params);

// Long-run fraction of raising cycles, w4 / (2 w2 + w4). Needs m_b = m_c.
double stationary_fraction(const EngineParams& params);

// Same value obtained by iterating w_r <- w4 + w_r (w1 - w4) from both 0 and
// 1. Throws NonConvergence if either start fails to settle to 1e-10 within
// 200 iterations, and AsymmetricReset if m_b != m_c.
double stationary_mix(const EngineParams& params);

struct EngineMcResult {
    double mean_flow = 0.0;  // units T_G ln 2 per cycle
    double stderr_flow = 0.0;
    double fraction_raising = 0.0;
    double stderr_fraction = 0.0;
    std::uint64_t cycles = 0;
    std::uint64_t reversals = 0;
};

// Two-state renewal chain: raising (+1, reverses w.p. P_r) and lowering
// (-1, reverses w.p. P_l). Starts on a raising cycle.
EngineMcResult mc_engine(const EngineParams& params, std::uint64_t n_cycles, std::uint64_t seed);

}  // namespace psz
