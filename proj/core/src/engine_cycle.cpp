#include "psz/engine_cycle.hpp"

#include <cmath>
#include <limits>

#include "psz/errors.hpp"
#include "psz/stats.hpp"

namespace psz {

void ResetUnitary::validate() const {
    for (double m : {m_a, m_b, m_c})
        if (!(m >= 0.0 && m <= 1.0)) throw ParameterError("reset magnitudes must lie in [0,1]");
    if (std::abs(m_a + m_b + m_c - 1.0) > 1e-9)
        throw ParameterError("reset magnitudes must satisfy m_a + m_b + m_c = 1");
}

bool ResetUnitary::symmetric(double tol) const { return std::abs(m_b - m_c) <= tol; }

double p1_from_temperatures(double T_G, double T_W) {
    if (!(T_G > 0.0) || !(T_W > 0.0)) throw ParameterError("temperatures must be positive");
    return std::exp2(-T_G / T_W);
}

EngineParams EngineParams::from_temperatures(double T_G, double T_W, const ResetUnitary& reset) {
    EngineParams e;
    e.P1 = p1_from_temperatures(T_G, T_W);
    e.reset = reset;
    e.T_G = T_G;
    e.T_W = T_W;
    e.validate();
    return e;
}

EngineParams EngineParams::from_p1(double P1, const ResetUnitary& reset, double T_G) {
    EngineParams e;
    e.P1 = P1;
    e.reset = reset;
    e.T_G = T_G;
    // T_W follows from P1 where it is finite and positive.
    e.T_W = (P1 > 0.0 && P1 < 1.0) ? -T_G * std::log(2.0) / std::log(P1)
                                  : std::numeric_limits<double>::quiet_NaN();
    e.validate();
    return e;
}

void EngineParams::validate() const {
    if (!(P1 >= 0.0 && P1 <= 1.0)) throw ParameterError("P1 must lie in [0,1]");
    reset.validate();
}

CycleWeights cycle_weights(const EngineParams& e) {
    e.validate();
    const double P = e.P1;
    const auto& r = e.reset;
    CycleWeights w;
    w.w1 = 1.0 - 0.5 * P * (1.0 + r.m_a);
    w.w2 = 0.5 * P * (1.0 - r.m_b);
    w.w3 = 0.5 * P * (1.0 - r.m_c);
    w.w4 = (1.0 - 2.0 * P) + P * P * (1.0 + r.m_a);
    w.w5 = P - P * P * (1.0 - r.m_b);
    w.w6 = P - P * P * (1.0 - r.m_c);
    return w;
}

FlowStats reversal_and_lengths(const EngineParams& e) {
    e.validate();
    const double P = e.P1;
    FlowStats f;
    f.P_r = 0.5 * P * (1.0 + e.reset.m_a);
    f.P_l = (1.0 - 2.0 * P) + P * P * (1.0 + e.reset.m_a);
    const double inf = std::numeric_limits<double>::infinity();
    f.N_r_infinite = f.P_r <= 0.0;
    f.N_l_infinite = f.P_l <= 0.0;
    f.N_r = f.N_r_infinite ? inf : 1.0 / f.P_r;
    f.N_l = f.N_l_infinite ? inf : 1.0 / f.P_l;
    f.delta_E = energy_flow(e);
    return f;
}

double energy_flow(const EngineParams& e) {
    e.validate();
    const double P = e.P1;
    const double h = 0.5 * P * (1.0 + e.reset.m_a);
    const double num = (1.0 - 2.0 * P) * (1.0 - h);
    const double den = (1.0 - 2.0 * P) + (1.0 + 2.0 * P) * h;
    return num / den;
}

double stationary_fraction(const EngineParams& e) {
    if (!e.reset.symmetric()) throw AsymmetricReset("stationary mixture needs m_b = m_c");
    const CycleWeights w = cycle_weights(e);
    return w.w4 / (2.0 * w.w2 + w.w4);
}

double stationary_mix(const EngineParams& e) {
    if (!e.reset.symmetric()) throw AsymmetricReset("stationary mixture needs m_b = m_c");
    const CycleWeights w = cycle_weights(e);
    auto iterate = [&](double wr) {
        for (int it = 0; it < 200; ++it) {
            const double next = w.w4 + wr * (w.w1 - w.w4);
            if (std::abs(next - wr) < 1e-10) return next;
            wr = next;
        }
        throw NonConvergence("stationary mixture iteration did not settle within 200 steps");
    };
    const double a = iterate(0.0);
    const double b = iterate(1.0);
    if (std::abs(a - b) > 1e-9) throw NonConvergence("stationary mixture depends on the start");
    return 0.5 * (a + b);
}

EngineMcResult mc_engine(const EngineParams& e, std::uint64_t n_cycles, std::uint64_t seed) {
    e.validate();
    if (n_cycles == 0) throw ParameterError("cycle count must be positive");
    const FlowStats fs = reversal_and_lengths(e);
    Rng rng = make_rng(seed);
    RenewalAccumulator flow, raising;
    bool raising_state = true;
    std::uint64_t reversals = 0;
    for (std::uint64_t i = 0; i < n_cycles; ++i) {
        flow.add_step(raising_state ? 1.0 : -1.0);
        raising.add_step(raising_state ? 1.0 : 0.0);
        const double u = uniform01(rng);
        if (raising_state) {
            if (u < fs.P_r) {
                raising_state = false;
                ++reversals;
            }
        } else if (u < fs.P_l) {
            raising_state = true;
            ++reversals;
            // Entering a raising run regenerates the chain.
            flow.close_cycle();
            raising.close_cycle();
        }
    }
    EngineMcResult r;
    const MeanError mf = flow.estimate();
    const MeanError mr = raising.estimate();
    r.mean_flow = mf.mean;
    r.stderr_flow = mf.stderr_;
    r.fraction_raising = mr.mean;
    r.stderr_fraction = mr.stderr_;
    r.cycles = n_cycles;
    r.reversals = reversals;
    return r;
}

}  // namespace psz
