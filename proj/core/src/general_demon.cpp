#include "psz/general_demon.hpp"

#include <cmath>
#include <limits>

#include "psz/errors.hpp"
#include "psz/stats.hpp"

namespace psz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_imperfect(const DemonParams& d) {
    d.validate();
    if (!(d.tau < 1.0)) throw ParameterError("imperfect resetting needs tau in (0,1)");
}

}  // namespace

void DemonParams::validate() const {
    if (!(p_A > 0.0 && p_A < 1.0)) throw ParameterError("p_A must lie in (0,1)");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be positive and finite");
}

double fluctuation_relation(double p1, double T1, double T2) {
    if (!(p1 > 0.0 && p1 <= 1.0)) throw ParameterError("p1 must lie in (0,1]");
    if (!(T1 > 0.0) || !(T2 > 0.0)) throw ParameterError("temperatures must be positive");
    return std::pow(p1, T1 / T2);
}

DemonProbs demon_probs(const DemonParams& d) {
    require_imperfect(d);
    DemonProbs r;
    r.p_alpha = std::pow(d.p_A, d.tau);
    r.p_beta = std::pow(d.p_B(), d.tau);
    r.p_alphabeta = r.p_alpha + r.p_beta - 1.0;
    if (!(r.p_alphabeta > 0.0)) throw RegimeViolation("p_alpha + p_beta <= 1 with tau < 1");
    r.p_alpha_prime = 1.0 - r.p_beta;
    r.p_beta_prime = 1.0 - r.p_alpha;
    return r;
}

DemonFlow demon_flow(const DemonParams& d) {
    d.validate();
    const double pA = d.p_A, pB = d.p_B();
    const double lA = std::log(pA), lB = std::log(pB);
    DemonFlow f;
    f.Q_R = -(pA * lA + pB * lB);
    if (d.tau >= 1.0) {
        f.perfect_correlation = true;
        f.P_R = 0.0;
        f.N_R = std::numeric_limits<double>::infinity();
        f.P_L = f.N_L = f.Q_1 = f.Q_2 = f.Q_L = f.p_A1 = f.p_A2 = kNaN;
        f.Q = f.Q_R;
        return f;
    }
    const DemonProbs q = demon_probs(d);
    const double sA = std::pow(pA, 1.0 - d.tau), sB = std::pow(pB, 1.0 - d.tau);
    f.P_R = q.p_alphabeta * (sA + sB);
    f.P_L = q.p_alphabeta;
    f.N_R = 1.0 / f.P_R;
    f.N_L = (sA + sB) * f.N_R;
    f.p_A1 = sA / (sA + sB);
    f.p_A2 = q.p_alpha_prime / (q.p_alpha_prime + q.p_beta_prime);
    f.Q_1 = -(f.p_A1 * lA + (1.0 - f.p_A1) * lB);
    f.Q_2 = -(f.p_A2 * lA + (1.0 - f.p_A2) * lB);
    f.Q_L = q.p_alphabeta * f.Q_1 + (q.p_alpha_prime + q.p_beta_prime) * f.Q_2;
    f.Q = (f.N_R * f.Q_R - f.N_L * f.Q_L) / (f.N_R + f.N_L);
    return f;
}

double demon_q_closed(const DemonParams& d) {
    require_imperfect(d);
    const double pA = d.p_A, pB = d.p_B();
    const double sA = std::pow(pA, 1.0 - d.tau), sB = std::pow(pB, 1.0 - d.tau);
    return ((sB - pB) * std::log(pA) + (sA - pA) * std::log(pB)) / (sA + sB + 1.0);
}

DemonMcResult mc_demon(const DemonParams& d, std::uint64_t n_cycles, std::uint64_t seed) {
    const DemonProbs q = demon_probs(d);
    if (n_cycles < 10000) throw ParameterError("demon Monte Carlo needs at least 10^4 cycles");
    const double lA = std::log(d.p_A), lB = std::log(d.p_B());
    const double revA = q.p_alphabeta / q.p_alpha;
    const double revB = q.p_alphabeta / q.p_beta;

    enum class State { raising, lower_A, lower_B };
    Rng rng = make_rng(seed);
    RenewalAccumulator acc;
    DemonMcResult r;
    State s = State::raising;
    bool first = false;
    for (std::uint64_t i = 0; i < n_cycles; ++i) {
        if (s == State::raising) {
            acc.close_cycle();
            ++r.raising_cycles;
            const bool a = uniform01(rng) < d.p_A;
            acc.add_step(-(a ? lA : lB));
            if (uniform01(rng) < (a ? revA : revB)) {
                s = a ? State::lower_A : State::lower_B;
                first = true;
            }
            continue;
        }
        const bool a = s == State::lower_A;
        (a ? r.lower_A_cycles : r.lower_B_cycles)++;
        if (first) {
            ++r.first_lowerings;
            if (a) ++r.first_lowerings_A;
            first = false;
        }
        acc.add_step(a ? lA : lB);
        const double u = uniform01(rng);
        if (u < q.p_alpha_prime)
            s = State::lower_A;
        else if (u < q.p_alpha_prime + q.p_beta_prime)
            s = State::lower_B;
        else
            s = State::raising;
    }
    const MeanError m = acc.estimate();
    r.mean_Q = m.mean;
    r.stderr_ = m.stderr_;
    r.cycles = n_cycles;
    return r;
}

std::vector<CarnotResult> carnot_bounds(const DemonParams& d, const std::vector<CarnotSplit>& splits) {
    d.validate();
    const double pA = d.p_A, pB = d.p_B();
    const double T_G = 1.0, T_W = 1.0 / d.tau;
    const double p_alpha = std::pow(pA, d.tau), p_beta = std::pow(pB, d.tau);
    const double sum_plnp = pA * std::log(pA) + pB * std::log(pB);
    const double Q_R = -T_G * sum_plnp;
    std::vector<CarnotResult> out;
    out.reserve(splits.size());
    for (const auto& sp : splits) {
        if (!(sp.p_alpha2 > 0.0) || !(sp.p_beta2 > 0.0) || sp.p_alpha2 + sp.p_beta2 > 1.0 + 1e-12)
            throw InfeasibleSplit("split must be positive with p_alpha'' + p_beta'' <= 1");
        CarnotResult c;
        c.dF_G = T_W * (pA * std::log(sp.p_alpha2 / p_alpha) + pB * std::log(sp.p_beta2 / p_beta));
        c.bound = (T_W - T_G) * sum_plnp;
        c.efficiency = c.dF_G / Q_R;
        c.carnot_efficiency = 1.0 - T_W / T_G;
        c.pump_bound = T_W / T_G - 1.0;
        out.push_back(c);
    }
    return out;
}

}  // namespace psz
