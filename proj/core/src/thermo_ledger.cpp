#include "psz/thermo_ledger.hpp"

#include <cmath>
#include <numbers>

#include "psz/errors.hpp"
#include "psz/thermal_gas.hpp"

namespace psz {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

void check_simplex(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (!(x >= 0.0 && x <= 1.0)) throw ProbabilityMismatch("probabilities must lie in [0,1]");
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ProbabilityMismatch("probabilities must sum to 1");
}

std::vector<double> probabilities(const std::vector<Subensemble>& parts) {
    std::vector<double> p;
    p.reserve(parts.size());
    for (const auto& s : parts) p.push_back(s.p);
    return p;
}

// w ln P1 under the convention that a zero weight contributes nothing.
double w_log(double w, double P1) { return w == 0.0 ? 0.0 : w * std::log(P1); }

}  // namespace

double xlogx(double p) { return p == 0.0 ? 0.0 : p * std::log(p); }

double mix_entropy(const std::vector<Subensemble>& parts) {
    check_simplex(probabilities(parts));
    double s = 0.0;
    for (const auto& x : parts) s += x.p * x.S - xlogx(x.p);
    return s;
}

double mix_free_energy(const std::vector<Subensemble>& parts, double T) {
    check_simplex(probabilities(parts));
    double f = 0.0;
    for (const auto& x : parts) f += x.p * x.F + T * xlogx(x.p);
    return f;
}

double equilibrium_free_energy(const std::vector<double>& F, double T) {
    if (F.empty()) throw ParameterError("no subensembles");
    double fmin = F.front();
    for (double f : F) fmin = std::min(fmin, f);
    double z = 0.0;
    for (double f : F) z += std::exp(-(f - fmin) / T);
    return fmin - T * std::log(z);
}

double subensemble_free_energy(double F, double p, double T) {
    if (!(p > 0.0 && p <= 1.0)) throw ProbabilityMismatch("subensemble probability must lie in (0,1]");
    return F - T * std::log(p);
}

double prob_from_free_energy(double F, double F_a, double T) { return std::exp((F - F_a) / T); }

double noneq_free_energy(const std::vector<double>& p_prime, const std::vector<double>& F,
                         double T) {
    if (p_prime.size() != F.size()) throw ParameterError("probability and free-energy lists differ in length");
    check_simplex(p_prime);
    double f = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) f += p_prime[i] * F[i] + T * xlogx(p_prime[i]);
    return f;
}

ThermoPair gas_thermo_unpartitioned(double T_G) {
    if (!(T_G > 0.0)) throw ParameterError("temperature must be positive");
    const double l = std::log(kPi * T_G);
    return {0.5 * (1.0 + l - 2.0 * kLn2), 0.5 * T_G * (2.0 * kLn2 - l)};
}

ThermoPair gas_thermo(double Y, double T_G, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("barrier fraction p must lie in (0,1)");
    if (!(Y >= 0.0 && Y <= 1.0 - p)) throw ParameterError("piston position must lie in [0, 1-p]");
    const ThermoPair g0 = gas_thermo_unpartitioned(T_G);
    const double shrink = std::log(2.0 / (Y + 1.0 - p));
    return {g0.S - shrink, g0.F + T_G * shrink};
}

ThermoPair weight_thermo(double h, const WeightParams& w) {
    w.validate();
    if (!(h >= 0.0)) throw ParameterError("height must be >= 0");
    const double T = w.T_W;
    const double lt = std::log(T / w.energy_scale());
    const double l2 = std::log(2.0 * std::sqrt(kPi));
    return {1.5 * (1.0 + lt) - l2, w.Mg * h - T * (1.5 * lt - l2)};
}

CycleTotals cycle_totals(const EngineParams& e) {
    const CycleWeights w = cycle_weights(e);
    const double P1 = e.P1;
    const double sR = xlogx(w.w1) + xlogx(w.w2) + xlogx(w.w3);
    const double sL = xlogx(w.w4) + xlogx(w.w5) + xlogx(w.w6);
    CycleTotals t;
    t.dS_R = -kLn2 - w_log(w.w1, P1) - sR;
    t.dF_R = sR - w_log(w.w2 + w.w3, P1);
    t.dS_L = w_log(w.w5 + w.w6, P1) - sL;
    t.dS_L_total = t.dS_L + kLn2;
    t.dF_L = w_log(w.w4, P1) + sL;
    return t;
}

Ledger raising_ledger(const EngineParams& e, const WeightParams& weight, double p, double mid_Y) {
    e.validate();
    if (!(e.P1 > 0.0 && e.P1 < 1.0) || !(e.T_G > 0.0) || !(e.T_W > 0.0))
        throw ParameterError("ledgers need finite temperatures with 0 < P1 < 1");
    WeightParams wp = weight;
    wp.T_W = e.T_W;
    const double TG = e.T_G, TW = e.T_W, P1 = e.P1;
    const ThermoPair g0 = gas_thermo_unpartitioned(TG);
    const ThermoPair w0 = weight_thermo(0.0, wp);
    const CycleWeights w = cycle_weights(e);
    const double sR = xlogx(w.w1) + xlogx(w.w2) + xlogx(w.w3);
    const double lift = TG * kLn2;  // Mg h_T

    Ledger L;
    L.totals = cycle_totals(e);
    const SubsystemColumn gas0{0.5 * TG, g0.S, g0.F};
    const SubsystemColumn engine0{3.0 * TW, 2.0 * w0.S, 2.0 * w0.F};

    L.rows.push_back({"a", "piston inserted", {}, gas0, engine0, {}});

    {
        const double q = (mid_Y + 1.0 - p) / (1.0 - p);
        const ThermoPair gy = gas_thermo(mid_Y, TG, p);
        LedgerRow r{"b-mid", "expansion under way; correlated mixture at two temperatures, ln(1-p) terms neglected",
                    {-TG * std::log(q), -std::log(q)},
                    {0.5 * TG, gy.S, std::nullopt},
                    {3.0 * TW + wp.Mg * gearing_height(mid_Y, TG, wp.Mg, p), 2.0 * w0.S + kLn2, std::nullopt},
                    {}};
        L.rows.push_back(r);
    }

    const BathColumn bathG_b{-lift, -kLn2};
    const SubsystemColumn engine_b{3.0 * TW + lift, 2.0 * w0.S + kLn2,
                                   2.0 * w0.F - TW * std::log(2.0 * P1)};
    L.rows.push_back({"b", "expansion complete", bathG_b, gas0, engine_b, {}});
    L.rows.push_back({"c", "shelves inserted; assumed reversible with negligible work", bathG_b, gas0,
                      engine_b, {}});
    L.rows.push_back({"d", "piston removed", bathG_b, gas0, engine_b, {}});
    L.rows.push_back({"e", "piston reset", bathG_b, gas0, engine_b, {}});

    const SubsystemColumn engine_f{3.0 * TW - w_log(w.w2 + w.w3, P1) * TW, 2.0 * w0.S - sR,
                                   2.0 * w0.F + TW * (sR - w_log(w.w2 + w.w3, P1))};
    const BathColumn bathW_f{-w_log(w.w1, P1) * TW, -w_log(w.w1, P1)};
    L.rows.push_back({"f", "shelves removed, weights thermalised", bathG_b, gas0, engine_f, bathW_f});
    return L;
}

Ledger lowering_ledger(const EngineParams& e, const WeightParams& weight, double p) {
    (void)p;
    e.validate();
    if (!(e.P1 > 0.0 && e.P1 < 1.0) || !(e.T_G > 0.0) || !(e.T_W > 0.0))
        throw ParameterError("ledgers need finite temperatures with 0 < P1 < 1");
    WeightParams wp = weight;
    wp.T_W = e.T_W;
    const double TG = e.T_G, TW = e.T_W, P1 = e.P1;
    const ThermoPair g0 = gas_thermo_unpartitioned(TG);
    const ThermoPair w0 = weight_thermo(0.0, wp);
    const CycleWeights w = cycle_weights(e);
    const double sL = xlogx(w.w4) + xlogx(w.w5) + xlogx(w.w6);
    const double lift = TG * kLn2;

    Ledger L;
    L.totals = cycle_totals(e);
    const SubsystemColumn gas0{0.5 * TG, g0.S, g0.F};
    const SubsystemColumn gas_half{0.5 * TG, g0.S - kLn2, g0.F + TG * kLn2};
    const SubsystemColumn engine_low{3.0 * TW, 2.0 * w0.S, 2.0 * w0.F};
    const BathColumn bathG{lift, kLn2};

    L.rows.push_back({"a", "piston inserted at one end, one weight raised", {}, gas0,
                      {3.0 * TW + lift, 2.0 * w0.S, 2.0 * w0.F + lift}, {}});
    L.rows.push_back({"b", "gas compressed by the falling weight", bathG, gas_half, engine_low, {}});
    L.rows.push_back({"c", "shelves inserted; assumed reversible with negligible work", bathG, gas_half,
                      engine_low, {}});
    L.rows.push_back({"d", "piston removed, free expansion", bathG, gas0, engine_low, {}});
    L.rows.push_back({"e", "piston reset", bathG, gas0, engine_low, {}});

    const double lw = w_log(w.w5 + w.w6, P1);
    L.rows.push_back({"f", "shelves removed, weights thermalised", bathG, gas0,
                      {3.0 * TW - lw * TW, 2.0 * w0.S - sL, 2.0 * w0.F + TW * (sL - lw)},
                      {lw * TW, lw}});
    return L;
}

double entropy_engine_delta(double S, double T1, double T2) { return -S * (T2 - T1); }

}  // namespace psz
