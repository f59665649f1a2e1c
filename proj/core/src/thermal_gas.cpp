#include "psz/thermal_gas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psz/errors.hpp"

namespace psz {

namespace {

constexpr double kPi = std::numbers::pi;

void check_temperature(double T) {
    if (!(T > 0.0)) throw ParameterError("temperature must be positive");
}

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("barrier fraction p must lie in (0,1)");
}

void check_y(double Y, double p) {
    if (!(Y >= 0.0 && Y <= 1.0 - p)) throw ParameterError("piston position must lie in [0, 1-p]");
}

// One-side box of width w: levels 4 l^2 / w^2.
BoltzmannSums side_sums(double w, double T) {
    const double c = 4.0 / (w * w);
    return boltzmann_sums([c](std::uint64_t l) { return c * double(l) * double(l); }, T);
}

}  // namespace

void GasThermalState::validate() const {
    check_temperature(T_G);
    check_p(p);
    if (mode == GasMode::confined_left || mode == GasMode::confined_right) check_y(Y, p);
}

PartitionReport gas_partition(const GasThermalState& st) {
    st.validate();
    const double T = st.T_G;
    const double root = std::sqrt(kPi * T);
    PartitionReport r;
    r.mean_E_closed = 0.5 * T;
    switch (st.mode) {
        case GasMode::no_partition: {
            const BoltzmannSums s =
                boltzmann_sums([](std::uint64_t n) { return double(n) * double(n); }, T);
            r.closed = 0.5 * root;
            r.summed = std::exp(s.log_z(T));
            r.mean_E_summed = s.mean;
            break;
        }
        case GasMode::partitioned: {
            const BoltzmannSums s = side_sums(1.0 - st.p, T);
            r.closed = 0.5 * (1.0 - st.p) * root;
            r.summed = 2.0 * std::exp(s.log_z(T));
            r.mean_E_summed = s.mean;
            break;
        }
        case GasMode::confined_left:
        case GasMode::confined_right: {
            const double w = st.Y + 1.0 - st.p;
            const BoltzmannSums s = side_sums(w, T);
            r.closed = 0.25 * w * root;
            r.summed = std::exp(s.log_z(T));
            r.mean_E_summed = s.mean;
            break;
        }
    }
    return r;
}

InsertionWork insertion_work(double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    const double f = p * (2.0 - p);
    const double pre = 0.5 * T_G / ((1.0 - p) * (1.0 - p));
    InsertionWork w;
    w.W_odd = pre * f;
    w.W_even = pre * (f + 4.0 / std::sqrt(T_G) + 2.0 / T_G);
    w.W_mean = 0.5 * (w.W_odd + w.W_even);
    return w;
}

InsertionWork insertion_work_sum(double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    const double q = 1.0 / ((1.0 - p) * (1.0 - p));
    auto shift_average = [&](auto e0) {
        const double base = e0(1);
        double z = 0.0, acc = 0.0;
        for (std::uint64_t l = 1;; ++l) {
            const double E0 = e0(l);
            const double wt = std::exp(-(E0 - base) / T_G);
            if (l > 1 && wt < kBoltzmannCutoff) break;
            const double Elim = 4.0 * double(l) * double(l) * q;
            z += wt;
            acc += wt * (Elim - E0);
        }
        return acc / z;
    };
    InsertionWork w;
    w.W_odd = shift_average([](std::uint64_t l) { return 4.0 * double(l) * double(l); });
    w.W_even = shift_average([](std::uint64_t l) {
        const double n = 2.0 * double(l) - 1.0;
        return n * n;
    });
    w.W_mean = 0.5 * (w.W_odd + w.W_even);
    return w;
}

const char* to_string(ExpansionRegime r) {
    switch (r) {
        case ExpansionRegime::isolated: return "isolated";
        case ExpansionRegime::essential: return "essential";
        case ExpansionRegime::isothermal: return "isothermal";
    }
    return "?";
}

ExpansionPoint expansion_profile(ExpansionRegime regime, double Y, double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    check_y(Y, p);
    const double w = Y + 1.0 - p;
    ExpansionPoint e;
    if (regime == ExpansionRegime::isothermal) {
        e.E = 0.5 * T_G;
        e.T = T_G;
        e.P = T_G / w;
        e.W = T_G * std::log(w / (1.0 - p));
        return e;
    }
    const double r = (1.0 - p) / w;
    e.E = 0.5 * T_G * r * r;
    e.T = T_G * r * r;
    e.P = T_G * (1.0 - p) * (1.0 - p) / (w * w * w);
    e.W = 0.5 * T_G * Y * (Y + 2.0 * (1.0 - p)) / (w * w);
    return e;
}

ExpansionPoint expansion_profile_sum(ExpansionRegime regime, double Y, double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    check_y(Y, p);
    const double w0 = 1.0 - p;
    const double w = Y + w0;
    const BoltzmannSums s0 = side_sums(w0, T_G);
    ExpansionPoint e;
    if (regime == ExpansionRegime::isothermal) {
        const BoltzmannSums s = side_sums(w, T_G);
        e.E = s.mean;
        e.P = 2.0 * s.mean / w;
        e.T = T_G;
        e.W = T_G * (s.log_z(T_G) - s0.log_z(T_G));
        return e;
    }
    // Both adiabatic regimes keep the initial populations: every level
    // scales as (w0/w)^2, and rethermalising at T_G (w0/w)^2 reproduces them.
    const double r2 = (w0 / w) * (w0 / w);
    e.E = s0.mean * r2;
    e.P = 2.0 * e.E / w;
    e.T = e.P * w;
    e.W = s0.mean - e.E;
    return e;
}

double isolated_recompression_work(double T_G) {
    check_temperature(T_G);
    return -1.5 * T_G;
}

double isolated_recompression_work_sum(double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    const BoltzmannSums s = side_sums(2.0 * (1.0 - p), T_G);
    return -3.0 * s.mean;
}

double isothermal_compression_work(double T_G) {
    check_temperature(T_G);
    return -T_G * std::log(2.0);
}

double isothermal_compression_work_sum(double T_G, double p) {
    return -expansion_profile_sum(ExpansionRegime::isothermal, 1.0 - p, T_G, p).W;
}

FluctuationRatios fluctuation_moments(ExpansionRegime regime, double Y, double T_G, double p) {
    (void)regime;
    check_temperature(T_G);
    check_p(p);
    check_y(Y, p);
    return {3.0, 3.0};
}

FluctuationRatios fluctuation_moments_sum(ExpansionRegime regime, double Y, double T_G, double p) {
    check_temperature(T_G);
    check_p(p);
    check_y(Y, p);
    const double w = regime == ExpansionRegime::isothermal ? Y + 1.0 - p : 1.0 - p;
    const BoltzmannSums s = side_sums(w, T_G);
    // P_l = 2 E_l / w level by level, so both ratios coincide.
    const double r = s.second / (s.mean * s.mean);
    return {r, r};
}

double gearing_height(double Y, double T_G, double Mg, double p) {
    check_p(p);
    check_y(Y, p);
    return T_G / Mg * std::log1p(Y / (1.0 - p));
}

double gearing_height_essential(double Y, double T_G, double Mg, double p) {
    check_p(p);
    check_y(Y, p);
    const double r = (1.0 - p) / (Y + 1.0 - p);
    return 0.5 * T_G / Mg * (1.0 - r * r);
}

ExpansionWorkSampler::ExpansionWorkSampler(int n_steps, double T_G, double p) {
    if (n_steps < 1) throw ParameterError("expansion needs at least one step");
    check_temperature(T_G);
    check_p(p);
    const double w0 = 1.0 - p;
    cdf_.resize(n_steps);
    inv_w2_drop_.resize(n_steps);
    for (int m = 0; m < n_steps; ++m) {
        const double wa = w0 + (1.0 - p) * m / n_steps;
        const double wb = w0 + (1.0 - p) * (m + 1) / n_steps;
        inv_w2_drop_[m] = 1.0 / (wa * wa) - 1.0 / (wb * wb);
        const double wbar2 = wa * wb;
        const double c = 4.0 / wbar2;
        auto& cdf = cdf_[m];
        double acc = 0.0;
        for (std::uint64_t l = 1;; ++l) {
            const double wt = std::exp(-c * (double(l) * double(l) - 1.0) / T_G);
            if (l > 1 && wt < kBoltzmannCutoff) break;
            acc += wt;
            cdf.push_back(acc);
        }
        for (double& v : cdf) v /= acc;
    }
}

double ExpansionWorkSampler::sample(Rng& rng) const {
    double total = 0.0;
    for (std::size_t m = 0; m < cdf_.size(); ++m) {
        const auto& cdf = cdf_[m];
        const double u = uniform01(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const double l = double(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1) + 1);
        total += 4.0 * l * l * inv_w2_drop_[m];
    }
    return total;
}

double mc_expansion_work(int n_steps, double T_G, double p, std::uint64_t seed) {
    ExpansionWorkSampler sampler(n_steps, T_G, p);
    Rng rng = make_rng(seed);
    return sampler.sample(rng);
}

std::vector<double> mc_expansion_work_batch(int n_steps, double T_G, double p,
                                            std::uint64_t seed0, std::uint64_t count) {
    ExpansionWorkSampler sampler(n_steps, T_G, p);
    std::vector<double> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Rng rng = make_rng(seed0 + i);
        out.push_back(sampler.sample(rng));
    }
    return out;
}

}  // namespace psz
