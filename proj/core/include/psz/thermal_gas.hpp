#pragma once

#include <cstdint>
#include <vector>

#include "psz/stats.hpp"

namespace psz {

enum class GasMode { no_partition, partitioned, confined_left, confined_right };

struct GasThermalState {
    GasMode mode = GasMode::no_partition;
    double T_G = 1.0;
    double p = 0.01;
    double Y = 0.0;  // piston position, confined modes only

    void validate() const;
};

struct PartitionReport {
    double closed = 0.0;
    double summed = 0.0;
    double mean_E_closed = 0.0;
    double mean_E_summed = 0.0;
};

PartitionReport gas_partition(const GasThermalState& state);

struct InsertionWork {
    double W_odd = 0.0;
    double W_even = 0.0;
    double W_mean = 0.0;
};

InsertionWork insertion_work(double T_G, double p);

// Boltzmann-weighted level shifts from the unperturbed box to the
// infinite-barrier limit, averaged separately per symmetry.
InsertionWork insertion_work_sum(double T_G, double p);

enum class ExpansionRegime { isolated, essential, isothermal };

const char* to_string(ExpansionRegime r);

// Pressure is reported as the outward force on the piston (positive);
// W > 0 is work extracted from the gas, measured from Y = 0.
struct ExpansionPoint {
    double E = 0.0;
    double P = 0.0;
    double T = 0.0;
    double W = 0.0;
};

ExpansionPoint expansion_profile(ExpansionRegime regime, double Y, double T_G, double p);

// Same quantities from level sums: one-side box of width Y+1-p, levels
// 4l^2/(Y+1-p)^2, populations set by the regime.
ExpansionPoint expansion_profile_sum(ExpansionRegime regime, double Y, double T_G, double p);

// Work done on the gas when an isolated expansion to Y = 1-p is followed by
// rethermalisation at T_G and an isolated recompression back to Y = 0.
// Negative: work is put in.
double isolated_recompression_work(double T_G);
double isolated_recompression_work_sum(double T_G, double p);

// Isothermal compression from Y = 1-p back to 0, as work extracted (negative).
double isothermal_compression_work(double T_G);
double isothermal_compression_work_sum(double T_G, double p);

struct FluctuationRatios {
    double E_ratio = 0.0;  // <E^2>/<E>^2
    double P_ratio = 0.0;  // <P^2>/<P>^2
};

FluctuationRatios fluctuation_moments(ExpansionRegime regime, double Y, double T_G, double p);
FluctuationRatios fluctuation_moments_sum(ExpansionRegime regime, double Y, double T_G, double p);

double gearing_height(double Y, double T_G, double Mg, double p);
double gearing_height_essential(double Y, double T_G, double Mg, double p);

// Equal-Y stepped isothermal expansion from Y = 0 to 1-p. Each step draws a
// level from the Boltzmann distribution at the geometric-mean width of the
// step and accrues that level's exact energy drop.
class ExpansionWorkSampler {
public:
    ExpansionWorkSampler(int n_steps, double T_G, double p);

    double sample(Rng& rng) const;
    int steps() const { return static_cast<int>(cdf_.size()); }

private:
    std::vector<std::vector<double>> cdf_;  // per step cumulative populations
    std::vector<double> inv_w2_drop_;       // 1/w_m^2 - 1/w_{m+1}^2
};

double mc_expansion_work(int n_steps, double T_G, double p, std::uint64_t seed);

// One realisation per seed in [seed0, seed0 + count).
std::vector<double> mc_expansion_work_batch(int n_steps, double T_G, double p,
                                            std::uint64_t seed0, std::uint64_t count);

}  // namespace psz
