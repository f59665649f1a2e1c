#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace psz {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream) pairs.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform variate on [0,1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct MeanError {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Accumulates a long-run per-step average from a chain that regenerates.
// Each complete renewal cycle contributes one (reward, length) batch and
// the standard error comes from the ratio estimator over those batches.
class RenewalAccumulator {
public:
    void add_step(double reward);
    void close_cycle();

    std::uint64_t steps() const { return steps_; }
    std::uint64_t complete_cycles() const { return rewards_.size(); }
    MeanError estimate() const;

private:
    std::vector<double> rewards_;
    std::vector<double> lengths_;
    double total_reward_ = 0.0;
    std::uint64_t steps_ = 0;
    double open_reward_ = 0.0;
    double open_length_ = 0.0;
};

// Sample mean and variance of a vector.
struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;
};
SampleMoments sample_moments(const std::vector<double>& xs);

// Boltzmann-weighted sums over a level ladder E(1) <= E(2) <= ...
// Summation stops once a weight falls below `cutoff` relative to the first.
struct BoltzmannSums {
    double z_shifted = 0.0;  // sum of exp(-(E_n - E_1)/T)
    double e1 = 0.0;         // E_1, the shift
    double mean = 0.0;       // <E>
    double second = 0.0;     // <E^2>
    std::uint64_t levels = 0;

    double log_z(double T) const;
    double variance() const { return second - mean * mean; }
};

inline constexpr double kBoltzmannCutoff = 1e-12;

BoltzmannSums boltzmann_sums(const std::function<double(std::uint64_t)>& energy,
                             double T, double cutoff = kBoltzmannCutoff);

}  // namespace psz
