#include "psz/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace psz {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

void RenewalAccumulator::add_step(double reward) {
    total_reward_ += reward;
    open_reward_ += reward;
    open_length_ += 1.0;
    ++steps_;
}

void RenewalAccumulator::close_cycle() {
    if (open_length_ == 0.0) return;
    rewards_.push_back(open_reward_);
    lengths_.push_back(open_length_);
    open_reward_ = 0.0;
    open_length_ = 0.0;
}

MeanError RenewalAccumulator::estimate() const {
    MeanError out;
    if (steps_ == 0) return out;
    out.mean = total_reward_ / static_cast<double>(steps_);

    const std::size_t n = rewards_.size();
    if (n < 2) return out;

    double sum_r = 0.0, sum_l = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_r += rewards_[i];
        sum_l += lengths_[i];
    }
    const double ratio = sum_r / sum_l;
    const double mean_len = sum_l / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = rewards_[i] - ratio * lengths_[i];
        ss += d * d;
    }
    const double var = ss / static_cast<double>(n - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(n)) / mean_len;
    return out;
}

SampleMoments sample_moments(const std::vector<double>& xs) {
    SampleMoments m;
    if (xs.empty()) return m;
    double s = 0.0;
    for (double x : xs) s += x;
    m.mean = s / static_cast<double>(xs.size());
    if (xs.size() < 2) return m;
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.variance = ss / static_cast<double>(xs.size() - 1);
    return m;
}

double BoltzmannSums::log_z(double T) const { return std::log(z_shifted) - e1 / T; }

BoltzmannSums boltzmann_sums(const std::function<double(std::uint64_t)>& energy, double T,
                             double cutoff) {
    if (!(T > 0.0)) throw std::invalid_argument("temperature must be positive");
    BoltzmannSums out;
    out.e1 = energy(1);
    // Sums of w*(E-E1) keep the moments accurate when E1 dominates.
    double z = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::uint64_t n = 1;; ++n) {
        const double d = energy(n) - out.e1;
        const double w = std::exp(-d / T);
        if (n > 1 && w < cutoff) break;
        z += w;
        s1 += w * d;
        s2 += w * d * d;
        out.levels = n;
    }
    out.z_shifted = z;
    const double m1 = s1 / z;
    const double m2 = s2 / z;
    out.mean = out.e1 + m1;
    out.second = m2 + 2.0 * out.e1 * m1 + out.e1 * out.e1;
    return out;
}

}  // namespace psz
