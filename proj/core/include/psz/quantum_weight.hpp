#pragma once

#include <cstdint>

namespace psz {

struct WeightParams {
    double Mg = 1.0;   // weight force, energy per unit height
    double H = 1.0;    // characteristic height
    double T_W = 1.0;  // weight temperature
    // Shelf insertion is modelled as reversible and work-free. Ledgers
    // annotate rows that depend on it.
    bool negligible_shelf_work = true;

    void validate() const;
    double energy_scale() const { return Mg * H; }
};

struct AiryValue {
    double ai = 0.0;
    double aip = 0.0;  // derivative
};

inline constexpr double kAiryDomain = 20.0;
inline constexpr double kAirySeriesLimit = 5.5;
inline constexpr double kAiryOscillatorySeriesLimit = 8.5;

// Ai and Ai' on |z| <= 20. Maclaurin series on [-8.5, 5.5], asymptotic
// expansions outside. Throws DomainTooLarge beyond the domain.
AiryValue airy_value_and_derivative(double z);

// n-th negative zero of Ai. Newton-polished for n <= 100, high-order
// asymptotic form beyond.
double airy_zero(std::uint64_t n);

// Ai'(a_n). Large-n zeros lie outside the evaluation domain, so this uses
// the asymptotic expansions without the domain cap.
double airy_prime_at_zero(std::uint64_t n);

// Leading-order asymptotic zero, -(3 pi n / 2)^(2/3).
double airy_zero_leading(double n);

// E_n = (h - a_n H) Mg
double weight_energy(std::uint64_t n, double h, const WeightParams& w);

struct ShelfSplit {
    std::uint64_t n = 1;
    double h = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
};

// Amplitude of eigenstate n above a shelf at height h (asymptotic form).
double alpha_above(std::uint64_t n, double h, const WeightParams& w);
ShelfSplit shelf_split(std::uint64_t n, double h, const WeightParams& w);

// Height of the m-th node of eigenstate n using the leading asymptotic zeros.
double asymptotic_node_height(std::uint64_t n, std::uint64_t m, const WeightParams& w);

// P_1 = exp(-Mg h / T_W)
double p_above_shelf(double h, const WeightParams& w);

// sum_m exp(a_m MgH/T_W) alpha_m(h)^2 / Z_W0
double p_above_shelf_sum(double h, const WeightParams& w);

struct WeightMoments {
    double Z = 0.0;
    double mean_E = 0.0;
    double var_E = 0.0;
    double mean_KE = 0.0;
    double mean_PE = 0.0;
};

struct WeightMomentsReport {
    WeightMoments closed;
    WeightMoments summed;  // KE/PE split from the virial relation on the sums
    std::uint64_t levels = 0;
};

WeightMomentsReport weight_thermal_moments(double h, const WeightParams& w);

struct ConditionalEnergies {
    double E_above = 0.0;
    double E_below = 0.0;
};

ConditionalEnergies conditional_energies(double h, const WeightParams& w);

// Entropy of the thermal state computed from the level sums.
double weight_entropy_sum(double h, const WeightParams& w);

}  // namespace psz
