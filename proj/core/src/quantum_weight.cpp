#include "psz/quantum_weight.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "psz/errors.hpp"
#include "psz/stats.hpp"

namespace psz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kAi0 = 0.355028053887817239260L;  // Ai(0)
constexpr long double kAip0 = 0.258819403792806798405L;  // -Ai'(0)

AiryValue airy_series(double zd) {
    // Ai = c1 f - c2 g with the two Maclaurin solutions f, g, summed in
    // extended precision to absorb cancellation on the oscillatory side.
    using real = long double;
    const real z = zd;
    const real z3 = z * z * z;
    real f = 1, g = z, gp = 1;
    real tf = 1, tg = z, tfp = z * z / 2, tgp = 1;
    real fp = tfp;
    for (int k = 0; k < 200; ++k) {
        const real a = 3.0L * k;
        tf *= z3 / ((a + 2) * (a + 3));
        tg *= z3 / ((a + 3) * (a + 4));
        tgp *= z3 / ((a + 3) * (a + 1));
        if (k > 0) tfp *= z3 / ((a + 2) * a);
        f += tf;
        g += tg;
        gp += tgp;
        if (k > 0) fp += tfp;
        const real mag = std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp);
        if (mag < 1e-21L * (std::abs(f) + std::abs(g) + 1)) break;
    }
    const real c1 = kAi0, c2 = kAip0;
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

// Coefficients u_k of the asymptotic expansions; v_k = -(6k+1)/(6k-1) u_k.
struct AsymptoticTerms {
    static constexpr int kMax = 40;
    double u[kMax];
    double v[kMax];
    AsymptoticTerms() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kMax; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
            v[k] = -(6.0 * k + 1) / (6.0 * k - 1) * u[k];
        }
    }
};

const AsymptoticTerms& terms() {
    static const AsymptoticTerms t;
    return t;
}

// Sum of (-1)^k c_k zeta^-k, stopped at the smallest term.
double alternating_sum(const double* c, double zeta) {
    double sum = 0.0, term_prev = INFINITY, zk = 1.0;
    for (int k = 0; k < AsymptoticTerms::kMax; ++k) {
        const double term = c[k] * zk;
        if (std::abs(term) > term_prev) break;
        sum += (k % 2 == 0) ? term : -term;
        term_prev = std::abs(term);
        if (term_prev < 1e-17 * std::abs(sum)) break;
        zk /= zeta;
    }
    return sum;
}

AiryValue airy_asymptotic_positive(double z) {
    const auto& t = terms();
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double q = std::pow(z, 0.25);
    const double e = std::exp(-zeta) / (2.0 * std::sqrt(kPi));
    return {e / q * alternating_sum(t.u, zeta), -e * q * alternating_sum(t.v, zeta)};
}

AiryValue airy_asymptotic_negative(double z) {
    const auto& t = terms();
    const double x = -z;
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double q = std::pow(x, 0.25);
    const double th = zeta + kPi / 4;
    const double s = std::sin(th), c = std::cos(th);

    // Even and odd parts of the u and v series, each stopped at its
    // smallest term.
    auto split = [zeta](const double* coef, double& even, double& odd) {
        even = 0.0;
        odd = 0.0;
        double prev = INFINITY;
        double zk = 1.0;
        for (int k = 0; k < AsymptoticTerms::kMax; ++k) {
            const double term = coef[k] * zk;
            if (std::abs(term) > prev) break;
            prev = std::abs(term);
            const int j = k / 2;
            const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            if (k % 2 == 0) even += sgn * term;
            else odd += sgn * term;
            zk /= zeta;
        }
    };
    double ue, uo, ve, vo;
    split(t.u, ue, uo);
    split(t.v, ve, vo);
    const double rp = 1.0 / std::sqrt(kPi);
    return {rp / q * (s * ue - c * uo), -rp * q * (c * ve + s * vo)};
}

AiryValue airy_unbounded(double z) {
    if (z <= kAirySeriesLimit && z >= -kAiryOscillatorySeriesLimit) return airy_series(z);
    return z > 0 ? airy_asymptotic_positive(z) : airy_asymptotic_negative(z);
}

double asymptotic_zero(std::uint64_t n) {
    const double t = 3.0 * kPi * (4.0 * static_cast<double>(n) - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    const double series =
        1.0 + t2 * (5.0 / 48 + t2 * (-5.0 / 36 + t2 * (77125.0 / 82944 + t2 * (-108056875.0 / 6967296))));
    return -std::pow(t, 2.0 / 3.0) * series;
}

void check_height(double h) {
    if (!(h >= 0.0)) throw ParameterError("shelf height must be >= 0");
}

}  // namespace

void WeightParams::validate() const {
    if (!(Mg > 0.0) || !(H > 0.0) || !(T_W > 0.0))
        throw ParameterError("weight parameters Mg, H, T_W must be positive");
}

AiryValue airy_value_and_derivative(double z) {
    if (!(std::abs(z) <= kAiryDomain))
        throw DomainTooLarge("Airy argument outside |z| <= 20: " + std::to_string(z));
    return airy_unbounded(z);
}

double airy_zero(std::uint64_t n) {
    if (n == 0) throw ParameterError("Airy zero index must be >= 1");
    double z = asymptotic_zero(n);
    if (n > 100) return z;
    for (int it = 0; it < 50; ++it) {
        const AiryValue v = airy_unbounded(z);
        const double dz = v.ai / v.aip;
        z -= dz;
        if (std::abs(dz) < 1e-15 * std::abs(z)) break;
    }
    return z;
}

double airy_prime_at_zero(std::uint64_t n) { return airy_unbounded(airy_zero(n)).aip; }

double airy_zero_leading(double n) { return -std::pow(1.5 * kPi * n, 2.0 / 3.0); }

double weight_energy(std::uint64_t n, double h, const WeightParams& w) {
    return (h - airy_zero(n) * w.H) * w.Mg;
}

double alpha_above(std::uint64_t n, double h, const WeightParams& w) {
    if (n == 0) throw ParameterError("level must be >= 1");
    check_height(h);
    const double nd = static_cast<double>(n);
    const double hr = h / w.H;
    if (nd < 2.0 / (3.0 * kPi) * std::pow(hr, 1.5)) return 0.0;
    const double inner = 1.0 - std::pow(2.0 / (3.0 * kPi * nd), 2.0 / 3.0) * hr;
    return inner <= 0.0 ? 0.0 : std::pow(inner, 0.25);
}

ShelfSplit shelf_split(std::uint64_t n, double h, const WeightParams& w) {
    ShelfSplit s;
    s.n = n;
    s.h = h;
    s.alpha = alpha_above(n, h, w);
    s.beta = std::sqrt(1.0 - s.alpha * s.alpha);
    return s;
}

double asymptotic_node_height(std::uint64_t n, std::uint64_t m, const WeightParams& w) {
    return (airy_zero_leading(static_cast<double>(m)) - airy_zero_leading(static_cast<double>(n))) *
           w.H;
}

double p_above_shelf(double h, const WeightParams& w) {
    check_height(h);
    return std::exp(-w.Mg * h / w.T_W);
}

double p_above_shelf_sum(double h, const WeightParams& w) {
    check_height(h);
    const double beta = w.energy_scale() / w.T_W;
    const double a1 = airy_zero(1);
    double z = 0.0, above = 0.0;
    for (std::uint64_t m = 1;; ++m) {
        const double wt = std::exp((airy_zero(m) - a1) * beta);
        if (m > 1 && wt < kBoltzmannCutoff) break;
        const double a = alpha_above(m, h, w);
        z += wt;
        above += wt * a * a;
    }
    return above / z;
}

WeightMomentsReport weight_thermal_moments(double h, const WeightParams& w) {
    check_height(h);
    const double T = w.T_W;
    const double mgh = w.Mg * h;
    WeightMomentsReport r;
    r.closed.Z = std::exp(-mgh / T) / (2.0 * std::sqrt(kPi)) * std::pow(T / w.energy_scale(), 1.5);
    r.closed.mean_E = mgh + 1.5 * T;
    r.closed.var_E = 1.5 * T * T;
    r.closed.mean_KE = 0.5 * T;
    r.closed.mean_PE = T + mgh;

    const BoltzmannSums s =
        boltzmann_sums([&](std::uint64_t n) { return weight_energy(n, h, w); }, T);
    r.levels = s.levels;
    r.summed.Z = std::exp(s.log_z(T));
    r.summed.mean_E = s.mean;
    r.summed.var_E = s.variance();
    r.summed.mean_KE = (s.mean - mgh) / 3.0;
    r.summed.mean_PE = s.mean - r.summed.mean_KE;
    return r;
}

ConditionalEnergies conditional_energies(double h, const WeightParams& w) {
    if (!(h > 0.0)) throw ParameterError("conditional energies need h > 0");
    const double T = w.T_W;
    const double x = w.Mg * h / T;
    ConditionalEnergies c;
    c.E_above = 1.5 * T + w.Mg * h;
    c.E_below = 1.5 * T - w.Mg * h * std::exp(-x) / -std::expm1(-x);
    return c;
}

double weight_entropy_sum(double h, const WeightParams& w) {
    const double T = w.T_W;
    const BoltzmannSums s =
        boltzmann_sums([&](std::uint64_t n) { return weight_energy(n, h, w); }, T);
    // S = ln Z + <E>/T, written with the shifted sum to avoid cancellation.
    return std::log(s.z_shifted) + (s.mean - s.e1) / T;
}

}  // namespace psz
