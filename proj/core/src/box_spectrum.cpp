#include "psz/box_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "psz/errors.hpp"

namespace psz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeamWidth = 1e-8;  // |E - V| below this is treated as E = V

void check_level(int l) {
    if (l < 1) throw ParameterError("level must be >= 1, got " + std::to_string(l));
}

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("barrier fraction p must lie in (0,1)");
}

// Interior solution pieces as functions of x = K_b^2 (negative below the
// barrier top). With k = sqrt|x|:
//   S(X) = sin(kX)/k,  X,  sinh(kX)/k
//   C(X) = cos(kX),    1,  cosh(kX)
struct Interior {
    double S;  // S(p)
    double C;  // C(p)
    double scale;  // 1 above the barrier top, cosh(k p) below it
};

// Values at X = p, already divided by `scale`.
Interior interior_at_p(double x, double p, bool seam) {
    if (seam || x == 0.0) return {p, 1.0, 1.0};
    if (x > 0.0) {
        const double k = std::sqrt(x);
        return {std::sin(k * p) / k, std::cos(k * p), 1.0};
    }
    const double k = std::sqrt(-x);
    return {std::tanh(k * p) / k, 1.0, std::cosh(k * p)};
}

double kb_squared_of(double E, double V) { return 0.25 * kPi * kPi * (E - V); }

bool on_seam(double E, double V) { return std::abs(E - V) < kSeamWidth; }

double residual_in_energy(Symmetry s, double E, double V, double p) {
    return continuity_residual(s, ka_from_energy(E), V, p);
}

struct Bracket {
    double lo;
    double hi;
};

// Newton polish in E, kept inside the bracket. Returns false on failure.
bool newton_polish(Symmetry s, double V, double p, double& E, const Bracket& br,
                   const ContinuationOptions& opt) {
    for (int it = 0; it <= opt.max_newton; ++it) {
        const double f = residual_in_energy(s, E, V, p);
        if (!std::isfinite(f)) return false;
        if (std::abs(f) < opt.residual_tol) return true;
        if (it == opt.max_newton) break;
        const double h = 1e-7 * std::max(1.0, E);
        const double df =
            (residual_in_energy(s, E + h, V, p) - residual_in_energy(s, E - h, V, p)) / (2 * h);
        if (df == 0.0 || !std::isfinite(df)) return false;
        const double next = E - f / df;
        if (!(next >= br.lo && next <= br.hi)) return false;
        E = next;
    }
    return false;
}

double slope_dE_dV(Symmetry s, double E, double V, double p) {
    const double hE = 1e-7 * std::max(1.0, E);
    const double hV = 1e-7 * std::max(1.0, V);
    const double fE =
        (residual_in_energy(s, E + hE, V, p) - residual_in_energy(s, E - hE, V, p)) / (2 * hE);
    const double Vlo = std::max(0.0, V - hV);
    const double fV = (residual_in_energy(s, E, V + hV, p) - residual_in_energy(s, E, Vlo, p)) /
                      (V + hV - Vlo);
    if (fE == 0.0 || !std::isfinite(fE) || !std::isfinite(fV)) return 0.0;
    return std::max(0.0, -fV / fE);
}

Eigenstate make_state(Symmetry s, int l, double V, double p, double E) {
    Eigenstate st;
    st.symmetry = s;
    st.level = l;
    st.barrier_height = V;
    st.p = p;
    st.K_a = ka_from_energy(E);
    st.energy = E;
    if (s == Symmetry::even && on_seam(E, V)) {
        const double ka = (2 * l - 1) * kPi / (2 * (1 - p));
        if (on_seam(energy_from_ka(ka), V)) {
            st.K_a = ka;
            st.energy = energy_from_ka(ka);
        }
    }
    return st;
}

// Integral over [0, p] of S(X)^2 (odd) or C(X)^2 (even), unscaled.
double interior_norm(Symmetry s, double x, double p) {
    const double y = x * p * p;
    if (std::abs(y) < 1e-2) {
        if (s == Symmetry::odd) {
            const double p3 = p * p * p;
            return p3 * (1.0 / 3 - y / 15 + 2 * y * y / 315 - y * y * y / 2835);
        }
        return p * (1.0 - y / 3 + y * y / 15 - 2 * y * y * y / 315);
    }
    if (x > 0.0) {
        const double k = std::sqrt(x);
        const double t = std::sin(2 * k * p) / (4 * k);
        return s == Symmetry::odd ? (p / 2 - t) / x : p / 2 + t;
    }
    const double k = std::sqrt(-x);
    const double t = std::sinh(2 * k * p) / (4 * k);
    return s == Symmetry::odd ? (t - p / 2) / (-x) : p / 2 + t;
}

double interior_value(Symmetry s, double x, double X) {
    if (x == 0.0) return s == Symmetry::odd ? X : 1.0;
    if (x > 0.0) {
        const double k = std::sqrt(x);
        return s == Symmetry::odd ? std::sin(k * X) / k : std::cos(k * X);
    }
    const double k = std::sqrt(-x);
    return s == Symmetry::odd ? std::sinh(k * X) / k : std::cosh(k * X);
}

}  // namespace

const char* to_string(Symmetry s) { return s == Symmetry::odd ? "odd" : "even"; }

void GasBoxParams::validate() const {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    check_p(p);
}

double Eigenstate::kb_squared() const { return kb_squared_of(energy, barrier_height); }

double energy_from_ka(double K_a) { return 4.0 * K_a * K_a / (kPi * kPi); }

double ka_from_energy(double E) { return 0.5 * kPi * std::sqrt(std::max(E, 0.0)); }

double unperturbed_energy(Symmetry s, int l) {
    check_level(l);
    const double n = s == Symmetry::odd ? 2.0 * l : 2.0 * l - 1.0;
    return n * n;
}

double limit_energy(int l, double p) {
    check_level(l);
    const double r = 2.0 * l / (1.0 - p);
    return r * r;
}

double continuity_residual(Symmetry s, double K_a, double V, double p) {
    const double E = energy_from_ka(K_a);
    const double x = kb_squared_of(E, V);
    const Interior in = interior_at_p(x, p, on_seam(E, V));
    const double u = K_a * (1.0 - p);
    const double su = std::sin(u);
    const double cu = std::cos(u);
    if (s == Symmetry::odd) return in.S * cu + in.C * su / K_a;
    const double xs = on_seam(E, V) ? 0.0 : x * in.S;
    return in.C * cu - xs * su / K_a;
}

std::vector<Eigenstate> eigencurve(Symmetry s, int l, const std::vector<double>& Vs, double p,
                                   const ContinuationOptions& opt) {
    check_level(l);
    check_p(p);
    if (!std::is_sorted(Vs.begin(), Vs.end()))
        throw ParameterError("barrier heights must be ascending");
    if (!Vs.empty() && Vs.front() < 0.0) throw ParameterError("barrier height must be >= 0");

    const double e_lim = limit_energy(l, p);
    double E = unperturbed_energy(s, l);
    double V = 0.0;
    std::vector<Eigenstate> out;
    out.reserve(Vs.size());

    for (double target : Vs) {
        int halvings = 0;
        double ratio = opt.growth;
        while (V < target) {
            double next = V == 0.0 ? std::min(opt.start_v, target) : std::min(V * ratio, target);
            if (V == 0.0 && halvings > 0) next = std::min(opt.start_v, target) * std::ldexp(1.0, -halvings);

            const double slope = slope_dE_dV(s, E, V, p);
            double Epred = std::clamp(E + slope * (next - V), E, e_lim);
            const Bracket br{E - 1e-12 * E, e_lim};
            if (newton_polish(s, next, p, Epred, br, opt) && Epred >= E - 1e-12 * E &&
                Epred < e_lim) {
                E = std::max(E, Epred);
                V = next;
                ratio = std::min(opt.growth, ratio * 1.5);
                halvings = 0;
                continue;
            }
            if (++halvings > opt.max_halvings)
                throw ContinuationStall("continuation stalled for " + std::string(to_string(s)) +
                                        " level " + std::to_string(l) + " near V=" +
                                        std::to_string(V));
            ratio = std::sqrt(ratio);
        }
        out.push_back(make_state(s, l, target, p, E));
    }
    return out;
}

Eigenstate solve_eigenvalue(Symmetry s, int l, double V, double p,
                            const ContinuationOptions& opt) {
    if (V < 0.0) throw ParameterError("barrier height must be >= 0");
    return eigencurve(s, l, {V}, p, opt).front();
}

Eigenstate seam_state(Symmetry s, int l, double p) {
    check_level(l);
    check_p(p);
    if (s == Symmetry::even) {
        const double ka = (2 * l - 1) * kPi / (2 * (1 - p));
        const double E = energy_from_ka(ka);
        Eigenstate st;
        st.symmetry = s;
        st.level = l;
        st.barrier_height = E;
        st.p = p;
        st.K_a = ka;
        st.energy = E;
        return st;
    }
    const auto g = [p](double K) {
        const double u = K * (1 - p);
        return p * K * std::cos(u) + std::sin(u);
    };
    const double lo = l * kPi;
    const double hi = l * kPi / (1 - p);
    boost::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    const double ka = 0.5 * (a + b);
    Eigenstate st;
    st.symmetry = s;
    st.level = l;
    st.p = p;
    st.K_a = ka;
    st.energy = energy_from_ka(ka);
    st.barrier_height = st.energy;
    return st;
}

double hba_energy(Symmetry s, int l, double V, double p) {
    const double kc = 0.5 * kPi * std::sqrt(V);
    const double e = std::exp(-2 * kc * p);
    const double sign = s == Symmetry::odd ? -1.0 : 1.0;
    return limit_energy(l, p) * (1.0 - 2.0 * (1.0 + sign * 2.0 * e) / (kc * (1.0 - p)));
}

double hba_splitting(int l, double V, double p) {
    const double kc = 0.5 * kPi * std::sqrt(V);
    const double r = 4.0 * l / (1.0 - p);
    return r * r * std::exp(-2 * kc * p) / (kc * (1.0 - p));
}

ZurekEnergy zurek_energy(int l, double V, double p) {
    const double kc = 0.5 * kPi * std::sqrt(V);
    const double r = 4.0 / (1.0 - p);
    return {limit_energy(l, p), r * r * std::exp(-2 * kc * p) / kPi};
}

double wavefunction(const Eigenstate& st, double X) {
    if (X < -1.0 || X > 1.0) throw ParameterError("X must lie in [-1,1]");
    const double p = st.p;
    const double ka = st.K_a;
    const double x = on_seam(st.energy, st.barrier_height) ? 0.0 : st.kb_squared();
    const double u = ka * (1 - p);

    // Outside: A sin(K_a(1-|X|)) with A = 1 before normalisation.
    // Inside amplitude B from value or slope matching, whichever is better
    // conditioned.
    const double Sp = interior_value(Symmetry::odd, x, p);
    const double Cp = interior_value(Symmetry::even, x, p);
    double B;
    if (st.symmetry == Symmetry::odd) {
        B = std::abs(Cp) >= std::abs(Sp) * ka ? -ka * std::cos(u) / Cp : std::sin(u) / Sp;
    } else {
        const double dC = -x * Sp;  // C'(p)
        B = std::abs(Cp) * ka >= std::abs(dC) ? std::sin(u) / Cp : -ka * std::cos(u) / dC;
    }

    const double outside = (1 - p) / 2 - std::sin(2 * u) / (4 * ka);
    const double norm2 = 2.0 * (outside + B * B * interior_norm(st.symmetry, x, p));
    const double A = 1.0 / std::sqrt(norm2);

    const double ax = std::abs(X);
    double v = ax >= p ? std::sin(ka * (1 - ax)) : B * interior_value(st.symmetry, x, ax);
    v *= A;
    if (st.symmetry == Symmetry::odd && X < 0) v = -v;
    return v;
}

}  // namespace psz
