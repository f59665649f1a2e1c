#pragma once

// Single atom in a box of half-width 1 with a central barrier of half-width p
// and height V. Units: epsilon = L = 1, so E = (4/pi^2) K_a^2.

#include <vector>

namespace psz {

enum class Symmetry { odd, even };

const char* to_string(Symmetry s);

struct GasBoxParams {
    double epsilon = 1.0;
    double p = 0.01;

    void validate() const;
};

struct Eigenstate {
    Symmetry symmetry = Symmetry::even;
    int level = 1;
    double barrier_height = 0.0;  // V
    double p = 0.01;
    double K_a = 0.0;
    double energy = 0.0;

    // K_b^2 = (pi^2/4)(E - V); negative below the barrier top.
    double kb_squared() const;
};

double energy_from_ka(double K_a);
double ka_from_energy(double E);

// Energy of level l without a barrier: odd 4l^2, even (2l-1)^2.
double unperturbed_energy(Symmetry s, int l);

// Limit of both members of pair l as V grows without bound.
double limit_energy(int l, double p);

// Scaled continuity residual. Its zeros in K_a are the eigenvalues for the
// given V. The residual is one analytic function of (E - V), continuous
// across the E = V seam. Below the barrier top it is divided by cosh(K_c p).
double continuity_residual(Symmetry s, double K_a, double V, double p);

struct ContinuationOptions {
    double residual_tol = 1e-10;
    int max_newton = 50;
    double start_v = 1e-3;     // first nonzero V on the log ladder
    double growth = 1.25;      // ratio between successive V steps
    int max_halvings = 40;
};

// Follows level l of the given symmetry from V = 0 up to V.
Eigenstate solve_eigenvalue(Symmetry s, int l, double V, double p,
                            const ContinuationOptions& opt = {});

// Follows one level through an ascending list of barrier heights in a single
// continuation pass. Returns one state per requested V.
std::vector<Eigenstate> eigencurve(Symmetry s, int l, const std::vector<double>& Vs, double p,
                                   const ContinuationOptions& opt = {});

// State whose energy equals the barrier height exactly. Even symmetry has the
// closed form K_a = (2l-1)pi/(2(1-p)); odd symmetry solves tan(K_a(p-1)) = K_a p.
Eigenstate seam_state(Symmetry s, int l, double p);

// High-barrier asymptotic energy, K_c = (pi/2) sqrt(V).
double hba_energy(Symmetry s, int l, double V, double p);

// Splitting E_odd - E_even implied by the high-barrier asymptotics.
double hba_splitting(int l, double V, double p);

struct ZurekEnergy {
    double E_Z = 0.0;
    double delta_Z = 0.0;
    double upper() const { return E_Z + delta_Z; }
    double lower() const { return E_Z - delta_Z; }
};
ZurekEnergy zurek_energy(int l, double V, double p);

// Normalised wavefunction amplitude at X in [-1, 1].
double wavefunction(const Eigenstate& state, double X);

}  // namespace psz
