#pragma once

#include <string>
#include <vector>

#include "qbrown/potentials.hpp"

namespace qbrown::resonant {

enum class DiffusionMethod { Quadrature, Bessel, ArrheniusLimit, EinsteinLimit };

struct DiffusionResult {
    double D = 0.0;
    DiffusionMethod method = DiffusionMethod::Quadrature;
    double integral_plus = 0.0;   // int over one period of (Phi'')^2 e^{beta Phi}
    double integral_minus = 0.0;  // int over one period of e^{-beta Phi}
};

/// Effective diffusion coefficient in a periodic potential with
/// curvature-derived friction:
///   D = 4 pi rho_m c^3 kB T a^2 / [ int_0^a (Phi'')^2 e^{beta Phi} dx
///                                   int_0^a e^{-beta Phi} dx ].
/// Throws FlatPotential when the curvature integral vanishes (the friction
/// model is singular there and D is unbounded).
DiffusionResult lifson_jackson(const potentials::PotentialSpec& spec,
                               const potentials::BathSpec& bath,
                               const SolverConfig& cfg = SolverConfig{});

/// Closed form for the single-cosine potential:
///   D = rho_m c^3 a^4 / { 4 pi^3 A [bA I0(bA) - I1(bA)] I0(bA) },  bA = beta A.
/// Evaluated with scaled Bessel functions so large beta A cannot overflow.
DiffusionResult fk_diffusion_bessel(double A, double a, const potentials::BathSpec& bath);

/// Leading large-argument asymptote of the closed form,
/// (rho c^3 a^4 / 2 pi^2 A) [bA/(bA-1)] e^{-2 bA}; its bA -> inf limit is the
/// bare Arrhenius law quoted for this model.
double fk_diffusion_arrhenius_asymptote(double A, double a, const potentials::BathSpec& bath);

enum class DimerMode { Rigid, Rotating };
enum class RotatingAverage { Mobility, Diffusivity };

struct SweepPoint {
    double parameter;  // l for dimer sweeps, N for chain sweeps
    double D;
    bool singular;  // effective potential flat: frictionless under this model
};

/// D(l) for a dimer of length l. Rigid mode feeds the effective amplitude
/// 2A cos(pi l cos(phi)/a) to the closed form; points where it vanishes are
/// flagged singular instead of smoothed over. Rotating mode averages the
/// phi-conditional problem over orientations with the quasi-equilibrium
/// weight I0(beta A_eff(phi)); mobility averaging (1/D) keeps the integrand
/// finite through the resonance zeros, the diffusivity alternative does not
/// and is provided for comparison only.
std::vector<SweepPoint> dimer_sweep(double A, double a, const std::vector<double>& l_values,
                                    const potentials::BathSpec& bath, DimerMode mode,
                                    double phi = 0.0,
                                    RotatingAverage avg = RotatingAverage::Mobility,
                                    const SolverConfig& cfg = SolverConfig{});

struct ChainSweepPoint {
    int N;
    double D;
    double envelope_short;  // Dirichlet amplitude of the l1 component
    double envelope_long;   // Dirichlet amplitude of the l2 component
    bool singular;
};

/// D(N) for chains of N beads over the joint period of the two substrate
/// components; resonance shows up as period-l2/l extrema in N.
std::vector<ChainSweepPoint> chain_sweep(const potentials::Chain& base, int N_min, int N_max,
                                         const potentials::BathSpec& bath,
                                         const SolverConfig& cfg = SolverConfig{});

enum class ExtremumKind { Maximum, Minimum, Singular };

struct Extremum {
    double parameter;
    ExtremumKind kind;
};

/// Interior local extrema (and singular points) of a sweep.
std::vector<Extremum> find_extrema(const std::vector<SweepPoint>& sweep);
std::vector<Extremum> find_extrema(const std::vector<ChainSweepPoint>& sweep);

/// Zero-temperature quantum dispersion in the single-cosine potential:
///   sigma_x^2(t) = (hbar^2 / 8 m A) ln(32 pi m A^2 t / bbar hbar^2).
/// Throws BelowOnset while the logarithm's argument is below 1.
double zero_T_quantum_fk_dispersion(double A, double m, double bbar, double hbar, double t);

}  // namespace qbrown::resonant
