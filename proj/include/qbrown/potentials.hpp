#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qbrown/numerics.hpp"

namespace qbrown::potentials {

/// Bath parameters. Temperature doubles as the temperament of living matter;
/// there is no separate code path for the latter. kB comes from the active
/// unit system (1 in reduced units).
struct BathSpec {
    double rho_m = 1.0;  // mass density of the solid
    double c = 1.0;      // sound velocity
    double T = 1.0;      // temperature (or temperament)
    double hbar = 0.0;   // action scale; 0 selects purely classical formulas
    double kB = 1.0;

    double thermal_energy() const { return kB * T; }
    double beta() const {
        require(T > 0.0, ErrorCode::ConfigError, "beta undefined at T = 0");
        return 1.0 / (kB * T);
    }
    void validate() const {
        require(rho_m > 0.0, ErrorCode::ConfigError, "bath.rho_m must be > 0");
        require(c > 0.0, ErrorCode::ConfigError, "bath.c must be > 0");
        require(T >= 0.0, ErrorCode::ConfigError, "bath.T must be >= 0");
        require(hbar >= 0.0, ErrorCode::ConfigError, "bath.hbar must be >= 0");
        require(kB > 0.0, ErrorCode::ConfigError, "bath.kB must be > 0");
    }
};

// Phi = m w0^2 x^2 / 2
struct Harmonic {
    double m = 1.0;
    double omega0 = 1.0;
};

// Phi = -m w1^2 x^2 / 2 (desorption barrier)
struct Barrier {
    double m = 1.0;
    double omega1 = 1.0;
};

// Phi = A cos(2 pi x / a)
struct FrenkelKantorova {
    double A = 1.0;
    double a = 1.0;
};

// Phi = 2 A cos(pi l cos(phi) / a) cos(2 pi x / a): a rigid dimer sliding
// along the surface; the effective amplitude vanishes at commensuration.
struct Dimer {
    double A = 1.0;
    double a = 1.0;
    double l = 1.0;
    double phi = 0.0;
};

// Linear chain of N beads spaced l apart, each feeling two Fourier
// components of the substrate: Phi_N(x) = sum_j A1 cos(2 pi (x + j l)/l1)
//                                        + A2 cos(2 pi (x + j l)/l2).
struct Chain {
    int N = 1;
    double l = 1.0;
    double A1 = 0.0;
    double l1 = 1.0;
    double A2 = 1.0;
    double l2 = 6.0;
};

struct Tabulated {
    numerics::CubicSpline spline;
};

using PotentialSpec = std::variant<Harmonic, Barrier, FrenkelKantorova, Dimer, Chain, Tabulated>;

struct PotentialValue {
    double phi;
    double dphi;
    double d2phi;
};

void validate(const PotentialSpec& spec);

/// Phi and its first two derivatives (analytic for closed forms, spline
/// coefficients for Tabulated).
PotentialValue evaluate(const PotentialSpec& spec, double x);

/// Effective amplitude 2A cos(pi l cos(phi) / a) of the dimer potential.
double dimer_effective_amplitude(const Dimer& d);

/// Spatial period of a periodic spec. Harmonic/Barrier throw NotPeriodic;
/// Tabulated is treated as one period spanning its grid when the endpoint
/// values agree.
double period(const PotentialSpec& spec);

/// Friction profile b(x) = (Phi'')^2 / (4 pi rho_m c^3), from the relation
/// (4 pi rho_m c^3 B)^{1/2} = d_x d_x Phi between dissipation and the static
/// subsystem-bath interaction.
double friction_profile(const PotentialSpec& spec, const BathSpec& bath, double x);

/// Period average of b(x); closed form 2 pi^3 A^2 / (rho_m c^3 a^4) for the
/// single-cosine potential, adaptive quadrature otherwise.
double mean_friction(const PotentialSpec& spec, const BathSpec& bath,
                     const SolverConfig& cfg = SolverConfig{});

/// Dirichlet-kernel amplitude |sin(N u/2)/sin(u/2)| of the N-fold sum of a
/// component with wavenumber 2 pi / lc and bead spacing l (the resonance
/// envelope used by the chain sweeps).
double chain_envelope(int N, double l, double lc);

/// Two-column CSV (x, Phi), optional header, strictly increasing x.
Tabulated load_tabulated_csv(const std::string& path);

}  // namespace qbrown::potentials
