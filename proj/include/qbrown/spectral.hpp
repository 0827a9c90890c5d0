#pragma once

#include <variant>

#include "qbrown/numerics.hpp"

namespace qbrown::spectral {

/// Velocity spectral density of a thermal quantum Brownian particle:
/// S(w) = bbar hbar w coth(beta hbar w / 2) / (m^2 w^2 + bbar^2).
struct ThermalQuantum {
    double m = 1.0;
    double bbar = 1.0;
    double kBT = 1.0;
    double hbar = 1.0;
};

/// Radiating free electron: S(w) = hbar w tau0 / m (w^2 tau0^2 + 1).
struct Emitter {
    double m = 1.0;
    double tau0 = 1.0;
    double hbar = 1.0;
};

using SpectrumSpec = std::variant<ThermalQuantum, Emitter>;

/// S(w) for w >= 0. The thermal spectrum takes its classical limit
/// 2 kB T bbar / (m^2 w^2 + bbar^2) at w = 0 or hbar = 0.
double velocity_spectrum(const SpectrumSpec& spec, double omega);

struct ThermalMultiplier {
    double exact;      // (hbar w / 2) coth(beta hbar w / 2)
    double expansion;  // kB T + beta hbar^2 w^2 / 12
};

/// Quantum thermal-energy multiplier: the frequency-domain action of the
/// temperature operator, with its two-term semiclassical expansion.
ThermalMultiplier thermal_energy_multiplier(double omega, double kBT, double hbar);

struct CutoffResult {
    double numeric;   // root of (1/pi) int_0^Omega S dw = kB T / m
    double estimate;  // sqrt(2 pi bbar kB T / m hbar)
};

/// Spectral cutoff enforcing the thermal sum rule. Diverges in the classical
/// limit: hbar = 0 throws Unbounded.
CutoffResult cutoff_frequency(const ThermalQuantum& spec,
                              const SolverConfig& cfg = SolverConfig{});

struct EmitterConstants {
    double tau0;         // e^2 / 6 pi eps0 m c^3
    double Omega;        // 2 m c^2 / hbar
    double Omega_tau0;   // e^2 / 3 pi eps0 hbar c = 4 alpha / 3
    double sigma_v2;     // e^2 c / 3 pi^2 eps0 hbar
    double sigma_v_over_c;
};

/// Radiation-reaction constants of the free electron, evaluated from the SI
/// unit system. sigma_v2 equals (1/pi) int_0^Omega (hbar w tau0 / m) dw
/// identically under the one-sided integration convention used throughout.
EmitterConstants emitter_constants(const UnitSystem& units);

}  // namespace qbrown::spectral
