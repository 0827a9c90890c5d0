#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbrown/numerics.hpp"

namespace qbrown::qdisp {

struct DispersionSeries {
    std::vector<double> t;
    std::vector<double> sigma_x2;
    std::vector<double> sigma_p2;  // empty unless the model tracks momentum
    std::string model;
    double m = 1.0, b = 0.0, omega0 = 0.0, kBT = 0.0, hbar = 0.0;
};

/// Thermal de Broglie length hbar / 2 sqrt(m kB T).
double thermal_length(double m, double kBT, double hbar);

/// Ermakov dynamics of the dispersion radius:
///   m s'' + b s' + m w0^2 s = hbar^2 / 4 m s^3 + kB T / s.
/// Covers the free packet (b = w0 = T = 0), the damped oscillator and the
/// thermal spreading regimes. Throws Collapse when hbar = T = 0 and the
/// radius hits zero (genuinely singular there).
DispersionSeries ermakov_evolve(double sigma0, double sigma_dot0, double m, double b,
                                double omega0, double kBT, double hbar,
                                std::vector<double> t_grid,
                                const SolverConfig& cfg = SolverConfig{});

/// Overdamped dispersion equation b d_t s2 + 2 m w0^2 s2 = hbar^2 / 2 m s2 + 2 kB T.
DispersionSeries overdamped_dispersion(double sigma0_sq, double m, double b, double omega0,
                                       double kBT, double hbar, std::vector<double> t_grid,
                                       const SolverConfig& cfg = SolverConfig{});

/// Stationary point of the overdamped equation (w0 > 0):
/// s2_eq = (kBT + sqrt(kBT^2 + hbar^2 w0^2)) / 2 m w0^2.
double overdamped_fixed_point(double m, double omega0, double kBT, double hbar);

/// Quantum Einstein law: the positive root of
///   s2 - lamT^2 ln(1 + s2/lamT^2) = 2 D t
/// (bracketed Newton; the left side is strictly increasing in s2).
/// lamT = 0 degenerates to the classical 2 D t.
double quantum_einstein_sigma(double t, double D, double lambda_T,
                              const SolverConfig& cfg = SolverConfig{});

/// sigma_p^2 = m kB T + hbar^2 / 4 sigma_x^2, optionally with the
/// time-energy term + hbar m / t.
double maxwell_heisenberg(double sigma_x2, double m, double kBT, double hbar,
                          std::optional<double> t = std::nullopt);

struct OscillatorEnergy {
    double semi;   // (kBT/2) [sqrt(1 + (beta hbar w0)^2) + 1]
    double exact;  // (hbar w0 / 2) coth(beta hbar w0 / 2)
};

/// Mean oscillator energy: the Maxwell-Heisenberg/virial estimate alongside
/// the exact canonical value. T = 0 routes through the hbar w0 / 2 limit.
OscillatorEnergy oscillator_energy(double kBT, double omega0, double hbar);

}  // namespace qbrown::qdisp
