#include "qbrown/spectral.hpp"

#include <cmath>

namespace qbrown::spectral {

namespace {

// x coth(x) with the small-argument series; equals 1 at x = 0.
double xcoth(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x * x / 3.0;
    return x / std::tanh(x);
}

}  // namespace

double velocity_spectrum(const SpectrumSpec& spec, double omega) {
    require(omega >= 0.0, ErrorCode::ConfigError, "velocity_spectrum requires omega >= 0");
    return std::visit(
        [omega](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ThermalQuantum>) {
                const double lorentz = s.bbar / (s.m * s.m * omega * omega + s.bbar * s.bbar);
                // hbar w coth(beta hbar w / 2) -> 2 kB T (1 + ...) near w = 0
                const double x = (s.kBT > 0.0) ? 0.5 * s.hbar * omega / s.kBT : INFINITY;
                double energy;
                if (s.hbar == 0.0 || omega == 0.0) {
                    energy = 2.0 * s.kBT;
                } else if (s.kBT == 0.0) {
                    energy = s.hbar * omega;  // zero-point limit of coth -> 1
                } else {
                    energy = 2.0 * s.kBT * xcoth(x);
                }
                return lorentz * energy;
            } else {  // Emitter
                return s.hbar * omega * s.tau0 /
                       (s.m * (omega * omega * s.tau0 * s.tau0 + 1.0));
            }
        },
        spec);
}

ThermalMultiplier thermal_energy_multiplier(double omega, double kBT, double hbar) {
    require(kBT > 0.0 || omega > 0.0, ErrorCode::ConfigError,
            "thermal_energy_multiplier needs T > 0 or omega > 0");
    require(omega >= 0.0 && kBT >= 0.0 && hbar >= 0.0, ErrorCode::ConfigError,
            "thermal_energy_multiplier: invalid arguments");
    double exact;
    if (kBT == 0.0) {
        exact = 0.5 * hbar * omega;  // pure zero-point energy
    } else if (hbar == 0.0 || omega == 0.0) {
        exact = kBT;
    } else {
        exact = kBT * xcoth(0.5 * hbar * omega / kBT);
    }
    const double expansion =
        (kBT > 0.0) ? kBT + hbar * hbar * omega * omega / (12.0 * kBT) : INFINITY;
    return {exact, expansion};
}

CutoffResult cutoff_frequency(const ThermalQuantum& spec, const SolverConfig& cfg) {
    require(spec.hbar > 0.0, ErrorCode::Unbounded,
            "classical spectrum has no finite cutoff (hbar = 0)");
    require(spec.kBT > 0.0 && spec.m > 0.0 && spec.bbar > 0.0, ErrorCode::ConfigError,
            "cutoff_frequency: parameters must be positive");
    const double target = spec.kBT / spec.m;
    SpectrumSpec s{spec};
    auto integral = [&](double Omega) {
        return numerics::adaptive_quadrature(
                   [&](double w) { return velocity_spectrum(s, w); }, 0.0, Omega, cfg) /
               M_PI;
    };
    const double estimate =
        std::sqrt(2.0 * M_PI * spec.bbar * spec.kBT / (spec.m * spec.hbar));
    // The integral grows logarithmically without bound, so a root exists;
    // expand the bracket geometrically from the closed-form estimate.
    double hi = estimate;
    int guard = 0;
    while (integral(hi) < target) {
        hi *= 4.0;
        require(++guard < 200, ErrorCode::NoConvergence, "cutoff bracket expansion failed");
    }
    double lo = hi;
    while (lo > 0.0 && integral(lo) > target) lo *= 0.25;
    const double root = numerics::brent_root(
        [&](double Omega) { return integral(Omega) - target; }, lo, hi, cfg);
    return {root, estimate};
}

EmitterConstants emitter_constants(const UnitSystem& units) {
    require(units.mode == UnitSystem::Mode::SI, ErrorCode::ConfigError,
            "emitter constants are defined in SI units");
    EmitterConstants out;
    const double e2 = units.e * units.e;
    const double c3 = units.c * units.c * units.c;
    out.tau0 = e2 / (6.0 * M_PI * units.eps0 * units.me * c3);
    out.Omega = 2.0 * units.me * units.c * units.c / units.hbar;
    out.Omega_tau0 = e2 / (3.0 * M_PI * units.eps0 * units.hbar * units.c);
    out.sigma_v2 = e2 * units.c / (3.0 * M_PI * M_PI * units.eps0 * units.hbar);
    out.sigma_v_over_c = std::sqrt(out.sigma_v2) / units.c;
    return out;
}

}  // namespace qbrown::spectral
