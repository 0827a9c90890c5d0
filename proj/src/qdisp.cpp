#include "qbrown/qdisp.hpp"

#include <cmath>

namespace qbrown::qdisp {

double thermal_length(double m, double kBT, double hbar) {
    require(m > 0.0 && kBT > 0.0, ErrorCode::ConfigError,
            "thermal_length requires m > 0 and T > 0");
    return hbar / (2.0 * std::sqrt(m * kBT));
}

DispersionSeries ermakov_evolve(double sigma0, double sigma_dot0, double m, double b,
                                double omega0, double kBT, double hbar,
                                std::vector<double> t_grid, const SolverConfig& cfg) {
    require(sigma0 > 0.0, ErrorCode::ConfigError, "ermakov_evolve requires sigma0 > 0");
    require(m > 0.0 && b >= 0.0 && kBT >= 0.0 && hbar >= 0.0, ErrorCode::ConfigError,
            "ermakov_evolve: invalid parameters");

    const bool singular = (hbar == 0.0 && kBT == 0.0);
    // With hbar > 0 the 1/s^3 term repels the radius from zero; keep the
    // integrator away from the singular scale by step rejection.
    double floor_sigma = 0.0;
    if (hbar > 0.0 && omega0 > 0.0) floor_sigma = 1e-3 * std::sqrt(hbar / (2.0 * m * omega0));

    numerics::OdeSolver solver(cfg);
    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        const double s = y[0], v = y[1];
        dy[0] = v;
        double force = -m * omega0 * omega0 * s - b * v;
        if (hbar > 0.0) force += hbar * hbar / (4.0 * m * s * s * s);
        if (kBT > 0.0) force += kBT / s;
        dy[1] = force / m;
    };
    auto guard = [&](double, std::span<const double> y) {
        if (singular) {
            if (y[0] <= 0.0)
                fail(ErrorCode::Collapse,
                     "dispersion radius reached zero with hbar = T = 0");
            return true;
        }
        return y[0] > floor_sigma;
    };

    auto states = solver.solve_at(rhs, t_grid.front(), {sigma0, sigma_dot0}, t_grid, guard);
    DispersionSeries out;
    out.model = "ermakov";
    out.m = m;
    out.b = b;
    out.omega0 = omega0;
    out.kBT = kBT;
    out.hbar = hbar;
    out.t = std::move(t_grid);
    out.sigma_x2.reserve(states.size());
    for (const auto& y : states) out.sigma_x2.push_back(y[0] * y[0]);
    return out;
}

DispersionSeries overdamped_dispersion(double sigma0_sq, double m, double b, double omega0,
                                       double kBT, double hbar, std::vector<double> t_grid,
                                       const SolverConfig& cfg) {
    require(b > 0.0, ErrorCode::ConfigError, "overdamped_dispersion requires b > 0");
    require(sigma0_sq >= 0.0, ErrorCode::ConfigError, "sigma0^2 must be >= 0");
    require(sigma0_sq > 0.0 || kBT > 0.0 || hbar > 0.0, ErrorCode::ConfigError,
            "sigma0^2 = 0 needs T > 0 or hbar > 0 to leave the origin");

    numerics::OdeSolver solver(cfg);
    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        const double s2 = y[0];
        double r = -2.0 * m * omega0 * omega0 * s2 + 2.0 * kBT;
        if (hbar > 0.0) r += hbar * hbar / (2.0 * m * s2);
        dy[0] = r / b;
    };
    auto guard = [&](double, std::span<const double> y) { return y[0] > 0.0 || hbar == 0.0; };

    // The quantum term is singular at s2 = 0: start such trajectories on the
    // exact short-time branch s2 = hbar sqrt(t/m b) at a negligible offset.
    double t0 = t_grid.front();
    double y0 = sigma0_sq;
    std::vector<double> grid = t_grid;
    if (sigma0_sq == 0.0 && hbar > 0.0) {
        const double t_scale = (t_grid.back() > 0.0) ? t_grid.back() : 1.0;
        t0 = 1e-14 * t_scale;
        y0 = hbar * std::sqrt(t0 / (m * b));
        require(t_grid.front() >= 0.0, ErrorCode::ConfigError, "t grid must start at t >= 0");
    }
    auto states = solver.solve_at(rhs, t0, {y0}, grid, guard);

    DispersionSeries out;
    out.model = "overdamped";
    out.m = m;
    out.b = b;
    out.omega0 = omega0;
    out.kBT = kBT;
    out.hbar = hbar;
    out.t = std::move(grid);
    out.sigma_x2.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        double v = states[i][0];
        if (out.t[i] <= t0) v = (out.t[i] == 0.0 && sigma0_sq == 0.0) ? 0.0 : v;
        out.sigma_x2.push_back(v);
    }
    return out;
}

double overdamped_fixed_point(double m, double omega0, double kBT, double hbar) {
    require(omega0 > 0.0, ErrorCode::ConfigError, "fixed point requires omega0 > 0");
    return (kBT + std::sqrt(kBT * kBT + hbar * hbar * omega0 * omega0)) /
           (2.0 * m * omega0 * omega0);
}

double quantum_einstein_sigma(double t, double D, double lambda_T, const SolverConfig& cfg) {
    require(t >= 0.0, ErrorCode::ConfigError, "quantum_einstein_sigma requires t >= 0");
    require(D > 0.0, ErrorCode::ConfigError, "quantum_einstein_sigma requires D > 0");
    require(lambda_T >= 0.0, ErrorCode::ConfigError, "lambda_T must be >= 0");
    if (t == 0.0) return 0.0;
    const double rhs = 2.0 * D * t;
    if (lambda_T == 0.0) return rhs;

    const double l2 = lambda_T * lambda_T;
    // g(s2) = s2 - l2 ln(1 + s2/l2) - rhs, strictly increasing with
    // g'(s2) = s2 / (s2 + l2); enclosure [rhs, rhs + l2 ln(1 + (rhs+l2)/l2) + l2].
    auto g = [&](double s2) { return s2 - l2 * std::log1p(s2 / l2) - rhs; };
    double lo = rhs;
    double hi = rhs + l2 * std::log1p((rhs + l2) / l2) + l2;
    double s2 = std::sqrt(rhs * (rhs + 2.0 * l2));  // interpolates both asymptotes
    s2 = std::min(std::max(s2, lo), hi);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double f = g(s2);
        if (f > 0.0)
            hi = s2;
        else
            lo = s2;
        const double df = s2 / (s2 + l2);
        double next = s2 - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        if (std::abs(next - s2) <= cfg.root_tol * std::max(s2, l2) ||
            std::abs(f) <= 1e-15 * std::max(rhs, l2)) {
            return next;
        }
        s2 = next;
    }
    fail(ErrorCode::NoConvergence, "quantum_einstein_sigma: Newton did not converge");
}

double maxwell_heisenberg(double sigma_x2, double m, double kBT, double hbar,
                          std::optional<double> t) {
    require(sigma_x2 > 0.0, ErrorCode::ConfigError, "maxwell_heisenberg requires sigma_x^2 > 0");
    double s = m * kBT + hbar * hbar / (4.0 * sigma_x2);
    if (t) {
        require(*t > 0.0, ErrorCode::ConfigError, "time-energy term requires t > 0");
        s += hbar * m / *t;
    }
    return s;
}

OscillatorEnergy oscillator_energy(double kBT, double omega0, double hbar) {
    require(kBT >= 0.0, ErrorCode::ConfigError, "oscillator_energy requires T >= 0");
    require(omega0 > 0.0 && hbar >= 0.0, ErrorCode::ConfigError,
            "oscillator_energy requires omega0 > 0, hbar >= 0");
    if (kBT == 0.0) {
        const double ground = 0.5 * hbar * omega0;
        return {ground, ground};
    }
    const double x = hbar * omega0 / kBT;  // beta hbar omega0
    const double semi = 0.5 * kBT * (std::sqrt(1.0 + x * x) + 1.0);
    double exact;
    if (x < 1e-6) {
        // coth expansion avoids 0/0: (hw/2) coth(x/2) = kBT (1 + x^2/12 - ...)
        exact = kBT * (1.0 + x * x / 12.0);
    } else {
        exact = 0.5 * hbar * omega0 / std::tanh(0.5 * x);
    }
    return {semi, exact};
}

}  // namespace qbrown::qdisp
