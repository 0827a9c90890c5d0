#include "qbrown/wigner.hpp"

#include <cmath>
#include <limits>

namespace qbrown::wigner {

DiffusionModel diffusion_model_from_string(const std::string& name) {
    if (name == "classical") return DiffusionModel::Classical;
    if (name == "presumed_eq") return DiffusionModel::PresumedEq;
    if (name == "emergent") return DiffusionModel::Emergent;
    if (name == "bohmian") return DiffusionModel::Bohmian;
    fail(ErrorCode::ConfigError, "unknown diffusion model: " + name);
}

const char* to_string(DiffusionModel model) {
    switch (model) {
        case DiffusionModel::Classical: return "classical";
        case DiffusionModel::PresumedEq: return "presumed_eq";
        case DiffusionModel::Emergent: return "emergent";
        case DiffusionModel::Bohmian: return "bohmian";
    }
    return "?";
}

namespace {

double sinhc(double x) {  // sinh(x)/x, stable near 0
    if (std::abs(x) < 1e-5) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

}  // namespace

Coefficients coefficients(DiffusionModel model, const GaussianState& state, double m,
                          double omega0, double bbar, double kBT, double hbar) {
    require(m > 0.0 && bbar >= 0.0 && kBT >= 0.0 && hbar >= 0.0, ErrorCode::ConfigError,
            "coefficients: invalid parameters");
    switch (model) {
        case DiffusionModel::Classical:
            return {bbar, bbar * kBT};
        case DiffusionModel::PresumedEq: {
            require(kBT > 0.0, ErrorCode::ConfigError,
                    "presumed_eq coefficients diverge at T = 0");
            const double x = 0.5 * hbar * omega0 / kBT;
            const double energy = (x < 1e-6) ? kBT * (1.0 + x * x / 3.0)
                                             : 0.5 * hbar * omega0 / std::tanh(x);
            return {bbar, bbar * energy};
        }
        case DiffusionModel::Emergent: {
            require(kBT > 0.0, ErrorCode::ConfigError,
                    "emergent coefficients diverge at T = 0");
            const double x = 0.5 * hbar * omega0 / kBT;
            return {bbar * sinhc(x), bbar * kBT * std::cosh(x)};
        }
        case DiffusionModel::Bohmian: {
            state.validate();
            return {bbar, bbar * (kBT + hbar * hbar / (4.0 * m * state.sigma_x2))};
        }
    }
    fail(ErrorCode::ConfigError, "unreachable diffusion model");
}

MomentSeries evolve_moments(const GaussianState& state0, DiffusionModel model, double m,
                            double omega0, double bbar, double kBT, double hbar,
                            std::vector<double> t_grid, const SolverConfig& cfg) {
    state0.validate();
    // Non-Bohmian coefficients are state independent; compute them once (this
    // also performs the T = 0 rejection up front).
    Coefficients fixed{0.0, 0.0};
    if (model != DiffusionModel::Bohmian)
        fixed = coefficients(model, state0, m, omega0, bbar, kBT, hbar);

    numerics::OdeSolver solver(cfg);
    const double w2 = omega0 * omega0;
    auto rhs = [&](double, std::span<const double> y, std::span<double> dy) {
        // y = (sx2, sxp, sp2, mean_x, mean_p)
        double b_eff = fixed.b_eff, D_p = fixed.D_p;
        if (model == DiffusionModel::Bohmian) {
            b_eff = bbar;
            D_p = bbar * (kBT + hbar * hbar / (4.0 * m * y[0]));
        }
        dy[0] = 2.0 * y[1] / m;
        dy[1] = y[2] / m - m * w2 * y[0] - (b_eff / m) * y[1];
        dy[2] = -2.0 * m * w2 * y[1] - 2.0 * (b_eff / m) * y[2] + 2.0 * D_p;
        dy[3] = y[4] / m;
        dy[4] = -m * w2 * y[3] - (b_eff / m) * y[4];
    };
    auto guard = [&](double, std::span<const double> y) { return y[0] > 0.0 && y[2] > 0.0; };

    std::vector<double> y0 = {state0.sigma_x2, state0.sigma_xp, state0.sigma_p2,
                              state0.mean_x, state0.mean_p};
    auto states = solver.solve_at(rhs, t_grid.front(), y0, t_grid, guard);

    MomentSeries out;
    out.model = model;
    out.m = m;
    out.omega0 = omega0;
    out.bbar = bbar;
    out.kBT = kBT;
    out.hbar = hbar;
    out.t = t_grid;
    out.states.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        GaussianState s;
        s.sigma_x2 = states[i][0];
        s.sigma_xp = states[i][1];
        s.sigma_p2 = states[i][2];
        s.mean_x = states[i][3];
        s.mean_p = states[i][4];
        s.t = t_grid[i];
        out.states.push_back(s);
    }
    return out;
}

double heisenberg_check(const MomentSeries& series, double hbar) {
    require(!series.states.empty(), ErrorCode::ConfigError, "heisenberg_check: empty series");
    require(hbar > 0.0, ErrorCode::ConfigError, "heisenberg_check requires hbar > 0");
    const double bound = 0.25 * hbar * hbar;
    double min_ratio = std::numeric_limits<double>::max();
    for (const auto& s : series.states)
        min_ratio = std::min(min_ratio, s.covariance_det() / bound);
    return min_ratio;
}

qdisp::DispersionSeries overdamped_reduce(double sigma0_sq, double m, double omega0,
                                          double bbar, double kBT, double hbar,
                                          std::vector<double> t_grid, const SolverConfig& cfg) {
    require(omega0 > 0.0, ErrorCode::ConfigError, "overdamped_reduce requires omega0 > 0");
    require(bbar / (m * omega0) >= 10.0, ErrorCode::NotOverdamped,
            "overdamped_reduce requires bbar / m omega0 >= 10");
    // Identical ODE to the overdamped dispersion law; share the integrator so
    // the two module paths cannot drift apart.
    return qdisp::overdamped_dispersion(sigma0_sq, m, bbar, omega0, kBT, hbar,
                                        std::move(t_grid), cfg);
}

}  // namespace qbrown::wigner
