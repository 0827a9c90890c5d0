#pragma once

#include <vector>

#include "qbrown/numerics.hpp"
#include "qbrown/qdisp.hpp"

namespace qbrown::wigner {

/// Second moments of a Gaussian Wigner function (means ride along; the
/// covariance is what the models act on).
struct GaussianState {
    double sigma_x2 = 1.0;
    double sigma_p2 = 1.0;
    double sigma_xp = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double t = 0.0;

    double covariance_det() const { return sigma_x2 * sigma_p2 - sigma_xp * sigma_xp; }
    void validate() const {
        require(sigma_x2 > 0.0 && sigma_p2 > 0.0, ErrorCode::ConfigError,
                "Gaussian state variances must be positive");
        require(covariance_det() > 0.0, ErrorCode::ConfigError,
                "Gaussian state covariance must be positive definite");
    }
};

/// Momentum-relaxation models for the harmonic/free Wigner dynamics:
///  Classical    b_eff = bbar,               D_p = bbar kB T
///  PresumedEq   b_eff = bbar,               D_p = bbar (hw0/2) coth(b hw0/2)
///  Emergent     b_eff = bbar sinh(x)/x,     D_p = bbar kB T cosh(x),  x = b hw0/2
///  Bohmian      b_eff = bbar,               D_p = bbar (kB T + hbar^2/4 m sx2)
enum class DiffusionModel { Classical, PresumedEq, Emergent, Bohmian };

DiffusionModel diffusion_model_from_string(const std::string& name);
const char* to_string(DiffusionModel model);

struct Coefficients {
    double b_eff;
    double D_p;
};

/// Friction and momentum-diffusion coefficients of the selected model.
/// The Emergent/PresumedEq coefficients diverge at T = 0 and are rejected
/// there; Bohmian accepts T >= 0 (its D_p depends on the current sigma_x^2).
Coefficients coefficients(DiffusionModel model, const GaussianState& state, double m,
                          double omega0, double bbar, double kBT, double hbar);

struct MomentSeries {
    std::vector<double> t;
    std::vector<GaussianState> states;
    DiffusionModel model;
    double m, omega0, bbar, kBT, hbar;
};

/// Second-moment closure of the linear Fokker-Planck dynamics:
///   d sx2/dt  = 2 sxp / m
///   d sxp/dt  = sp2 / m - m w0^2 sx2 - (b_eff/m) sxp
///   d sp2/dt  = -2 m w0^2 sxp - 2 (b_eff/m) sp2 + 2 D_p
/// Means follow the deterministic damped-oscillator flow. For the Bohmian
/// model D_p is re-evaluated from the current sigma_x^2.
MomentSeries evolve_moments(const GaussianState& state0, DiffusionModel model, double m,
                            double omega0, double bbar, double kBT, double hbar,
                            std::vector<double> t_grid,
                            const SolverConfig& cfg = SolverConfig{});

/// Minimum over the series of (sx2 sp2 - sxp^2) / (hbar/2)^2.
double heisenberg_check(const MomentSeries& series, double hbar);

/// Coordinate-subspace limit of the Bohmian model at large friction:
/// bbar d_t sx2 + 2 m w0^2 sx2 = hbar^2 / 2 m sx2 + 2 kB T, shared with the
/// overdamped dispersion integrator. Requires bbar / m w0 >= 10.
qdisp::DispersionSeries overdamped_reduce(double sigma0_sq, double m, double omega0,
                                          double bbar, double kBT, double hbar,
                                          std::vector<double> t_grid,
                                          const SolverConfig& cfg = SolverConfig{});

}  // namespace qbrown::wigner
