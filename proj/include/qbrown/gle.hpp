#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qbrown/potentials.hpp"

namespace qbrown::gle {

/// Friction memory G(t) for the generalized Langevin equation. The noise
/// autocorrelation is tied to it by the second fluctuation-dissipation
/// theorem, C_FF(t) = kB T G(t).
struct DeltaKernel {
    double b = 1.0;  // G = 2 b delta(t - s)
};
struct ExponentialKernel {
    double gamma = 1.0;  // G(t) = gamma exp(-|t|/tau); integral gamma*tau
    double tau = 1.0;
};
struct TabulatedKernel {
    std::vector<double> t;  // t >= 0, strictly increasing from 0
    std::vector<double> G;
};
using MemoryKernel = std::variant<DeltaKernel, ExponentialKernel, TabulatedKernel>;

enum class FrictionMode { FromPotential, Constant };

struct SimulationParams {
    double m = 1.0;
    double dt = 1e-3;
    long n_steps = 1000;
    int n_traj = 1;
    std::uint64_t seed = 0;
    FrictionMode mode = FrictionMode::Constant;
    double b_const = 1.0;      // used by FrictionMode::Constant
    long sample_every = 1;     // store every k-th step (plus the initial state)
    double x0 = 0.0, p0 = 0.0;
    double x0_spread = 0.0, p0_spread = 0.0;  // Gaussian widths of the start
    bool record_noise = false;
    double blow_up = 1e8;  // UnstableStep bound on |x| and |p|
    int threads = 0;       // 0 = OpenMP default; 1 = serial reference path
};

struct TrajectoryEnsemble {
    std::vector<double> t;      // sample times, t[0] = 0
    std::vector<double> x, p;   // [traj * n_samples + sample]
    int n_traj = 0;
    double m = 1.0;
    double kBT = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> noise;  // [traj * n_steps + step] when recorded

    std::size_t n_samples() const { return t.size(); }
    long n_steps() const {
        return n_traj > 0 && !noise.empty() ? static_cast<long>(noise.size() / n_traj) : 0;
    }
    double x_at(int traj, std::size_t k) const { return x[traj * n_samples() + k]; }
    double p_at(int traj, std::size_t k) const { return p[traj * n_samples() + k]; }
};

/// Ordinary Langevin dynamics m x'' + b(x) x' = -Phi' + sqrt(2 kB T b(x)) F(t).
/// Strang splitting with an exact Ornstein-Uhlenbeck substep for the
/// friction+noise pair; b(x) is evaluated at the position half-step midpoint.
/// The noise amplitude depends on x but not on p, so the Ito, Stratonovich
/// and Hanggi-Klimontovich readings of the product coincide for the momentum
/// update and no spurious drift correction is needed.
TrajectoryEnsemble simulate_langevin(const potentials::PotentialSpec& spec,
                                     const potentials::BathSpec& bath,
                                     const SimulationParams& params);

/// Generalized Langevin dynamics with the given memory kernel.
/// Delta reduces to simulate_langevin with constant friction. Exponential is
/// integrated by Markovian embedding: an auxiliary force S = S_fric + S_noise
/// where S_noise is an Ornstein-Uhlenbeck process of stationary variance
/// kB T gamma (this is the random force of the fluctuation-dissipation
/// theorem and is what record_noise stores). Tabulated kernels draw the
/// stationary Gaussian force by circulant spectral factorization over the
/// simulation window and throw KernelNotPositive when the kernel has a
/// negative circulant spectrum.
TrajectoryEnsemble simulate_gle(const potentials::PotentialSpec& spec,
                                const potentials::BathSpec& bath, const MemoryKernel& kernel,
                                const SimulationParams& params);

struct Histogram {
    std::vector<double> edges;  // size bins + 1
    std::vector<double> prob;   // probability per bin, sums to 1
};

struct StatsOptions {
    double burn_in_fraction = 0.5;  // equilibrium moments use t >= fraction * t_end
    int hist_bins = 64;
    double fold_period = 0.0;  // fold positions into [0, period) when > 0
};

struct EnsembleStats {
    std::vector<double> t;
    std::vector<double> msd, msd_se;    // <(x(t) - x(0))^2>
    std::vector<double> vacf, vacf_se;  // <v(0) v(t)>
    double mean_x = 0, mean_p = 0;
    double var_x = 0, var_p = 0;  // late-time ensemble moments
    double var_p_se = 0;
    Histogram pos_hist, mom_hist;
};

EnsembleStats ensemble_stats(const TrajectoryEnsemble& ens,
                             const StatsOptions& opts = StatsOptions{});

struct NoiseAutocorrelation {
    std::vector<double> t;         // lag times
    std::vector<double> cff;       // measured <F(s) F(s+t)>
    std::vector<double> cff_se;
    std::vector<double> expected;  // kB T G(t) (2 kB T b / dt at lag 0 for Delta)
};

/// Autocorrelation of the recorded random force against the
/// fluctuation-dissipation prediction kB T G.
NoiseAutocorrelation measured_noise_autocorrelation(const TrajectoryEnsemble& ens,
                                                    const MemoryKernel& kernel,
                                                    const potentials::BathSpec& bath,
                                                    std::size_t max_lags = 512);

}  // namespace qbrown::gle
