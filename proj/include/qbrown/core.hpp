#pragma once

#include <cstdint>
#include <vector>

#include "qbrown/errors.hpp"

namespace qbrown {

/// Unit conventions. Reduced mode sets k_B = 1 and leaves masses and hbar as
/// free scalars, so every formula carries one or two parameters. SI mode is
/// only needed for the radiating-electron constants and carries CODATA 2018
/// values.
struct UnitSystem {
    enum class Mode { Reduced, SI };
    Mode mode = Mode::Reduced;

    double e = 1.0;     // elementary charge
    double eps0 = 1.0;  // vacuum permittivity
    double c = 1.0;     // speed of light
    double hbar = 1.0;  // reduced Planck constant
    double me = 1.0;    // electron mass
    double kB = 1.0;    // Boltzmann constant

    static UnitSystem reduced() { return UnitSystem{}; }

    static UnitSystem si() {
        UnitSystem u;
        u.mode = Mode::SI;
        u.e = 1.602176634e-19;       // C (exact)
        u.eps0 = 8.8541878128e-12;   // F/m
        u.c = 299792458.0;           // m/s (exact)
        u.hbar = 1.054571817e-34;    // J s
        u.me = 9.1093837015e-31;     // kg
        u.kB = 1.380649e-23;         // J/K (exact)
        return u;
    }
};

/// Counter-based RNG stream (Philox4x32-10). The sample sequence is a pure
/// function of (master_seed, stream_index, draw count), so trajectories can be
/// farmed out to threads in any order and still reproduce bit-identically.
/// A single stream must not be shared between threads.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key0_(static_cast<std::uint32_t>(master_seed)),
          key1_(static_cast<std::uint32_t>(master_seed >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream_index)),
          stream_hi_(static_cast<std::uint32_t>(stream_index >> 32)) {}

    /// Uniform double in (0, 1].
    double uniform();

    /// Standard normal deviate (Box-Muller; pairs are cached).
    double normal();

    std::uint64_t master_seed() const {
        return (static_cast<std::uint64_t>(key1_) << 32) | key0_;
    }
    std::uint64_t stream_index() const {
        return (static_cast<std::uint64_t>(stream_hi_) << 32) | stream_lo_;
    }

  private:
    void next_block();

    std::uint32_t key0_, key1_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t counter_ = 0;
    std::uint32_t block_[4] = {0, 0, 0, 0};
    int block_pos_ = 4;      // uint32 lanes consumed from block_
    double spare_ = 0.0;     // cached second Box-Muller deviate
    bool has_spare_ = false;
};

/// n i.i.d. standard normal deviates from the given stream.
std::vector<double> gaussian_sample(RngStream& stream, std::size_t n);

/// Shared tolerances for the root finders, quadrature and ODE integrators.
struct SolverConfig {
    double ode_rel_tol = 1e-10;
    double ode_abs_tol = 1e-12;
    double root_tol = 1e-13;
    double quadrature_rel_tol = 1e-10;
    int max_iterations = 200;

    void validate() const {
        require(ode_rel_tol > 0 && ode_abs_tol > 0 && root_tol > 0 && quadrature_rel_tol > 0,
                ErrorCode::ConfigError, "solver tolerances must be positive");
        require(max_iterations >= 1, ErrorCode::ConfigError, "max_iterations must be >= 1");
    }
};

}  // namespace qbrown
