#include "qbrown/resonant.hpp"

#include <cmath>
#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbrown::resonant {

namespace {

constexpr double kFlatThreshold = 1e-30;

// 1/D of the single-cosine problem as a smooth, even function of the
// amplitude: 1/D = 4 pi^3 A [bA I0 - I1] I0 / rho c^3 a^4. Series for small
// beta A keeps the rotating-dimer mobility integrand finite through A = 0.
double fk_inverse_diffusion(double A, double a, const potentials::BathSpec& bath) {
    const double beta = bath.beta();
    const double z = beta * std::abs(A);
    const double denom = bath.rho_m * std::pow(bath.c, 3) * std::pow(a, 4);
    double bracket;  // |A| [z I0(z) - I1(z)] I0(z)
    if (z < 1e-8) {
        bracket = std::abs(A) * 0.5 * z;  // z I0 - I1 = z/2 + O(z^3)
    } else {
        const double i0 = numerics::bessel_i0_scaled(z);
        const double i1 = numerics::bessel_i1_scaled(z);
        // (z i0 - i1) i0 e^{2z}, assembled in logs to survive large z
        const double log_scale = 2.0 * z;
        bracket = std::abs(A) * (z * i0 - i1) * i0 * std::exp(log_scale);
    }
    return 4.0 * std::pow(M_PI, 3) * bracket / denom;
}

}  // namespace

DiffusionResult lifson_jackson(const potentials::PotentialSpec& spec,
                               const potentials::BathSpec& bath, const SolverConfig& cfg) {
    bath.validate();
    require(bath.T > 0.0, ErrorCode::ConfigError, "lifson_jackson requires T > 0");
    const double beta = bath.beta();
    const double a = potentials::period(spec);
    const double x0 = std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, potentials::Tabulated>)
                return s.spline.x_min();
            else
                return 0.0;
        },
        spec);

    // exp(beta Phi) overflows for strong corrugation; factor the min/max out.
    double phi_min = INFINITY, phi_max = -INFINITY;
    const int n_probe = 512;
    for (int i = 0; i <= n_probe; ++i) {
        const double phi = potentials::evaluate(spec, x0 + a * i / n_probe).phi;
        phi_min = std::min(phi_min, phi);
        phi_max = std::max(phi_max, phi);
    }

    const double i_plus = numerics::adaptive_quadrature(
        [&](double x) {
            const auto v = potentials::evaluate(spec, x);
            return v.d2phi * v.d2phi * std::exp(beta * (v.phi - phi_max));
        },
        x0, x0 + a, cfg);
    const double i_minus = numerics::adaptive_quadrature(
        [&](double x) {
            return std::exp(-beta * (potentials::evaluate(spec, x).phi - phi_min));
        },
        x0, x0 + a, cfg);

    DiffusionResult out;
    out.method = DiffusionMethod::Quadrature;
    out.integral_plus = i_plus * std::exp(beta * phi_max);
    out.integral_minus = i_minus * std::exp(-beta * phi_min);
    require(i_plus > kFlatThreshold, ErrorCode::FlatPotential,
            "curvature integral vanishes; D is unbounded under this friction model");
    // D = 4 pi rho c^3 kBT a^2 / (I+ I-) with the overflow-safe factors
    // recombined in the exponent.
    const double log_D = std::log(4.0 * M_PI * bath.rho_m * std::pow(bath.c, 3) *
                                  bath.thermal_energy() * a * a) -
                         std::log(i_plus) - std::log(i_minus) -
                         beta * (phi_max - phi_min);
    out.D = std::exp(log_D);
    return out;
}

DiffusionResult fk_diffusion_bessel(double A, double a, const potentials::BathSpec& bath) {
    bath.validate();
    require(A > 0.0 && a > 0.0, ErrorCode::ConfigError,
            "fk_diffusion_bessel requires A > 0, a > 0");
    require(bath.T > 0.0, ErrorCode::ConfigError, "fk_diffusion_bessel requires T > 0");
    const double z = bath.beta() * A;
    const double i0 = numerics::bessel_i0_scaled(z);
    const double i1 = numerics::bessel_i1_scaled(z);
    const double denom_log = std::log(4.0 * std::pow(M_PI, 3) * A * (z * i0 - i1) * i0) + 2.0 * z;
    DiffusionResult out;
    out.method = DiffusionMethod::Bessel;
    out.D = std::exp(std::log(bath.rho_m * std::pow(bath.c, 3) * std::pow(a, 4)) - denom_log);
    return out;
}

double fk_diffusion_arrhenius_asymptote(double A, double a, const potentials::BathSpec& bath) {
    const double z = bath.beta() * A;
    require(z > 1.0, ErrorCode::ConfigError, "Arrhenius asymptote needs beta A > 1");
    return bath.rho_m * std::pow(bath.c, 3) * std::pow(a, 4) /
           (2.0 * M_PI * M_PI * A) * (z / (z - 1.0)) * std::exp(-2.0 * z);
}

std::vector<SweepPoint> dimer_sweep(double A, double a, const std::vector<double>& l_values,
                                    const potentials::BathSpec& bath, DimerMode mode,
                                    double phi, RotatingAverage avg, const SolverConfig& cfg) {
    require(A > 0.0 && a > 0.0, ErrorCode::ConfigError, "dimer_sweep requires A > 0, a > 0");
    bath.validate();
    const double beta = bath.beta();
    std::vector<SweepPoint> out(l_values.size());
    std::exception_ptr first_error = nullptr;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(l_values.size()); ++i) {
        try {
            const double l = l_values[i];
            SweepPoint pt;
            pt.parameter = l;
            pt.singular = false;
            if (mode == DimerMode::Rigid) {
                const double aeff =
                    potentials::dimer_effective_amplitude(potentials::Dimer{A, a, l, phi});
                if (std::abs(aeff) < 1e-12 * A) {
                    pt.D = INFINITY;
                    pt.singular = true;  // frictionless resonance point
                } else {
                    pt.D = fk_diffusion_bessel(std::abs(aeff), a, bath).D;
                }
            } else {
                // Orientation average of the angle-conditional problem with the
                // quasi-equilibrium weight w(ang) = <e^{-beta Phi}>_x
                // = I0(beta |A_eff(ang)|).
                auto aeff_of = [&](double ang) {
                    return potentials::dimer_effective_amplitude(
                        potentials::Dimer{A, a, l, ang});
                };
                auto weight = [&](double ang) {
                    return numerics::bessel_i0(beta * std::abs(aeff_of(ang)));
                };
                const double norm = numerics::adaptive_quadrature(weight, 0.0, M_PI, cfg);
                if (avg == RotatingAverage::Mobility) {
                    const double inv_avg = numerics::adaptive_quadrature(
                        [&](double ang) {
                            return weight(ang) * fk_inverse_diffusion(aeff_of(ang), a, bath);
                        },
                        0.0, M_PI, cfg);
                    if (inv_avg <= kFlatThreshold) {
                        pt.D = INFINITY;
                        pt.singular = true;
                    } else {
                        pt.D = norm / inv_avg;
                    }
                } else {
                    // Diffusivity averaging diverges when A_eff crosses zero in
                    // the angular window; the quadrature error surfaces that.
                    const double d_avg = numerics::adaptive_quadrature(
                        [&](double ang) {
                            const double aeff = std::abs(aeff_of(ang));
                            if (aeff < 1e-12 * A) return 0.0;  // measure-zero spike
                            return weight(ang) * fk_diffusion_bessel(aeff, a, bath).D;
                        },
                        0.0, M_PI, cfg);
                    pt.D = d_avg / norm;
                }
            }
            out[i] = pt;
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::vector<ChainSweepPoint> chain_sweep(const potentials::Chain& base, int N_min, int N_max,
                                         const potentials::BathSpec& bath,
                                         const SolverConfig& cfg) {
    require(N_min >= 1 && N_max >= N_min, ErrorCode::ConfigError,
            "chain_sweep requires 1 <= N_min <= N_max");
    std::vector<ChainSweepPoint> out(N_max - N_min + 1);
    std::exception_ptr first_error = nullptr;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int N = N_min; N <= N_max; ++N) {
        potentials::Chain chain = base;
        chain.N = N;
        ChainSweepPoint pt;
        pt.N = N;
        pt.envelope_short = potentials::chain_envelope(N, chain.l, chain.l1);
        pt.envelope_long = potentials::chain_envelope(N, chain.l, chain.l2);
        pt.singular = false;
        try {
            pt.D = lifson_jackson(potentials::PotentialSpec{chain}, bath, cfg).D;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::FlatPotential) {
                pt.D = INFINITY;
                pt.singular = true;
            } else {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!first_error) first_error = std::current_exception();
            }
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!first_error) first_error = std::current_exception();
        }
        out[N - N_min] = pt;
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

namespace {

template <typename Point>
std::vector<Extremum> extrema_impl(const std::vector<Point>& sweep,
                                   double (*value)(const Point&),
                                   double (*param)(const Point&),
                                   bool (*singular)(const Point&)) {
    std::vector<Extremum> out;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (singular(sweep[i])) {
            out.push_back({param(sweep[i]), ExtremumKind::Singular});
            continue;
        }
        if (i == 0 || i + 1 == sweep.size()) continue;
        if (singular(sweep[i - 1]) || singular(sweep[i + 1])) continue;
        const double v = value(sweep[i]);
        const double vl = value(sweep[i - 1]);
        const double vr = value(sweep[i + 1]);
        if (v > vl && v > vr) out.push_back({param(sweep[i]), ExtremumKind::Maximum});
        if (v < vl && v < vr) out.push_back({param(sweep[i]), ExtremumKind::Minimum});
    }
    return out;
}

}  // namespace

std::vector<Extremum> find_extrema(const std::vector<SweepPoint>& sweep) {
    return extrema_impl<SweepPoint>(
        sweep, [](const SweepPoint& p) { return p.D; },
        [](const SweepPoint& p) { return p.parameter; },
        [](const SweepPoint& p) { return p.singular; });
}

std::vector<Extremum> find_extrema(const std::vector<ChainSweepPoint>& sweep) {
    return extrema_impl<ChainSweepPoint>(
        sweep, [](const ChainSweepPoint& p) { return p.D; },
        [](const ChainSweepPoint& p) { return static_cast<double>(p.N); },
        [](const ChainSweepPoint& p) { return p.singular; });
}

double zero_T_quantum_fk_dispersion(double A, double m, double bbar, double hbar, double t) {
    require(A > 0.0 && m > 0.0 && bbar > 0.0 && hbar > 0.0, ErrorCode::ConfigError,
            "zero_T_quantum_fk_dispersion: parameters must be positive");
    require(t >= 0.0, ErrorCode::ConfigError, "t must be >= 0");
    const double arg = 32.0 * M_PI * m * A * A * t / (bbar * hbar * hbar);
    require(arg >= 1.0, ErrorCode::BelowOnset,
            "time below the onset of the logarithmic regime");
    return hbar * hbar / (8.0 * m * A) * std::log(arg);
}

}  // namespace qbrown::resonant
