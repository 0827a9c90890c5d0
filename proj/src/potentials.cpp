#include "qbrown/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qbrown::potentials {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Best rational approximation p/q to r with q <= q_max (continued fractions).
bool rational_approx(double r, int q_max, long& p, long& q) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = r;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > q_max) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::abs(r - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-12 * std::abs(r))
            break;
        const double frac = x - fl;
        if (frac < 1e-14) break;
        x = 1.0 / frac;
    }
    p = p1;
    q = q1;
    return q1 > 0 &&
           std::abs(r - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-9 * std::abs(r);
}

}  // namespace

void validate(const PotentialSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Harmonic>) {
                require(s.m > 0.0, ErrorCode::ConfigError, "potential.m must be > 0");
            } else if constexpr (std::is_same_v<T, Barrier>) {
                require(s.m > 0.0, ErrorCode::ConfigError, "potential.m must be > 0");
            } else if constexpr (std::is_same_v<T, FrenkelKantorova>) {
                require(s.a > 0.0, ErrorCode::ConfigError, "potential.a must be > 0");
            } else if constexpr (std::is_same_v<T, Dimer>) {
                require(s.a > 0.0, ErrorCode::ConfigError, "potential.a must be > 0");
                require(s.l > 0.0, ErrorCode::ConfigError, "potential.l must be > 0");
            } else if constexpr (std::is_same_v<T, Chain>) {
                require(s.N >= 1, ErrorCode::ConfigError, "potential.N must be >= 1");
                require(s.l > 0.0, ErrorCode::ConfigError, "potential.l must be > 0");
                require(s.l1 > 0.0, ErrorCode::ConfigError, "potential.l1 must be > 0");
                require(s.l2 > 0.0, ErrorCode::ConfigError, "potential.l2 must be > 0");
            }
        },
        spec);
}

PotentialValue evaluate(const PotentialSpec& spec, double x) {
    require(std::isfinite(x), ErrorCode::OutOfDomain, "potential evaluation at non-finite x");
    return std::visit(
        [x](const auto& s) -> PotentialValue {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Harmonic>) {
                const double k = s.m * s.omega0 * s.omega0;
                return {0.5 * k * x * x, k * x, k};
            } else if constexpr (std::is_same_v<T, Barrier>) {
                const double k = s.m * s.omega1 * s.omega1;
                return {-0.5 * k * x * x, -k * x, -k};
            } else if constexpr (std::is_same_v<T, FrenkelKantorova>) {
                const double k = kTwoPi / s.a;
                const double ckx = std::cos(k * x), skx = std::sin(k * x);
                return {s.A * ckx, -s.A * k * skx, -s.A * k * k * ckx};
            } else if constexpr (std::is_same_v<T, Dimer>) {
                const double aeff = dimer_effective_amplitude(s);
                const double k = kTwoPi / s.a;
                const double ckx = std::cos(k * x), skx = std::sin(k * x);
                return {aeff * ckx, -aeff * k * skx, -aeff * k * k * ckx};
            } else if constexpr (std::is_same_v<T, Chain>) {
                double phi = 0.0, dphi = 0.0, d2phi = 0.0;
                const double k1 = kTwoPi / s.l1, k2 = kTwoPi / s.l2;
                for (int j = 0; j < s.N; ++j) {
                    const double xj = x + j * s.l;
                    const double c1 = std::cos(k1 * xj), s1 = std::sin(k1 * xj);
                    const double c2 = std::cos(k2 * xj), s2 = std::sin(k2 * xj);
                    phi += s.A1 * c1 + s.A2 * c2;
                    dphi += -s.A1 * k1 * s1 - s.A2 * k2 * s2;
                    d2phi += -s.A1 * k1 * k1 * c1 - s.A2 * k2 * k2 * c2;
                }
                return {phi, dphi, d2phi};
            } else {  // Tabulated
                return {s.spline.value(x), s.spline.derivative(x), s.spline.second_derivative(x)};
            }
        },
        spec);
}

double dimer_effective_amplitude(const Dimer& d) {
    return 2.0 * d.A * std::cos(M_PI * d.l * std::cos(d.phi) / d.a);
}

double period(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, FrenkelKantorova>) {
                return s.a;
            } else if constexpr (std::is_same_v<T, Dimer>) {
                return s.a;
            } else if constexpr (std::is_same_v<T, Chain>) {
                // common period of the two components: l1/l2 = p/q in lowest
                // terms gives L = q l1 = p l2
                long p = 0, q = 0;
                require(rational_approx(s.l1 / s.l2, 1024, p, q), ErrorCode::NotPeriodic,
                        "chain component lengths l1, l2 are not commensurate");
                return static_cast<double>(q) * s.l1;
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                const double lo = s.spline.x_min(), hi = s.spline.x_max();
                const double v0 = s.spline.value(lo), v1 = s.spline.value(hi);
                const double scale = std::max({std::abs(v0), std::abs(v1), 1e-12});
                require(std::abs(v0 - v1) <= 1e-6 * scale, ErrorCode::NotPeriodic,
                        "tabulated potential endpoints differ; not treated as periodic");
                return hi - lo;
            } else {
                fail(ErrorCode::NotPeriodic, "potential has no spatial period");
            }
        },
        spec);
}

double friction_profile(const PotentialSpec& spec, const BathSpec& bath, double x) {
    const double d2 = evaluate(spec, x).d2phi;
    return d2 * d2 / (4.0 * M_PI * bath.rho_m * bath.c * bath.c * bath.c);
}

double mean_friction(const PotentialSpec& spec, const BathSpec& bath, const SolverConfig& cfg) {
    bath.validate();
    if (const auto* fk = std::get_if<FrenkelKantorova>(&spec)) {
        const double a4 = std::pow(fk->a, 4);
        return 2.0 * M_PI * M_PI * M_PI * fk->A * fk->A /
               (bath.rho_m * bath.c * bath.c * bath.c * a4);
    }
    const double L = period(spec);
    const double x0 = std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Tabulated>)
                return s.spline.x_min();
            else
                return 0.0;
        },
        spec);
    const double integral = numerics::adaptive_quadrature(
        [&](double x) { return friction_profile(spec, bath, x); }, x0, x0 + L, cfg);
    return integral / L;
}

double chain_envelope(int N, double l, double lc) {
    const double half_u = M_PI * l / lc;
    const double denom = std::sin(half_u);
    if (std::abs(denom) < 1e-12) return static_cast<double>(N);  // fully in phase
    return std::abs(std::sin(N * half_u) / denom);
}

Tabulated load_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::ConfigError, "cannot open potential file: " + path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x >> y)) {
            if (xs.empty()) continue;  // header row
            fail(ErrorCode::ConfigError, "malformed row in potential file: " + line);
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    require(xs.size() >= 5, ErrorCode::ConfigError,
            "tabulated potential needs at least 5 points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        require(xs[i] > xs[i - 1], ErrorCode::ConfigError,
                "tabulated potential x must be strictly increasing");
    return Tabulated{numerics::CubicSpline(std::move(xs), std::move(ys))};
}

}  // namespace qbrown::potentials
