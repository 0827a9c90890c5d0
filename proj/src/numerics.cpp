#include "qbrown/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace qbrown::numerics {

double brent_root(const ScalarFn& f, double lo, double hi, const SolverConfig& cfg) {
    cfg.validate();
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    require(fa * fb <= 0.0, ErrorCode::NoBracket, "f(lo) and f(hi) have the same sign");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b)
                            + 0.5 * cfg.root_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    fail(ErrorCode::NoConvergence, "brent_root: iteration limit reached");
}

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1], with the embedded 7-point
// Gauss weights on the shared nodes (odd indices).
constexpr double kGK15Nodes[15] = {
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr double kK15Weights[15] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Segment {
    double a, b, integral, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const ScalarFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(mid + half * kGK15Nodes[i]);
        k15 += kK15Weights[i] * v;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * v;
    }
    k15 *= half;
    g7 *= half;
    const double diff = std::abs(k15 - g7);
    return {a, b, k15, diff};
}

}  // namespace

double adaptive_quadrature(const ScalarFn& f, double lo, double hi, const SolverConfig& cfg) {
    cfg.validate();
    require(lo < hi, ErrorCode::ConfigError, "adaptive_quadrature requires lo < hi");
    std::priority_queue<Segment> queue;
    Segment whole = gk15(f, lo, hi);
    require(std::isfinite(whole.integral), ErrorCode::NoConvergence,
            "integrand not finite on the interval");
    double total = whole.integral;
    double total_err = whole.error;
    queue.push(whole);
    const int max_segments = std::max(4096, cfg.max_iterations * 64);
    int n_segments = 1;
    while (total_err > cfg.quadrature_rel_tol * std::max(std::abs(total), 1e-300) &&
           total_err > 1e-300) {
        require(n_segments < max_segments, ErrorCode::NoConvergence,
                "adaptive_quadrature: segment limit reached");
        Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        require(std::isfinite(left.integral) && std::isfinite(right.integral),
                ErrorCode::NoConvergence, "integrand not finite on the interval");
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++n_segments;
    }
    return total;
}

double integrate_to_infinity(const ScalarFn& f, double a, const SolverConfig& cfg) {
    // x = a + t/(1-t), dx = dt/(1-t)^2 maps [0,1) onto [a,inf); the GK nodes
    // are interior so t = 1 is never evaluated.
    auto g = [&](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return adaptive_quadrature(g, 0.0, 1.0, cfg);
}

namespace {

// I0/I1 power series: all terms positive, no cancellation.
double bessel_i_series(int order, double x) {
    const double q = 0.25 * x * x;
    double term = (order == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// e^{-x} I_n(x) via the large-argument expansion with mu = 4 n^2:
// I_n(x) ~ e^x/sqrt(2 pi x) [1 - (mu-1)/8x + (mu-1)(mu-9)/2!(8x)^2 - ...].
// Terms are summed until they stop decreasing (optimal truncation).
double bessel_i_asymptotic_scaled(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        const double m = 2.0 * k - 1.0;
        term *= -(mu - m * m) / (8.0 * x * k);
        if (std::abs(term) >= prev) break;
        sum += term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

constexpr double kBesselSeriesCut = 18.0;
constexpr double kBesselOverflow = 700.0;  // exp(700) ~ 1e304

}  // namespace

double bessel_i0(double x) {
    require(x >= 0.0, ErrorCode::OutOfDomain, "bessel_i0 requires x >= 0");
    if (x <= kBesselSeriesCut) return bessel_i_series(0, x);
    require(x <= kBesselOverflow, ErrorCode::Overflow,
            "bessel_i0 overflows; use bessel_i0_scaled");
    return bessel_i_asymptotic_scaled(0, x) * std::exp(x);
}

double bessel_i1(double x) {
    require(x >= 0.0, ErrorCode::OutOfDomain, "bessel_i1 requires x >= 0");
    if (x <= kBesselSeriesCut) return bessel_i_series(1, x);
    require(x <= kBesselOverflow, ErrorCode::Overflow,
            "bessel_i1 overflows; use bessel_i1_scaled");
    return bessel_i_asymptotic_scaled(1, x) * std::exp(x);
}

double bessel_i0_scaled(double x) {
    require(x >= 0.0, ErrorCode::OutOfDomain, "bessel_i0_scaled requires x >= 0");
    if (x <= kBesselSeriesCut) return bessel_i_series(0, x) * std::exp(-x);
    return bessel_i_asymptotic_scaled(0, x);
}

double bessel_i1_scaled(double x) {
    require(x >= 0.0, ErrorCode::OutOfDomain, "bessel_i1_scaled requires x >= 0");
    if (x <= kBesselSeriesCut) return bessel_i_series(1, x) * std::exp(-x);
    return bessel_i_asymptotic_scaled(1, x);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    require(x_.size() >= 5, ErrorCode::ConfigError, "spline needs at least 5 points");
    require(x_.size() == y_.size(), ErrorCode::ConfigError, "spline x/y size mismatch");
    for (std::size_t i = 1; i < x_.size(); ++i)
        require(x_[i] > x_[i - 1], ErrorCode::ConfigError, "spline x must be strictly increasing");
    // one-sided 3-point end slopes
    auto end_slope = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
        const double h1 = x_[i1] - x_[i0], h2 = x_[i2] - x_[i0];
        const double d1 = (y_[i1] - y_[i0]) / h1, d2 = (y_[i2] - y_[i0]) / h2;
        return (d1 * h2 - d2 * h1) / (h2 - h1);
    };
    const std::size_t n = x_.size();
    build(end_slope(0, 1, 2), end_slope(n - 1, n - 2, n - 3));
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y,
                         double slope_lo, double slope_hi)
    : x_(std::move(x)), y_(std::move(y)) {
    require(x_.size() >= 5, ErrorCode::ConfigError, "spline needs at least 5 points");
    require(x_.size() == y_.size(), ErrorCode::ConfigError, "spline x/y size mismatch");
    for (std::size_t i = 1; i < x_.size(); ++i)
        require(x_[i] > x_[i - 1], ErrorCode::ConfigError, "spline x must be strictly increasing");
    build(slope_lo, slope_hi);
}

void CubicSpline::build(double slope_lo, double slope_hi) {
    const std::size_t n = x_.size();
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    // clamped boundary rows fix the first derivative
    diag[0] = 1.0;
    rhs[0] = slope_lo;
    diag[n - 1] = 1.0;
    rhs[n - 1] = slope_hi;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        lower[i] = 1.0 / hl;
        diag[i] = 2.0 * (1.0 / hl + 1.0 / hr);
        upper[i] = 1.0 / hr;
        rhs[i] = 3.0 * ((y_[i] - y_[i - 1]) / (hl * hl) + (y_[i + 1] - y_[i]) / (hr * hr));
    }
    std::vector<double> m = solve_tridiagonal(lower, diag, upper, rhs);  // nodal slopes
    b_.resize(n - 1);
    c_.resize(n - 1);
    d_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        const double dy = (y_[i + 1] - y_[i]) / h;
        b_[i] = m[i];
        c_[i] = (3.0 * dy - 2.0 * m[i] - m[i + 1]) / h;
        d_[i] = (m[i] + m[i + 1] - 2.0 * dy) / (h * h);
    }
}

std::size_t CubicSpline::segment(double x) const {
    require(x >= x_.front() && x <= x_.back(), ErrorCode::OutOfDomain,
            "spline evaluation outside the tabulated range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 2 > x_.size()) i = x_.size() - 2;
    return i;
}

double CubicSpline::value(double x) const {
    const std::size_t i = segment(x);
    const double t = x - x_[i];
    return y_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = segment(x);
    const double t = x - x_[i];
    return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline::second_derivative(double x) const {
    const std::size_t i = segment(x);
    const double t = x - x_[i];
    return 2.0 * c_[i] + 6.0 * t * d_[i];
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

}  // namespace

std::vector<std::vector<double>> OdeSolver::solve_at(const Rhs& rhs, double t0,
                                                     std::vector<double> y0,
                                                     std::span<const double> t_out,
                                                     const Guard& guard) const {
    cfg_.validate();
    require(!t_out.empty(), ErrorCode::ConfigError, "solve_at: empty output grid");
    const std::size_t n = y0.size();
    std::vector<std::vector<double>> out;
    out.reserve(t_out.size());

    std::vector<double> y = std::move(y0);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);
    double t = t0;
    rhs(t, y, k1);
    bool k1_fresh = true;

    const double t_end_final = t_out.back();
    double h = (t_end_final > t0) ? (t_end_final - t0) * 1e-4 : 1e-4;
    if (h <= 0.0) h = 1e-12;

    std::size_t out_idx = 0;
    // emit any outputs at exactly t0
    while (out_idx < t_out.size() && t_out[out_idx] <= t0) {
        out.push_back(y);
        ++out_idx;
    }

    long long max_steps = static_cast<long long>(cfg_.max_iterations) * 1000000LL;
    long long steps = 0;
    while (out_idx < t_out.size()) {
        const double t_target = t_out[out_idx];
        while (t < t_target) {
            require(++steps < max_steps, ErrorCode::NoConvergence, "ODE step limit reached");
            double h_try = std::min(h, t_target - t);
            if (!k1_fresh) {
                rhs(t, y, k1);
                k1_fresh = true;
            }
            for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h_try * kA21 * k1[i];
            rhs(t + h_try / 5.0, ytmp, k2);
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (kA31 * k1[i] + kA32 * k2[i]);
            rhs(t + 0.3 * h_try, ytmp, k3);
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
            rhs(t + 0.8 * h_try, ytmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
            rhs(t + 8.0 / 9.0 * h_try, ytmp, k5);
            for (std::size_t i = 0; i < n; ++i)
                ytmp[i] = y[i] + h_try * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                                          kA64 * k4[i] + kA65 * k5[i]);
            rhs(t + h_try, ytmp, k6);
            for (std::size_t i = 0; i < n; ++i)
                y5[i] = y[i] + h_try * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                                        kB6 * k6[i]);
            rhs(t + h_try, y5, k7);

            double err = 0.0;
            bool finite = true;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = h_try * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                                          kE6 * k6[i] + kE7 * k7[i]);
                const double sc = cfg_.ode_abs_tol +
                                  cfg_.ode_rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double r = e / sc;
                err += r * r;
                if (!std::isfinite(y5[i])) finite = false;
            }
            err = std::sqrt(err / static_cast<double>(n));

            const bool guard_ok = !guard || guard(t + h_try, y5);
            if (finite && err <= 1.0 && guard_ok) {
                t += h_try;
                y.swap(y5);
                k1.swap(k7);  // FSAL
                k1_fresh = true;
                const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h = h_try * std::clamp(grow, 0.2, 5.0);
            } else {
                double shrink = finite ? 0.9 * std::pow(std::max(err, 1e-10), -0.2) : 0.1;
                if (!guard_ok) shrink = std::min(shrink, 0.5);
                h = h_try * std::clamp(shrink, 0.05, 0.9);
                k1_fresh = true;  // k1 still matches (t, y)
                require(h > std::abs(t) * 1e-15 + 1e-300, ErrorCode::NoConvergence,
                        "ODE step size underflow");
            }
        }
        out.push_back(y);
        ++out_idx;
    }
    return out;
}

std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                             std::vector<double> upper, double corner_lo,
                                             double corner_hi, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    // Sherman-Morrison: A = B + u v^T with u = (gamma, 0, .., corner_hi*?) ...
    const double gamma = -diag[0];
    std::vector<double> d = diag;
    d[0] -= gamma;
    d[n - 1] -= corner_lo * corner_hi / gamma;
    std::vector<double> x = solve_tridiagonal(lower, d, upper, rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = corner_hi;
    std::vector<double> z = solve_tridiagonal(lower, d, upper, u);
    const double vx = x[0] + (corner_lo / gamma) * x[n - 1];
    const double vz = z[0] + (corner_lo / gamma) * z[n - 1];
    const double factor = vx / (1.0 + vz);
    for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
    return x;
}

}  // namespace qbrown::numerics
