#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qbrown/core.hpp"

namespace qbrown::numerics {

using ScalarFn = std::function<double(double)>;

/// Brent's method on a sign-changing bracket [lo, hi].
/// Throws NoBracket if f(lo) and f(hi) have the same (nonzero) sign.
double brent_root(const ScalarFn& f, double lo, double hi,
                  const SolverConfig& cfg = SolverConfig{});

/// Globally adaptive Gauss-Kronrod 15(7) quadrature on a finite interval.
double adaptive_quadrature(const ScalarFn& f, double lo, double hi,
                           const SolverConfig& cfg = SolverConfig{});

/// Integral over [a, inf) via the rational map x = a + t/(1-t).
double integrate_to_infinity(const ScalarFn& f, double a,
                             const SolverConfig& cfg = SolverConfig{});

/// Modified Bessel functions of the first kind, orders 0 and 1.
/// Power series below x = 18, large-argument asymptotic expansion above;
/// relative accuracy ~1e-14. The unscaled forms throw Overflow once
/// exp(x) leaves double range; the scaled forms return exp(-x) I_n(x).
double bessel_i0(double x);
double bessel_i1(double x);
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

/// Clamped cubic spline; end slopes from one-sided 3-point differences when
/// not supplied. Evaluation outside the knot hull throws OutOfDomain.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    CubicSpline(std::vector<double> x, std::vector<double> y,
                double slope_lo, double slope_hi);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    void build(double slope_lo, double slope_hi);
    std::size_t segment(double x) const;

    std::vector<double> x_, y_;
    std::vector<double> b_, c_, d_;  // y + b t + c t^2 + d t^3 on each segment
};

/// Dormand-Prince 5(4) with adaptive step size.
/// solve_at returns the state at each requested output time (which must be
/// non-decreasing, starting at t0).
class OdeSolver {
  public:
    using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;
    /// Optional guard evaluated on each proposed state; returning false
    /// rejects the step and retries with a smaller one.
    using Guard = std::function<bool(double t, std::span<const double> y)>;

    explicit OdeSolver(SolverConfig cfg = SolverConfig{}) : cfg_(cfg) {}

    std::vector<std::vector<double>> solve_at(const Rhs& rhs, double t0,
                                              std::vector<double> y0,
                                              std::span<const double> t_out,
                                              const Guard& guard = nullptr) const;

  private:
    SolverConfig cfg_;
};

/// Thomas algorithm for a tridiagonal system (in-place on copies).
/// diag/lower/upper index convention: lower[i] multiplies x[i-1] in row i.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                      std::vector<double> upper, std::vector<double> rhs);

/// Cyclic tridiagonal solve (periodic wrap via Sherman-Morrison).
/// corner_lo is the (0, n-1) entry, corner_hi the (n-1, 0) entry.
std::vector<double> solve_cyclic_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                                             std::vector<double> upper, double corner_lo,
                                             double corner_hi, std::vector<double> rhs);

}  // namespace qbrown::numerics
