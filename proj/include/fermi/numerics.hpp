#pragma once

#include <functional>
#include <limits>

namespace fermi {

/// Tolerances and caps shared by every quadrature and root solve.
struct NumericsConfig {
    double quad_rel_tol = 1e-12;
    double quad_abs_tol = 1e-14;
    double root_tol = 1e-12;
    int max_iter = 200;
    /// Surrogate upper limit for σ → ∞ when the mapped tail integrand is not finite.
    double sigma_cap = 1e12;
    /// Cap on geometric bracket growth in the chart and kinematics solvers.
    int max_bracket_doublings = 60;
    /// λ_k switches to its even extrapolant below rho_eps_factor·τ.
    double rho_eps_factor = 1e-3;

    /// Throws DomainError unless all tolerances are positive and sigma_cap > 1.
    void validate() const;
};

using ScalarFn = std::function<double(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// Throws AccuracyError (carrying the best estimate) after cfg.max_iter subdivisions.
QuadratureResult integrate_adaptive(const ScalarFn& f, double lo, double hi,
                                    const NumericsConfig& cfg);

/// Computes ∫ g(σ)/√(σ−1) dσ over [sigma_lo, sigma_hi].
///
/// Only the regular factor g is supplied; the inverse square-root weight is
/// absorbed analytically. On σ ∈ [1, 2] the substitution σ = 1 + u² makes the
/// integrand 2·g(1+u²); on σ ≥ 2 the map σ = 1/s² gives a finite s-interval,
/// which also covers sigma_hi = +∞. If the mapped tail is not finite as s → 0
/// the upper limit is replaced by cfg.sigma_cap.
double integrate_sigma(const ScalarFn& g, double sigma_lo, double sigma_hi,
                       const NumericsConfig& cfg);

/// Same integral with limits given as u = √(σ−1); u_hi may be +∞.
double integrate_sigma_u(const ScalarFn& g, double u_lo, double u_hi,
                         const NumericsConfig& cfg);

struct RootResult {
    double x = 0.0;
    double lo = 0.0;  ///< final bracket
    double hi = 0.0;
    int iterations = 0;
};

/// Brent-style bracketing solve of g(x) = 0 on [lo, hi].
///
/// Stops when the bracket width is at most cfg.root_tol·max(x_scale, |x|).
/// Passing a tiny x_scale turns the criterion into a purely relative one.
/// Throws BracketError if g(lo), g(hi) share a sign and AccuracyError when
/// cfg.max_iter is exhausted.
RootResult find_root_bracket(const ScalarFn& g, double lo, double hi,
                             const NumericsConfig& cfg, double x_scale = 1.0);

/// Root abscissa of a monotone function bracketed by [lo, hi].
double find_root_monotone(const ScalarFn& g, double lo, double hi,
                          const NumericsConfig& cfg, double x_scale = 1.0);

/// Γ(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x ≤ 0.
double gamma_fn(double x);

/// Gauss hypergeometric ₂F₁(a, b; c; z) for z ∈ [0, 1].
///
/// Throws DomainError when c is a non-positive integer, when z lies outside
/// [0, 1], or when z = 1 and c − a − b ≤ 0.
double hyp2f1(double a, double b, double c, double z);

}  // namespace fermi
