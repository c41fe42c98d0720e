#pragma once

#include <vector>

#include "fermi/cosmology.hpp"
#include "fermi/numerics.hpp"

namespace fermi {

/// One event on the spacelike geodesic orthogonal to the observer at proper time tau.
struct GeodesicPoint {
    double tau = 0.0;
    double sigma = 1.0;  ///< (a(τ)/a(t))²
    double t = 0.0;
    double chi = 0.0;
    double rho = 0.0;  ///< proper arc length from the observer
};

// The maps below are parameterised either by σ ∈ [1, σ_∞(τ)) or by
// u = √(σ − 1). The u forms keep full relative precision next to the
// observer, where σ − 1 would cancel.

/// t(τ, σ) = b(a(τ)/√σ). Throws DomainError for σ outside [1, σ_∞(τ)).
double t_of_sigma(const Cosmology& cosmo, double tau, double sigma);
double t_of_u(const Cosmology& cosmo, double tau, double u);

/// χ(τ, σ) = ½ ∫₁^σ ḃ(a(τ)/√s) / (√s √(s−1)) ds.
double chi_of_sigma(const Cosmology& cosmo, double tau, double sigma,
                    const NumericsConfig& cfg = {});
double chi_of_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg = {});

/// ρ(τ, σ) = (a(τ)/2) ∫₁^σ ḃ(a(τ)/√s) / (s^{3/2} √(s−1)) ds.
double rho_of_sigma(const Cosmology& cosmo, double tau, double sigma,
                    const NumericsConfig& cfg = {});
double rho_of_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg = {});

/// ∫₁^{1+u²} ḃ(a(τ)/√s) / (s^power √(s−1)) ds.
double bdot_moment(const Cosmology& cosmo, double tau, double u, double power,
                   const NumericsConfig& cfg);

/// ∫₁^{1+u²} b̈(a(τ)/√s) / (s^power √(s−1)) ds.
double bddot_moment(const Cosmology& cosmo, double tau, double u, double power,
                    const NumericsConfig& cfg);

/// Largest admissible u at τ: +∞ when σ_∞ = ∞, otherwise √(σ_∞(1 − 10⁻¹²) − 1).
double u_limit(const Cosmology& cosmo, double tau);

/// Throws DomainError unless 1 ≤ σ < σ_∞(τ) (u form: 0 ≤ u < u_∞).
void check_sigma(const Cosmology& cosmo, double tau, double sigma);

/// n points at geometrically spaced σ from 1 to sigma_max.
std::vector<GeodesicPoint> sample_geodesic(const Cosmology& cosmo, double tau, double sigma_max,
                                           int n, const NumericsConfig& cfg = {});

struct OdePath {
    std::vector<GeodesicPoint> points;
    int clamped_radicands = 0;  ///< radicands in [−1e-13, 0) set to zero
};

/// Integrates dt/dρ = −√((a₀/a(t))² − 1), dχ/dρ = a₀/a(t)² from (τ, 0) with
/// classical RK4 at a fixed step. The start segment uses the near-origin
/// series t ≈ τ − Hρ²/2 + (HH′ − 2H³)ρ⁴/24, χ ≈ (ρ + H²ρ³/3)/a₀, since the
/// radicand vanishes at ρ = 0; its length is max(step, H⁻¹(H·step)^{5/9}).
/// The last step is shortened to land on rho_max.
///
/// Requires 0 ≤ rho_max < ρ_Mτ and step > 0.
OdePath integrate_geodesic_ode(const Cosmology& cosmo, double tau, double rho_max, double step,
                               const NumericsConfig& cfg = {});

}  // namespace fermi
