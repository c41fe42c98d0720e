#pragma once

#include <array>

#include "fermi/cosmology.hpp"
#include "fermi/numerics.hpp"

namespace fermi {

/// ds² = g_ττ dτ² + dρ² + ang·dΩ² in Fermi polar coordinates.
struct PolarMetric {
    double g_tau_tau = -1.0;
    double g_rho_rho = 1.0;
    double ang = 0.0;  ///< a²(τ) S_k²(χ) / σ
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// S_k(χ): χ for k = 0, sinh χ for k = −1. k = +1 is unsupported.
double s_k(double chi, int k);

/// g_ττ at a given u = √(σ − 1):
/// −ȧ²[ḃ(a/√σ) + a·(u/(2√σ))·∫₁^σ b̈(a/√s)/(s√(s−1)) ds]².
double g_tau_tau_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg = {});

double g_tau_tau(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg = {});

/// Polar metric at a given u; ang uses χ(τ, σ).
PolarMetric metric_polar_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg = {});

PolarMetric metric_polar(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg = {});

/// λ_k = (ang − ρ²)/ρ⁴. Below ρ_eps = cfg.rho_eps_factor·τ the value comes
/// from a fit linear in ρ² through λ(ρ_eps) and λ(2ρ_eps); at ρ = 0 this is
/// the Richardson extrapolant.
double lambda_k(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg = {});

/// Components in the order (τ, x, y, z):
/// g₀₀ = g_ττ, g_ij = δ_ij + λ_k(ρ² δ_ij − x_i x_j), g₀ᵢ = 0.
Matrix4 metric_cartesian(const Cosmology& cosmo, double tau, const std::array<double, 3>& xyz,
                         const NumericsConfig& cfg = {});

}  // namespace fermi
