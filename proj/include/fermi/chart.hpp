#pragma once

#include <array>

#include "fermi/cosmology.hpp"
#include "fermi/numerics.hpp"

namespace fermi {

/// Robertson-Walker event; the angles are carried through unchanged.
struct RWEvent {
    double t = 0.0;
    double chi = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Fermi event in polar form (τ, ρ, θ, φ).
struct FermiEvent {
    double tau = 0.0;
    double rho = 0.0;
    double theta = 0.0;
    double phi = 0.0;

    /// (x, y, z) = ρ(sin θ cos φ, sin θ sin φ, cos θ).
    std::array<double, 3> cartesian() const;
    static FermiEvent from_cartesian(double tau, const std::array<double, 3>& xyz);
};

/// Radius of the simultaneity slice, ρ(τ, σ → σ_∞). Shared by the chart checks.
double slice_radius(const Cosmology& cosmo, double tau, const NumericsConfig& cfg = {});

/// The σ with ρ(τ, σ) = rho. Throws OutOfSliceError (carrying ρ_Mτ) when rho ≥ ρ_Mτ.
double sigma_of_rho(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg = {});
/// Same solve returning u = √(σ − 1).
double u_of_rho(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg = {});

/// Fermi → RW along the orthogonal geodesic.
RWEvent rw_from_fermi(const Cosmology& cosmo, const FermiEvent& ev, const NumericsConfig& cfg = {});

/// RW → Fermi. Solves χ(τ, (a(τ)/a(t₁))²) = χ₁ for τ₁ ≥ t₁, then evaluates ρ.
///
/// For charts that are not global only the exponential family is accepted,
/// and only for a(t₁)χ₁ < 1/H₀; anything else raises DomainError.
FermiEvent fermi_from_rw(const Cosmology& cosmo, const RWEvent& ev, const NumericsConfig& cfg = {});

/// Jacobian determinant of (τ, σ) ↦ (t, χ), for 1 < σ < σ_∞(τ).
double jacobian_F(const Cosmology& cosmo, double tau, double sigma, const NumericsConfig& cfg = {});

struct FlowComponents {
    double dtau_dt = 0.0;
    double drho_dt = 0.0;
};

/// Components of ∂/∂t in Fermi polar coordinates at ev, from central
/// differences of fermi_from_rw in t with step rel_step·t.
FlowComponents comoving_flow_fermi(const Cosmology& cosmo, const RWEvent& ev,
                                   const NumericsConfig& cfg = {}, double rel_step = 1e-5);

}  // namespace fermi
