#pragma once

#include "fermi/cosmology.hpp"
#include "fermi/numerics.hpp"

namespace fermi {

/// Recession of the comoving particle at χ₀ as seen at Fermi time τ.
struct VelocityReport {
    double tau = 0.0;
    double chi0 = 0.0;
    double sigma0 = 1.0;  ///< solves χ(τ, σ₀) = χ₀
    double v_fermi = 0.0;
    double v_hubble = 0.0;
    double rho = 0.0;
};

/// v_H = ȧ(τ)·χ₀.
double hubble_speed(const Cosmology& cosmo, double tau, double chi0);

/// u₀ = √(σ₀ − 1) with χ(τ, σ₀) = χ₀. DomainError if χ₀ is not reachable in the slice.
double u_of_chi(const Cosmology& cosmo, double tau, double chi0, const NumericsConfig& cfg = {});

/// v_F at a given u₀:
/// (ȧ/2)[∫ḃ/(σ^{3/2}√(σ−1)) + a∫b̈/(σ²√(σ−1)) − (a/σ₀)∫b̈/(σ√(σ−1))], arguments a(τ)/√σ.
double fermi_speed_u(const Cosmology& cosmo, double tau, double u0, const NumericsConfig& cfg = {});

VelocityReport fermi_speed(const Cosmology& cosmo, double tau, double chi0,
                           const NumericsConfig& cfg = {});

/// τ-independent v_F(σ₀) for a(t) = t^α.
double fermi_speed_power_law(double alpha, double sigma0, const NumericsConfig& cfg = {});

/// sup v_F = √π Γ(1/(2α) + ½) / (2α Γ(1/(2α) + 1)).
/// Throws ConsistencyError if the value exceeds 1/α.
double fermi_speed_sup(double alpha);

/// ρ_Mτ, the supremum of ρ over the slice.
double proper_radius(const Cosmology& cosmo, double tau, const NumericsConfig& cfg = {});

/// τ·fermi_speed_sup(α).
double proper_radius_power_law(double alpha, double tau);

/// |v_F − dρ/dτ| at fixed χ₀, where dρ/dτ = Hρ + a·d(ρ/a)/dτ is taken by
/// central differences with step rel_step·τ.
double velocity_identity_residual(const Cosmology& cosmo, double tau, double chi0,
                                  const NumericsConfig& cfg = {}, double rel_step = 1e-4);

struct RelationSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = v_F(σ₀); rhs = ρ/τ + ((α−1)/(2ασ₀))∫₁^{σ₀} σ^{−1/(2α)}(σ−1)^{−1/2} dσ.
RelationSides power_law_geometry_relation(double alpha, double tau, double sigma0,
                                          const NumericsConfig& cfg = {});

}  // namespace fermi
