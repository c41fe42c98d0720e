#pragma once

namespace fermi::closed_forms {

enum class Family { milne, de_sitter, radiation, matter };

/// arcsec x = arccos(1/x) for x ≥ 1.
double arcsec(double x);

/// √π Γ(5/4)/Γ(3/4), the matter-era χ and ρ constant.
double matter_constant();

struct TauRho {
    double tau = 0.0;
    double rho = 0.0;
};

struct TChi {
    double t = 0.0;
    double chi = 0.0;
};

/// Exact Fermi-coordinate relations for the four special universes:
/// Milne (a = t, k = −1), de Sitter (a = e^{H₀t}), radiation (a = t^{1/2})
/// and matter (a = t^{2/3}), the last three with k = 0.
class ClosedFormModel {
public:
    ClosedFormModel(Family family, double h0 = 1.0);

    Family family() const { return family_; }
    double h0() const { return h0_; }

    double t(double tau, double sigma) const;
    double chi(double tau, double sigma) const;
    double rho(double tau, double sigma) const;
    double sigma_of_rho(double tau, double rho) const;
    double g_tau_tau(double tau, double rho) const;
    double g_tau_tau_sigma(double tau, double sigma) const;
    /// Coefficient of dΩ² at (τ, σ).
    double ang(double tau, double sigma) const;
    double v_f(double sigma) const;
    double v_f_of_chi(double tau, double chi) const;
    double rho_slice(double tau) const;
    /// Least upper bound of v_F; de Sitter gives ½.
    double v_f_sup() const;

private:
    void check(double tau, double sigma) const;

    Family family_;
    double h0_;
};

ClosedFormModel milne();
ClosedFormModel de_sitter(double h0);
ClosedFormModel radiation();
ClosedFormModel matter();

/// Milne: τ = t cosh χ, ρ = t sinh χ and its inverse.
TauRho milne_fermi_from_rw(double t, double chi);
TChi milne_rw_from_fermi(double tau, double rho);

}  // namespace fermi::closed_forms
