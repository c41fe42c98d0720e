#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermi/cosmology.hpp"
#include "fermi/numerics.hpp"

namespace fermi::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string detail;  ///< exception text when the check threw
};

struct OdeAgreement {
    double max_dt = 0.0;
    double max_dchi = 0.0;
    int compared = 0;
};

/// Integrates the geodesic ODE to fraction·ρ_Mτ with `steps` RK4 steps and
/// compares t and χ with the quadrature maps at equal arc length.
OdeAgreement ode_agreement(const Cosmology& cosmo, double tau, double fraction, int steps,
                           const NumericsConfig& cfg = {});

std::vector<CheckResult> closed_form_suite(const NumericsConfig& cfg = {});

/// One check per model; the default set is the power laws α ∈ {1/3, 1/2, 2/3, 1}
/// and de Sitter with H₀ = 1.
std::vector<CheckResult> ode_oracle_suite(const std::vector<Cosmology>& models,
                                          const NumericsConfig& cfg = {});
std::vector<Cosmology> default_ode_models();

std::vector<CheckResult> invariant_suite(const NumericsConfig& cfg = {});

/// suite ∈ {closed-forms, ode-oracle, invariants, all}. A model narrows the
/// ODE suite to that one cosmology. Unknown names raise DomainError.
std::vector<CheckResult> run_suite(std::string_view suite, const std::optional<Cosmology>& model,
                                   const NumericsConfig& cfg = {});

}  // namespace fermi::verify
