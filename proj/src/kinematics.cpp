#include "fermi/kinematics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fermi/chart.hpp"
#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"

namespace fermi {

namespace {

constexpr double kRelativeOnly = std::numeric_limits<double>::min();

void check_alpha(double alpha, const char* what) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError(std::string(what) + ": alpha must lie in (0, 1], got " + format_double(alpha));
    }
}

}  // namespace

double hubble_speed(const Cosmology& cosmo, double tau, double chi0) {
    if (!(chi0 >= 0.0)) throw DomainError("hubble_speed: chi0 must be >= 0");
    return cosmo.model.a_dot(tau) * chi0;
}

double u_of_chi(const Cosmology& cosmo, double tau, double chi0, const NumericsConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("fermi_speed: tau must be positive");
    if (!(chi0 >= 0.0)) throw DomainError("fermi_speed: chi0 must be >= 0");
    if (chi0 == 0.0) return 0.0;

    const double u_cap = u_limit(cosmo, tau);
    const auto residual = [&](double u) { return chi_of_u(cosmo, tau, u, cfg) - chi0; };
    if (std::isfinite(u_cap) && residual(u_cap) <= 0.0) {
        throw DomainError("fermi_speed: chi0 = " + format_double(chi0) +
                          " is not reachable in the slice at tau = " + format_double(tau));
    }
    // χ ≈ u/ȧ near the observer.
    double hi = std::min(2.0 * cosmo.model.a_dot(tau) * chi0, u_cap);
    int doublings = 0;
    while (residual(hi) < 0.0) {
        if (++doublings > cfg.max_bracket_doublings) {
            // Power laws with α < 1 keep χ bounded as σ → ∞.
            double chi_inf = kInfinity;
            try {
                chi_inf = 0.5 * bdot_moment(cosmo, tau, kInfinity, 0.5, cfg);
            } catch (const AccuracyError&) {
            }
            if (std::isfinite(chi_inf) && chi0 >= chi_inf) {
                throw DomainError("fermi_speed: chi0 = " + format_double(chi0) + " exceeds the limit " +
                                  format_double(chi_inf) + " at tau = " + format_double(tau));
            }
            throw AccuracyError("fermi_speed: could not bracket chi0 = " + format_double(chi0), hi,
                                kInfinity);
        }
        hi = std::min(2.0 * hi, u_cap);
    }
    return find_root_monotone(residual, 0.0, hi, cfg, kRelativeOnly);
}

double fermi_speed_u(const Cosmology& cosmo, double tau, double u0, const NumericsConfig& cfg) {
    if (u0 == 0.0) return 0.0;
    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);
    const double sigma0 = 1.0 + u0 * u0;
    const double first = bdot_moment(cosmo, tau, u0, 1.5, cfg);
    const double second = bddot_moment(cosmo, tau, u0, 2.0, cfg);
    const double third = bddot_moment(cosmo, tau, u0, 1.0, cfg);
    return 0.5 * m.a_dot(tau) * (first + a0 * second - a0 / sigma0 * third);
}

VelocityReport fermi_speed(const Cosmology& cosmo, double tau, double chi0, const NumericsConfig& cfg) {
    const double u0 = u_of_chi(cosmo, tau, chi0, cfg);
    VelocityReport r;
    r.tau = tau;
    r.chi0 = chi0;
    r.sigma0 = 1.0 + u0 * u0;
    r.v_fermi = fermi_speed_u(cosmo, tau, u0, cfg);
    r.v_hubble = hubble_speed(cosmo, tau, chi0);
    r.rho = rho_of_u(cosmo, tau, u0, cfg);
    return r;
}

double fermi_speed_power_law(double alpha, double sigma0, const NumericsConfig& cfg) {
    check_alpha(alpha, "fermi_speed_power_law");
    if (!(sigma0 >= 1.0) || !std::isfinite(sigma0)) {
        throw DomainError("fermi_speed_power_law: sigma0 must be finite and >= 1");
    }
    if (sigma0 == 1.0) return 0.0;
    const double p = 1.0 / (2.0 * alpha);
    const double lead = integrate_sigma([p](double s) { return std::pow(s, -p - 1.0); }, 1.0, sigma0, cfg);
    double tail = 0.0;
    if (alpha != 1.0) {
        tail = (alpha - 1.0) / sigma0 *
               integrate_sigma([p](double s) { return std::pow(s, -p); }, 1.0, sigma0, cfg);
    }
    return p * (lead + tail);
}

double fermi_speed_sup(double alpha) {
    check_alpha(alpha, "fermi_speed_sup");
    const double p = 1.0 / (2.0 * alpha);
    const double value = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(p + 0.5) - std::lgamma(p + 1.0)) * p;
    if (value > (1.0 / alpha) * (1.0 + 1e-14)) {
        throw ConsistencyError("fermi_speed_sup: value " + format_double(value) + " exceeds 1/alpha");
    }
    return value;
}

double proper_radius(const Cosmology& cosmo, double tau, const NumericsConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("proper_radius: tau must be positive");
    return slice_radius(cosmo, tau, cfg);
}

double proper_radius_power_law(double alpha, double tau) {
    if (!(tau > 0.0)) throw DomainError("proper_radius_power_law: tau must be positive");
    return tau * fermi_speed_sup(alpha);
}

double velocity_identity_residual(const Cosmology& cosmo, double tau, double chi0,
                                  const NumericsConfig& cfg, double rel_step) {
    const VelocityReport r = fermi_speed(cosmo, tau, chi0, cfg);
    if (chi0 == 0.0) return 0.0;
    const double h = rel_step * tau;
    if (!(h > 0.0) || tau + h == tau || !(tau - h > 0.0)) {
        throw AccuracyError("velocity_identity_residual: finite-difference step underflow", 0.0, kInfinity);
    }
    const ScaleFactorModel& m = cosmo.model;
    const auto scaled = [&](double t) {
        return rho_of_u(cosmo, t, u_of_chi(cosmo, t, chi0, cfg), cfg) / m.a(t);
    };
    const double derivative = (scaled(tau + h) - scaled(tau - h)) / (2.0 * h);
    const double rhs = hubble(cosmo, tau) * r.rho + m.a(tau) * derivative;
    return std::abs(r.v_fermi - rhs);
}

RelationSides power_law_geometry_relation(double alpha, double tau, double sigma0,
                                          const NumericsConfig& cfg) {
    check_alpha(alpha, "power_law_geometry_relation");
    const Cosmology cosmo = power_law_cosmology(alpha);
    const double lhs = fermi_speed_power_law(alpha, sigma0, cfg);
    const double rho = rho_of_sigma(cosmo, tau, sigma0, cfg);
    double rhs = rho / tau;
    if (alpha != 1.0 && sigma0 > 1.0) {
        const double p = 1.0 / (2.0 * alpha);
        rhs += (alpha - 1.0) / (2.0 * alpha * sigma0) *
               integrate_sigma([p](double s) { return std::pow(s, -p); }, 1.0, sigma0, cfg);
    }
    return {lhs, rhs};
}

}  // namespace fermi
