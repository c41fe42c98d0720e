#include "fermi/chart.hpp"

#include <cmath>
#include <limits>

#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"

namespace fermi {

namespace {

constexpr double kRelativeOnly = std::numeric_limits<double>::min();

std::string slice_message(const Cosmology& cosmo, double tau, double rho, double radius) {
    std::string msg = "rho = " + format_double(rho) + " is outside the slice at tau = " +
                      format_double(tau) + " (rho_M = " + format_double(radius) + ")";
    if (cosmo.model.family() == ModelFamily::exponential) {
        msg += "; de Sitter chart requires cos(H0 rho) > exp(-H0 tau) and H0 rho < pi/2";
    }
    return msg;
}

}  // namespace

std::array<double, 3> FermiEvent::cartesian() const {
    const double s = std::sin(theta);
    return {rho * s * std::cos(phi), rho * s * std::sin(phi), rho * std::cos(theta)};
}

FermiEvent FermiEvent::from_cartesian(double tau, const std::array<double, 3>& xyz) {
    const double rho = std::hypot(xyz[0], xyz[1], xyz[2]);
    const double theta = rho > 0.0 ? std::acos(xyz[2] / rho) : 0.0;
    const double phi = std::atan2(xyz[1], xyz[0]);
    return {tau, rho, theta, phi};
}

double slice_radius(const Cosmology& cosmo, double tau, const NumericsConfig& cfg) {
    return rho_of_u(cosmo, tau, u_limit(cosmo, tau), cfg);
}

double u_of_rho(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("sigma_of_rho: tau must be positive");
    if (!(rho >= 0.0)) throw DomainError("sigma_of_rho: rho must be >= 0, got " + format_double(rho));
    if (rho == 0.0) return 0.0;

    const double radius = slice_radius(cosmo, tau, cfg);
    if (!(rho < radius)) {
        throw OutOfSliceError("sigma_of_rho: " + slice_message(cosmo, tau, rho, radius), rho, radius);
    }

    const auto residual = [&](double u) { return rho_of_u(cosmo, tau, u, cfg) - rho; };
    const double u_cap = u_limit(cosmo, tau);
    // ρ ≈ u/H near the observer.
    double hi = std::min(2.0 * rho * hubble(cosmo, tau), u_cap);
    int doublings = 0;
    while (residual(hi) < 0.0) {
        if (hi >= u_cap || ++doublings > cfg.max_bracket_doublings) {
            throw AccuracyError("sigma_of_rho: could not bracket rho = " + format_double(rho), hi,
                                kInfinity);
        }
        hi = std::min(2.0 * hi, u_cap);
    }
    return find_root_monotone(residual, 0.0, hi, cfg, kRelativeOnly);
}

double sigma_of_rho(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    const double u = u_of_rho(cosmo, tau, rho, cfg);
    return 1.0 + u * u;
}

RWEvent rw_from_fermi(const Cosmology& cosmo, const FermiEvent& ev, const NumericsConfig& cfg) {
    const double u = u_of_rho(cosmo, ev.tau, ev.rho, cfg);
    return {t_of_u(cosmo, ev.tau, u), chi_of_u(cosmo, ev.tau, u, cfg), ev.theta, ev.phi};
}

FermiEvent fermi_from_rw(const Cosmology& cosmo, const RWEvent& ev, const NumericsConfig& cfg) {
    const ScaleFactorModel& m = cosmo.model;
    const double t1 = ev.t;
    const double chi1 = ev.chi;
    const double a1 = m.a(t1);  // validates t1
    if (!(chi1 >= 0.0)) throw DomainError("fermi_from_rw: chi must be >= 0");
    if (chi1 == 0.0) return {t1, 0.0, ev.theta, ev.phi};

    if (!m.global_chart()) {
        if (m.family() != ModelFamily::exponential) {
            throw DomainError("fermi_from_rw: chart is not global and containment cannot be verified");
        }
        const double h0 = m.parameter();
        if (!(a1 * chi1 * h0 < 1.0)) {
            throw DomainError("fermi_from_rw: event outside the de Sitter Fermi chart (need a(t) chi < 1/H0 = " +
                              format_double(1.0 / h0) + ")");
        }
    }

    // u(τ) with σ(τ) = (a(τ)/a(t₁))² held at the target event.
    const auto u_at = [&](double w) {
        const double a = m.a(t1 + w);
        return std::sqrt((a - a1) * (a + a1)) / a1;
    };
    const auto residual = [&](double w) { return chi_of_u(cosmo, t1 + w, u_at(w), cfg) - chi1; };

    double w_hi = t1;
    int doublings = 0;
    while (true) {
        const bool capped = t1 + w_hi >= m.t_max();
        if (capped) w_hi = m.t_max() - t1;
        if (w_hi > 0.0 && residual(w_hi) >= 0.0) break;
        if (capped || ++doublings > cfg.max_bracket_doublings) {
            throw AccuracyError("fermi_from_rw: bracket growth for tau exceeded its cap", t1 + w_hi,
                                kInfinity);
        }
        w_hi = 2.0 * (t1 + w_hi) - t1;
    }
    const double w = find_root_monotone(residual, 0.0, w_hi, cfg, kRelativeOnly);
    const double tau1 = t1 + w;
    return {tau1, rho_of_u(cosmo, tau1, u_at(w), cfg), ev.theta, ev.phi};
}

double jacobian_F(const Cosmology& cosmo, double tau, double sigma, const NumericsConfig& cfg) {
    if (!(sigma > 1.0)) throw DomainError("jacobian_F: sigma must exceed 1");
    check_sigma(cosmo, tau, sigma);
    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);
    const double root = std::sqrt(sigma);
    const double u = std::sqrt(sigma - 1.0);
    const double bd = m.b_dot(a0 / root);
    const double k1 = bddot_moment(cosmo, tau, u, 1.0, cfg);
    return m.a_dot(tau) / (2.0 * sigma) * bd * (bd / u + a0 / (2.0 * root) * k1);
}

FlowComponents comoving_flow_fermi(const Cosmology& cosmo, const RWEvent& ev,
                                   const NumericsConfig& cfg, double rel_step) {
    const double h = ev.t * rel_step;
    if (!(h > 0.0) || ev.t + h == ev.t || !(ev.t - h > 0.0)) {
        throw AccuracyError("comoving_flow_fermi: finite-difference step underflow", 0.0, kInfinity);
    }
    const FermiEvent plus = fermi_from_rw(cosmo, {ev.t + h, ev.chi, ev.theta, ev.phi}, cfg);
    const FermiEvent minus = fermi_from_rw(cosmo, {ev.t - h, ev.chi, ev.theta, ev.phi}, cfg);
    return {(plus.tau - minus.tau) / (2.0 * h), (plus.rho - minus.rho) / (2.0 * h)};
}

}  // namespace fermi
