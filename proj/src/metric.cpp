#include "fermi/metric.hpp"

#include <cmath>

#include "fermi/chart.hpp"
#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"

namespace fermi {

double s_k(double chi, int k) {
    switch (k) {
        case 0: return chi;
        case -1: return std::sinh(chi);
        case 1: throw UnsupportedCurvatureError("s_k: k = +1 is not supported");
        default: throw DomainError("s_k: k must be 0 or -1, got " + std::to_string(k));
    }
}

double g_tau_tau_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg) {
    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);
    const double root = std::sqrt(1.0 + u * u);
    const double k1 = u > 0.0 ? bddot_moment(cosmo, tau, u, 1.0, cfg) : 0.0;
    const double bracket = m.b_dot(a0 / root) + a0 * u / (2.0 * root) * k1;
    const double ad = m.a_dot(tau);
    return -(ad * ad) * bracket * bracket;
}

double g_tau_tau(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    return g_tau_tau_u(cosmo, tau, u_of_rho(cosmo, tau, rho, cfg), cfg);
}

PolarMetric metric_polar_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg) {
    const double a0 = cosmo.model.a(tau);
    const double s = s_k(chi_of_u(cosmo, tau, u, cfg), cosmo.k);
    return {g_tau_tau_u(cosmo, tau, u, cfg), 1.0, a0 * a0 * s * s / (1.0 + u * u)};
}

PolarMetric metric_polar(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    return metric_polar_u(cosmo, tau, u_of_rho(cosmo, tau, rho, cfg), cfg);
}

namespace {

double lambda_direct(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    const double u = u_of_rho(cosmo, tau, rho, cfg);
    const double a0 = cosmo.model.a(tau);
    const double s = s_k(chi_of_u(cosmo, tau, u, cfg), cosmo.k);
    const double r2 = rho * rho;
    return (a0 * a0 * s * s / (1.0 + u * u) - r2) / (r2 * r2);
}

}  // namespace

double lambda_k(const Cosmology& cosmo, double tau, double rho, const NumericsConfig& cfg) {
    if (!(tau > 0.0)) throw DomainError("lambda_k: tau must be positive");
    if (!(rho >= 0.0)) throw DomainError("lambda_k: rho must be >= 0");
    const double eps = cfg.rho_eps_factor * tau;
    if (rho >= eps) return lambda_direct(cosmo, tau, rho, cfg);

    const double l1 = lambda_direct(cosmo, tau, eps, cfg);
    const double l2 = lambda_direct(cosmo, tau, 2.0 * eps, cfg);
    const double slope = (l2 - l1) / (3.0 * eps * eps);
    return l1 + slope * (rho * rho - eps * eps);
}

Matrix4 metric_cartesian(const Cosmology& cosmo, double tau, const std::array<double, 3>& xyz,
                         const NumericsConfig& cfg) {
    const double rho = std::hypot(xyz[0], xyz[1], xyz[2]);
    const double lam = lambda_k(cosmo, tau, rho, cfg);
    Matrix4 g{};
    g[0][0] = g_tau_tau(cosmo, tau, rho, cfg);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double delta = i == j ? 1.0 : 0.0;
            g[i + 1][j + 1] = delta + lam * (rho * rho * delta - xyz[i] * xyz[j]);
        }
    }
    return g;
}

}  // namespace fermi
