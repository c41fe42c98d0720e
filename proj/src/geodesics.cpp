#include "fermi/geodesics.hpp"

#include <array>
#include <cmath>

#include "fermi/errors.hpp"

namespace fermi {

namespace {

constexpr double kSigmaInfMargin = 1e-12;
constexpr double kRadicandClamp = 1e-13;

void check_tau(double tau, const char* what) {
    if (!(tau > 0.0)) {
        throw DomainError(std::string(what) + ": tau must be positive, got " + format_double(tau));
    }
}

void check_u(const Cosmology& cosmo, double tau, double u, const char* what) {
    check_tau(tau, what);
    if (!(u >= 0.0)) {
        throw DomainError(std::string(what) + ": sigma must be >= 1");
    }
    const double s_inf = sigma_infinity(cosmo, tau);
    if (std::isfinite(s_inf) && !(1.0 + u * u < s_inf)) {
        throw DomainError(std::string(what) + ": sigma " + format_double(1.0 + u * u) +
                          " not below sigma_inf(tau) = " + format_double(s_inf));
    }
}

}  // namespace

void check_sigma(const Cosmology& cosmo, double tau, double sigma) {
    if (!(sigma >= 1.0)) {
        throw DomainError("sigma must be >= 1, got " + format_double(sigma));
    }
    check_u(cosmo, tau, std::sqrt(sigma - 1.0), "check_sigma");
}

double u_limit(const Cosmology& cosmo, double tau) {
    check_tau(tau, "u_limit");
    const double s_inf = sigma_infinity(cosmo, tau);
    return std::isfinite(s_inf) ? std::sqrt(s_inf * (1.0 - kSigmaInfMargin) - 1.0) : kInfinity;
}

double t_of_u(const Cosmology& cosmo, double tau, double u) {
    check_u(cosmo, tau, u, "t_of_sigma");
    if (u == 0.0) return tau;
    return cosmo.model.b(cosmo.model.a(tau) / std::sqrt(1.0 + u * u));
}

double t_of_sigma(const Cosmology& cosmo, double tau, double sigma) {
    if (!(sigma >= 1.0)) {
        throw DomainError("t_of_sigma: sigma must be >= 1, got " + format_double(sigma));
    }
    return t_of_u(cosmo, tau, std::sqrt(sigma - 1.0));
}

double bdot_moment(const Cosmology& cosmo, double tau, double u, double power,
                   const NumericsConfig& cfg) {
    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);
    const auto g = [&m, a0, power](double s) { return m.b_dot(a0 / std::sqrt(s)) * std::pow(s, -power); };
    return integrate_sigma_u(g, 0.0, u, cfg);
}

double bddot_moment(const Cosmology& cosmo, double tau, double u, double power,
                    const NumericsConfig& cfg) {
    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);
    const auto g = [&m, a0, power](double s) { return m.b_ddot(a0 / std::sqrt(s)) * std::pow(s, -power); };
    return integrate_sigma_u(g, 0.0, u, cfg);
}

double chi_of_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg) {
    check_u(cosmo, tau, u, "chi_of_sigma");
    return 0.5 * bdot_moment(cosmo, tau, u, 0.5, cfg);
}

double chi_of_sigma(const Cosmology& cosmo, double tau, double sigma, const NumericsConfig& cfg) {
    if (!(sigma >= 1.0)) {
        throw DomainError("chi_of_sigma: sigma must be >= 1, got " + format_double(sigma));
    }
    return chi_of_u(cosmo, tau, std::sqrt(sigma - 1.0), cfg);
}

double rho_of_u(const Cosmology& cosmo, double tau, double u, const NumericsConfig& cfg) {
    check_tau(tau, "rho_of_sigma");
    if (std::isfinite(u)) check_u(cosmo, tau, u, "rho_of_sigma");
    return 0.5 * cosmo.model.a(tau) * bdot_moment(cosmo, tau, u, 1.5, cfg);
}

double rho_of_sigma(const Cosmology& cosmo, double tau, double sigma, const NumericsConfig& cfg) {
    if (!(sigma >= 1.0)) {
        throw DomainError("rho_of_sigma: sigma must be >= 1, got " + format_double(sigma));
    }
    return rho_of_u(cosmo, tau, std::sqrt(sigma - 1.0), cfg);
}

std::vector<GeodesicPoint> sample_geodesic(const Cosmology& cosmo, double tau, double sigma_max,
                                           int n, const NumericsConfig& cfg) {
    if (n < 2) throw DomainError("sample_geodesic: need n >= 2");
    if (!(sigma_max > 1.0)) throw DomainError("sample_geodesic: sigma_max must exceed 1");
    check_sigma(cosmo, tau, sigma_max);

    std::vector<GeodesicPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    const double log_max = std::log(sigma_max);
    for (int i = 0; i < n; ++i) {
        const double sigma = (i == n - 1) ? sigma_max : std::exp(log_max * i / (n - 1));
        // expm1 keeps σ − 1 exact-ish for the first samples.
        const double u = (i == n - 1) ? std::sqrt(sigma_max - 1.0)
                                      : std::sqrt(std::expm1(log_max * i / (n - 1)));
        points.push_back({tau, sigma, t_of_u(cosmo, tau, u), chi_of_u(cosmo, tau, u, cfg),
                          rho_of_u(cosmo, tau, u, cfg)});
    }
    return points;
}

OdePath integrate_geodesic_ode(const Cosmology& cosmo, double tau, double rho_max, double step,
                               const NumericsConfig& cfg) {
    check_tau(tau, "integrate_geodesic_ode");
    if (!(step > 0.0)) throw DomainError("integrate_geodesic_ode: step must be positive");
    if (!(rho_max >= 0.0)) throw DomainError("integrate_geodesic_ode: rho_max must be >= 0");

    const ScaleFactorModel& m = cosmo.model;
    const double a0 = m.a(tau);

    OdePath path;
    path.points.push_back({tau, 1.0, tau, 0.0, 0.0});
    if (rho_max == 0.0) return path;

    const double slice = rho_of_u(cosmo, tau, u_limit(cosmo, tau), cfg);
    if (!(rho_max < slice)) {
        throw OutOfSliceError("integrate_geodesic_ode: rho_max " + format_double(rho_max) +
                                  " not inside the slice radius " + format_double(slice),
                              rho_max, slice);
    }

    using State = std::array<double, 2>;  // (t, χ)
    const auto rhs = [&](const State& y) -> State {
        const double ratio = a0 / m.a(y[0]);
        double radicand = ratio * ratio - 1.0;
        if (radicand < 0.0) {
            if (radicand < -kRadicandClamp) {
                throw ConsistencyError("integrate_geodesic_ode: negative radicand " +
                                       format_double(radicand) + " at t = " + format_double(y[0]));
            }
            radicand = 0.0;
            ++path.clamped_radicands;
        }
        return {-std::sqrt(radicand), ratio / m.a(y[0])};
    };
    const auto point = [&](double rho, const State& y) {
        const double ratio = a0 / m.a(y[0]);
        return GeodesicPoint{tau, ratio * ratio, y[0], y[1], rho};
    };

    // Near-origin series for the first segment. RK4 loses an order next to
    // ρ = 0, where the radicand behaves like ρ², so the series covers
    // ρ_s = L·(step/L)^{5/9} with L = 1/H; that balances the O(ρ_s⁵) series
    // remainder against the O(step⁵/ρ_s⁴) error of the first RK4 step.
    const double h_rate = m.a_dot(tau) / a0;
    const double h_prime = m.a_ddot(tau) / a0 - h_rate * h_rate;
    const double length = 1.0 / h_rate;
    const double h0 = std::min(std::max(step, length * std::pow(step / length, 5.0 / 9.0)), rho_max);
    const double h2 = h0 * h0;
    State y{tau - 0.5 * h_rate * h2 +
                (h_rate * h_prime - 2.0 * h_rate * h_rate * h_rate) * h2 * h2 / 24.0,
            (h0 + h_rate * h_rate * h2 * h0 / 3.0) / a0};
    double rho = h0;
    path.points.push_back(point(rho, y));

    const auto axpy = [](const State& base, double h, const State& k) {
        return State{base[0] + h * k[0], base[1] + h * k[1]};
    };
    while (rho < rho_max) {
        double h = step;
        if (rho + h > rho_max || rho_max - (rho + h) < 1e-9 * step) h = rho_max - rho;
        const State k1 = rhs(y);
        const State k2 = rhs(axpy(y, 0.5 * h, k1));
        const State k3 = rhs(axpy(y, 0.5 * h, k2));
        const State k4 = rhs(axpy(y, h, k3));
        y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        rho = (h == rho_max - rho) ? rho_max : rho + h;
        path.points.push_back(point(rho, y));
    }
    return path;
}

}  // namespace fermi
