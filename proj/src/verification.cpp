#include "fermi/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "fermi/chart.hpp"
#include "fermi/closed_forms.hpp"
#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"
#include "fermi/kinematics.hpp"
#include "fermi/metric.hpp"

namespace fermi::verify {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

// Runs body, which returns its largest residual; exceptions count as failures.
CheckResult check(std::string name, double tolerance, const std::function<double()>& body) {
    CheckResult r{std::move(name), false, 0.0, tolerance, {}};
    try {
        r.max_residual = body();
        r.passed = r.max_residual <= tolerance;
    } catch (const std::exception& e) {
        r.max_residual = kInfinity;
        r.detail = e.what();
    }
    return r;
}

struct Pairing {
    Cosmology cosmo;
    closed_forms::ClosedFormModel exact;
};

std::vector<Pairing> special_models() {
    return {{milne_cosmology(), closed_forms::milne()},
            {de_sitter_cosmology(1.0), closed_forms::de_sitter(1.0)},
            {radiation_cosmology(), closed_forms::radiation()},
            {matter_cosmology(), closed_forms::matter()}};
}

// σ grid in [1.01, 100], kept below 0.9·σ_∞ for de Sitter.
std::vector<double> sigma_grid(const Cosmology& cosmo, double tau, int n) {
    const double cap = std::min(100.0, 0.9 * sigma_infinity(cosmo, tau));
    return geomspace(1.01, cap, n);
}

double map_residual(const Pairing& p, const NumericsConfig& cfg) {
    double worst = 0.0;
    for (double tau : linspace(0.5, 5.0, 20)) {
        for (double sigma : sigma_grid(p.cosmo, tau, 20)) {
            worst = std::max({worst,
                              std::abs(t_of_sigma(p.cosmo, tau, sigma) - p.exact.t(tau, sigma)),
                              std::abs(chi_of_sigma(p.cosmo, tau, sigma, cfg) - p.exact.chi(tau, sigma)),
                              std::abs(rho_of_sigma(p.cosmo, tau, sigma, cfg) - p.exact.rho(tau, sigma))});
        }
    }
    return worst;
}

double metric_residual(const Pairing& p, const NumericsConfig& cfg) {
    double worst = 0.0;
    for (double tau : linspace(0.5, 5.0, 8)) {
        for (double sigma : sigma_grid(p.cosmo, tau, 8)) {
            const PolarMetric g = metric_polar_u(p.cosmo, tau, std::sqrt(sigma - 1.0), cfg);
            worst = std::max({worst, std::abs(g.g_tau_tau - p.exact.g_tau_tau_sigma(tau, sigma)),
                              std::abs(g.ang - p.exact.ang(tau, sigma))});
        }
    }
    return worst;
}

}  // namespace

OdeAgreement ode_agreement(const Cosmology& cosmo, double tau, double fraction, int steps,
                           const NumericsConfig& cfg) {
    const double rho_max = fraction * slice_radius(cosmo, tau, cfg);
    const OdePath path = integrate_geodesic_ode(cosmo, tau, rho_max, rho_max / steps, cfg);
    OdeAgreement out;
    const std::size_t n = path.points.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 64);
    const auto compare = [&](const GeodesicPoint& q) {
        const double u = u_of_rho(cosmo, tau, q.rho, cfg);
        out.max_dt = std::max(out.max_dt, std::abs(t_of_u(cosmo, tau, u) - q.t));
        out.max_dchi = std::max(out.max_dchi, std::abs(chi_of_u(cosmo, tau, u, cfg) - q.chi));
        ++out.compared;
    };
    for (std::size_t i = 0; i < n; i += stride) compare(path.points[i]);
    compare(path.points.back());
    return out;
}

std::vector<CheckResult> closed_form_suite(const NumericsConfig& cfg) {
    std::vector<CheckResult> out;
    for (const Pairing& p : special_models()) {
        const double tol = p.cosmo.name == "milne" ? 1e-9 : 1e-8;
        out.push_back(check(p.cosmo.name + " geodesic maps", tol, [&] { return map_residual(p, cfg); }));
    }
    for (const Pairing& p : special_models()) {
        out.push_back(check(p.cosmo.name + " polar metric", 1e-8, [&] { return metric_residual(p, cfg); }));
    }
    out.push_back(check("slice radius", 1e-8, [&] {
        double worst = 0.0;
        for (const Pairing& p : special_models()) {
            for (double tau : {0.5, 1.0, 2.0, 5.0}) {
                worst = std::max(worst, std::abs(proper_radius(p.cosmo, tau, cfg) - p.exact.rho_slice(tau)));
            }
        }
        return worst;
    }));
    out.push_back(check("radiation fermi speed", 1e-9, [&] {
        const auto exact = closed_forms::radiation();
        double worst = 0.0;
        for (double s0 : geomspace(1.0 + 1e-6, 1e4, 40)) {
            worst = std::max(worst, std::abs(fermi_speed_power_law(0.5, s0, cfg) - exact.v_f(s0)));
        }
        return worst;
    }));
    out.push_back(check("matter speed supremum", 1e-5, [&] {
        const double sup = fermi_speed_sup(2.0 / 3.0);
        return std::max(std::abs(sup - 1.31103), std::abs(sup - closed_forms::matter().v_f_sup()));
    }));
    out.push_back(check("gauss summation", 1e-10, [&] {
        double worst = 0.0;
        const double params[][3] = {{0.25, 0.5, 1.25}, {-0.75, 0.5, 0.25}, {0.5, 0.5, 2.0}, {1.0, 1.5, 3.0}};
        for (const auto& q : params) {
            const double exact = std::tgamma(q[2]) * std::tgamma(q[2] - q[0] - q[1]) /
                                 (std::tgamma(q[2] - q[0]) * std::tgamma(q[2] - q[1]));
            worst = std::max(worst, std::abs(hyp2f1(q[0], q[1], q[2], 1.0) - exact));
        }
        return worst;
    }));
    return out;
}

std::vector<Cosmology> default_ode_models() {
    return {power_law_cosmology(1.0 / 3.0), power_law_cosmology(0.5), power_law_cosmology(2.0 / 3.0),
            power_law_cosmology(1.0), de_sitter_cosmology(1.0)};
}

std::vector<CheckResult> ode_oracle_suite(const std::vector<Cosmology>& models, const NumericsConfig& cfg) {
    std::vector<CheckResult> out;
    for (const Cosmology& c : models) {
        out.push_back(check("ode oracle " + c.name, 1e-6, [&] {
            double worst = 0.0;
            for (double tau : {0.5, 1.0, 3.0}) {
                const OdeAgreement d = ode_agreement(c, tau, 0.99, 4000, cfg);
                worst = std::max({worst, d.max_dt, d.max_dchi});
            }
            return worst;
        }));
    }
    return out;
}

std::vector<CheckResult> invariant_suite(const NumericsConfig& cfg) {
    std::vector<CheckResult> out;
    const std::vector<double> alphas{1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0};

    out.push_back(check("chart round trip", 1e-7, [&] {
        double worst = 0.0;
        for (double alpha : alphas) {
            const Cosmology c = power_law_cosmology(alpha);
            for (double tau : linspace(0.5, 4.0, 5)) {
                const double radius = slice_radius(c, tau, cfg);
                for (double f : linspace(0.05, 0.95, 10)) {
                    const FermiEvent ev{tau, f * radius};
                    const FermiEvent back = fermi_from_rw(c, rw_from_fermi(c, ev, cfg), cfg);
                    worst = std::max({worst, std::abs(back.tau - tau) / tau,
                                      std::abs(back.rho - ev.rho) / ev.rho});
                }
            }
        }
        return worst;
    }));

    out.push_back(check("jacobian positivity", 0.0, [&] {
        int bad = 0;
        for (double alpha : alphas) {
            const Cosmology c = power_law_cosmology(alpha);
            for (double tau : {0.5, 1.0, 3.0}) {
                for (double sigma : geomspace(1.001, 1e6, 25)) {
                    if (!(jacobian_F(c, tau, sigma, cfg) > 0.0)) ++bad;
                }
            }
        }
        return static_cast<double>(bad);
    }));

    out.push_back(check("fermi metric diagonal", 1e-6, [&] {
        double worst = 0.0;
        for (const Cosmology& c : {radiation_cosmology(), matter_cosmology(), de_sitter_cosmology(1.0)}) {
            for (double tau : {1.0, 2.0}) {
                const double radius = slice_radius(c, tau, cfg);
                for (double f : {0.1, 0.4, 0.7}) {
                    const double rho = f * radius;
                    const double ht = 1e-4 * tau;
                    const double hr = 1e-4 * radius;
                    const RWEvent tp = rw_from_fermi(c, {tau + ht, rho}, cfg);
                    const RWEvent tm = rw_from_fermi(c, {tau - ht, rho}, cfg);
                    const RWEvent rp = rw_from_fermi(c, {tau, rho + hr}, cfg);
                    const RWEvent rm = rw_from_fermi(c, {tau, rho - hr}, cfg);
                    const RWEvent mid = rw_from_fermi(c, {tau, rho}, cfg);
                    const double a = c.model.a(mid.t);
                    const double dt_tau = (tp.t - tm.t) / (2 * ht);
                    const double dchi_tau = (tp.chi - tm.chi) / (2 * ht);
                    const double dt_rho = (rp.t - rm.t) / (2 * hr);
                    const double dchi_rho = (rp.chi - rm.chi) / (2 * hr);
                    worst = std::max(worst, std::abs(-dt_tau * dt_rho + a * a * dchi_tau * dchi_rho));
                }
            }
        }
        return worst;
    }));

    out.push_back(check("radius below hubble radius", 1e-10, [&] {
        double worst = 0.0;
        std::vector<Cosmology> models{de_sitter_cosmology(1.0)};
        for (double alpha : alphas) models.push_back(power_law_cosmology(alpha));
        for (const Cosmology& c : models) {
            double prev = 0.0;
            for (double tau : linspace(0.5, 5.0, 10)) {
                const double r = proper_radius(c, tau, cfg);
                // The 1/H bound needs b̈ ≥ 0; de Sitter only has to grow.
                if (c.model.global_chart()) worst = std::max(worst, r - 1.0 / hubble(c, tau));
                if (!(r > prev)) throw ConsistencyError("proper radius not increasing for " + c.name);
                prev = r;
            }
        }
        return std::max(worst, 0.0);
    }));

    out.push_back(check("fermi speed monotone", 0.0, [&] {
        double worst = 0.0;
        for (double alpha : alphas) {
            const Cosmology c = power_law_cosmology(alpha);
            const double chi_top = chi_of_sigma(c, 1.0, 1e6, cfg);
            double prev = 0.0;
            for (double chi0 : linspace(0.0, chi_top, 30)) {
                const double v = fermi_speed(c, 1.0, chi0, cfg).v_fermi;
                worst = std::max(worst, prev - v);
                prev = v;
            }
        }
        return std::max(worst, 0.0);
    }));

    out.push_back(check("supremum below 1/alpha", 0.0, [&] {
        double worst = 0.0;
        for (double alpha : linspace(0.1, 1.0, 10)) {
            const double sup = fermi_speed_sup(alpha);
            const double gap = 1.0 / alpha - sup;
            worst = std::max(worst, alpha == 1.0 ? std::abs(gap) - 1e-14 : (gap > 0.0 ? 0.0 : 1.0));
        }
        return std::max(worst, 0.0);
    }));

    out.push_back(check("de Sitter speed cap", 1e-12, [&] {
        const Cosmology c = de_sitter_cosmology(1.0);
        double worst = 0.0;
        for (double sigma : geomspace(1.0 + 1e-6, 0.99 * sigma_infinity(c, 2.0), 40)) {
            worst = std::max(worst, fermi_speed_u(c, 2.0, std::sqrt(sigma - 1.0), cfg) - 0.5);
        }
        return std::max(worst, 0.0);
    }));

    out.push_back(check("velocity identity", 1e-5, [&] {
        double worst = 0.0;
        for (const Cosmology& c : {milne_cosmology(), radiation_cosmology(), matter_cosmology(),
                                   de_sitter_cosmology(1.0)}) {
            for (double chi0 : {0.1, 0.3, 0.6}) {
                worst = std::max(worst, velocity_identity_residual(c, 1.0, chi0, cfg));
            }
        }
        return worst;
    }));

    out.push_back(check("power-law geometry relation", 1e-9, [&] {
        double worst = 0.0;
        for (double alpha : alphas) {
            for (double s0 : {2.0, 100.0, 1e4}) {
                const RelationSides r = power_law_geometry_relation(alpha, 1.5, s0, cfg);
                worst = std::max(worst, std::abs(r.lhs - r.rhs));
            }
        }
        return worst;
    }));
    return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, const std::optional<Cosmology>& model,
                                   const NumericsConfig& cfg) {
    const auto ode_models = [&] {
        return model ? std::vector<Cosmology>{*model} : default_ode_models();
    };
    if (suite == "closed-forms") return closed_form_suite(cfg);
    if (suite == "ode-oracle") return ode_oracle_suite(ode_models(), cfg);
    if (suite == "invariants") return invariant_suite(cfg);
    if (suite == "all") {
        std::vector<CheckResult> out = closed_form_suite(cfg);
        for (auto&& r : ode_oracle_suite(ode_models(), cfg)) out.push_back(std::move(r));
        for (auto&& r : invariant_suite(cfg)) out.push_back(std::move(r));
        return out;
    }
    throw DomainError("unknown verification suite '" + std::string(suite) + "'");
}

}  // namespace fermi::verify
