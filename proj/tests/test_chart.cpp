#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermi/chart.hpp"
#include "fermi/errors.hpp"
#include "fermi/geodesics.hpp"

using namespace fermi;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace

TEST_CASE("sigma of rho") {
    CHECK(sigma_of_rho(matter_cosmology(), 1.0, 0.0) == 1.0);
    CHECK(sigma_of_rho(milne_cosmology(), 2.0, std::sqrt(3.0)) == doctest::Approx(4.0).epsilon(1e-11));
    for (double tau : {0.9, 1.0, 3.0}) {
        CHECK(sigma_of_rho(de_sitter_cosmology(1.0), tau, kPi / 4) == doctest::Approx(2.0).epsilon(1e-11));
    }
}

TEST_CASE("sigma of rho for Milne matches the closed form") {
    const Cosmology m = milne_cosmology();
    for (double tau : {0.5, 1.0, 4.0}) {
        for (double f : {0.01, 0.3, 0.6, 0.9, 0.99}) {
            const double q = f;
            CHECK(std::abs(sigma_of_rho(m, tau, f * tau) - 1.0 / (1.0 - q * q)) <= 1e-10 / (1.0 - q * q));
        }
    }
}

TEST_CASE("out-of-slice queries report the slice radius") {
    try {
        sigma_of_rho(milne_cosmology(), 1.0, 2.0);
        FAIL("expected an out-of-slice error");
    } catch (const OutOfSliceError& e) {
        CHECK(e.rho() == 2.0);
        CHECK(e.rho_slice() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::string(e.what()).find("rho_M = 1") != std::string::npos);
    }
    try {
        rw_from_fermi(de_sitter_cosmology(1.0), {1.0, 1.3});
        FAIL("expected an out-of-slice error");
    } catch (const OutOfSliceError& e) {
        CHECK(std::string(e.what()).find("cos(H0 rho) > exp(-H0 tau)") != std::string::npos);
    }
    CHECK_THROWS_AS(sigma_of_rho(matter_cosmology(), 1.0, -0.1), DomainError);
}

TEST_CASE("rw from fermi") {
    const RWEvent foot = rw_from_fermi(matter_cosmology(), {2.0, 0.0, 0.4, 1.1});
    CHECK(foot.t == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(foot.chi == 0.0);
    CHECK(foot.theta == 0.4);
    CHECK(foot.phi == 1.1);

    const RWEvent m = rw_from_fermi(milne_cosmology(), {2.0, std::sqrt(3.0)});
    CHECK(m.t == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(m.chi == doctest::Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-11));

    const RWEvent r = rw_from_fermi(radiation_cosmology(), {1.0, 0.5 + kPi / 4});
    CHECK(r.t == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(r.chi == doctest::Approx(kPi / 2).epsilon(1e-11));
}

TEST_CASE("fermi from rw") {
    const FermiEvent fixed = fermi_from_rw(radiation_cosmology(), {1.7, 0.0, 0.2, 0.3});
    CHECK(fixed.tau == 1.7);
    CHECK(fixed.rho == 0.0);
    CHECK(fixed.theta == 0.2);

    const FermiEvent m = fermi_from_rw(milne_cosmology(), {1.0, std::log(2.0 + std::sqrt(3.0))});
    CHECK(m.tau == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(m.rho == doctest::Approx(std::sqrt(3.0)).epsilon(1e-11));

    const Cosmology mat = matter_cosmology();
    const RWEvent back = rw_from_fermi(mat, fermi_from_rw(mat, {1.0, 1.0}));
    CHECK(std::abs(back.t - 1.0) < 1e-7);
    CHECK(std::abs(back.chi - 1.0) < 1e-7);
}

TEST_CASE("fermi time never precedes synchronous time") {
    for (const Cosmology& c : {radiation_cosmology(), matter_cosmology(), power_law_cosmology(0.2)}) {
        for (double t : {0.1, 1.0, 5.0}) {
            for (double chi : {1e-6, 0.1, 1.0, 3.0}) {
                CHECK(fermi_from_rw(c, {t, chi}).tau >= t);
            }
        }
    }
}

TEST_CASE("round trip on a grid of events") {
    for (double alpha : {1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
        const Cosmology c = power_law_cosmology(alpha);
        CAPTURE(alpha);
        for (double tau : {0.5, 1.0, 2.0, 3.0, 4.0}) {
            const double radius = slice_radius(c, tau);
            for (int i = 1; i <= 10; ++i) {
                const FermiEvent ev{tau, 0.095 * i * radius};
                const FermiEvent back = fermi_from_rw(c, rw_from_fermi(c, ev));
                CHECK(rel(back.tau, ev.tau) < 1e-7);
                CHECK(rel(back.rho, ev.rho) < 1e-7);
            }
        }
    }
}

TEST_CASE("de Sitter containment") {
    const Cosmology ds = de_sitter_cosmology(1.0);
    // a(t)χ < 1/H₀ is inside the chart.
    const FermiEvent ev = fermi_from_rw(ds, {0.5, 0.5});
    const RWEvent back = rw_from_fermi(ds, ev);
    CHECK(std::abs(back.t - 0.5) < 1e-9);
    CHECK(std::abs(back.chi - 0.5) < 1e-9);
    // Closed form: χ = e^{−H₀τ} tan(H₀ρ)/H₀ and t = τ + ln cos(H₀ρ)/H₀.
    CHECK(std::exp(-ev.tau) * std::tan(ev.rho) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(ev.tau + std::log(std::cos(ev.rho)) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(fermi_from_rw(ds, {1.0, 0.5}), DomainError);
}

TEST_CASE("unverifiable local charts are rejected") {
    std::vector<ScaleSample> s;
    for (int i = 0; i < 30; ++i) s.push_back({0.1 + 0.1 * i, std::exp(0.1 + 0.1 * i)});
    const Cosmology c = make_cosmology(make_tabulated(s), 0, "inflating");
    CHECK_THROWS_AS(fermi_from_rw(c, {1.0, 0.1}), DomainError);
}

TEST_CASE("fermi event cartesian form") {
    const FermiEvent ev{1.0, 2.0, 0.7, -2.1};
    const auto xyz = ev.cartesian();
    CHECK(std::hypot(xyz[0], xyz[1], xyz[2]) == doctest::Approx(2.0).epsilon(1e-15));
    const FermiEvent back = FermiEvent::from_cartesian(1.0, xyz);
    CHECK(back.rho == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(back.theta == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(back.phi == doctest::Approx(-2.1).epsilon(1e-14));
}

TEST_CASE("jacobian") {
    CHECK(jacobian_F(milne_cosmology(), 1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(jacobian_F(milne_cosmology(), 1.0, 1.0), DomainError);

    // Finite-difference determinant of (t, χ) with respect to (τ, σ).
    const Cosmology rad = radiation_cosmology();
    const double tau = 1.0, sigma = 4.0, h = 1e-5;
    const auto t = [&](double ta, double s) { return t_of_sigma(rad, ta, s); };
    const auto x = [&](double ta, double s) { return chi_of_sigma(rad, ta, s); };
    const double t_tau = (t(tau + h, sigma) - t(tau - h, sigma)) / (2 * h);
    const double t_sig = (t(tau, sigma + h) - t(tau, sigma - h)) / (2 * h);
    const double x_tau = (x(tau + h, sigma) - x(tau - h, sigma)) / (2 * h);
    const double x_sig = (x(tau, sigma + h) - x(tau, sigma - h)) / (2 * h);
    const double det = t_tau * x_sig - t_sig * x_tau;
    const double j = jacobian_F(rad, tau, sigma);
    CHECK(j > 0.0);
    CHECK(std::abs(j - det) < 1e-5);
}

TEST_CASE("jacobian is positive on global charts") {
    for (const Cosmology& c : {radiation_cosmology(), matter_cosmology(), power_law_cosmology(0.25), milne_cosmology()}) {
        for (double tau : {0.2, 1.0, 5.0}) {
            for (double sigma : {1.0001, 1.5, 10.0, 1e3, 1e7}) CHECK(jacobian_F(c, tau, sigma) > 0.0);
        }
    }
}

TEST_CASE("comoving flow") {
    const FlowComponents on = comoving_flow_fermi(matter_cosmology(), {1.3, 0.0});
    CHECK(on.dtau_dt == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(on.drho_dt) < 1e-9);

    for (double c : {0.2, 0.7, 1.5}) {
        const FlowComponents f = comoving_flow_fermi(milne_cosmology(), {1.0, c});
        CHECK(f.dtau_dt == doctest::Approx(std::cosh(c)).epsilon(1e-8));
        CHECK(f.drho_dt == doctest::Approx(std::sinh(c)).epsilon(1e-8));
    }
}

TEST_CASE("comoving flow converges at second order") {
    const Cosmology rad = radiation_cosmology();
    const RWEvent ev{1.0, 0.5};
    const FlowComponents f1 = comoving_flow_fermi(rad, ev, {}, 4e-2);
    const FlowComponents f2 = comoving_flow_fermi(rad, ev, {}, 2e-2);
    const FlowComponents f3 = comoving_flow_fermi(rad, ev, {}, 1e-2);
    const double ratio = (f1.drho_dt - f2.drho_dt) / (f2.drho_dt - f3.drho_dt);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
    CHECK_THROWS_AS(comoving_flow_fermi(rad, ev, {}, 2.0), AccuracyError);
}
