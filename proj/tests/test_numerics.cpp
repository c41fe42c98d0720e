#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fermi/errors.hpp"
#include "fermi/numerics.hpp"

using namespace fermi;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference values from a 30-digit mpmath evaluation.
constexpr double kGamma54 = 0.906402477055477;
constexpr double kGamma74 = 0.919062526848883;
constexpr double kF1At1 = 1.31102877714605990;    // 2F1(1/4,1/2;5/4;1)
constexpr double kF1At03 = 1.03456648123853399;   // z = 0.3
constexpr double kF1At09 = 1.17939983730384554;   // z = 0.9
constexpr double kF2At1 = -1.31102877714605990;   // 2F1(-3/4,1/2;1/4;1)
constexpr double kF2At03 = 0.52629008216251537;
constexpr double kF2At09 = -0.74523208755662312;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("config validation rejects non-positive tolerances") {
    NumericsConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.quad_rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.sigma_cap = 1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    const NumericsConfig cfg;
    const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, cfg);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, cfg).value ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0, cfg).value == 0.0);
}

TEST_CASE("adaptive quadrature reports non-finite integrands") {
    const NumericsConfig cfg;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, cfg), AccuracyError);
}

TEST_CASE("integrate_sigma radius kernel over the whole slice is 2") {
    const NumericsConfig cfg;
    const auto g = [](double s) { return std::pow(s, -1.5); };
    CHECK(integrate_sigma(g, 1.0, kInfinity, cfg) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("integrate_sigma finite upper limit") {
    const NumericsConfig cfg;
    const auto g = [](double s) { return std::pow(s, -1.5); };
    CHECK(integrate_sigma(g, 1.0, 4.0, cfg) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    for (double s0 : {1.0001, 1.5, 2.0, 17.0, 1e6}) {
        CHECK(integrate_sigma(g, 1.0, s0, cfg) ==
              doctest::Approx(2.0 * std::sqrt((s0 - 1.0) / s0)).epsilon(1e-12));
    }
}

TEST_CASE("integrate_sigma with sigma^-2 gives pi/2") {
    const NumericsConfig cfg;
    CHECK(integrate_sigma([](double s) { return 1.0 / (s * s); }, 1.0, kInfinity, cfg) ==
          doctest::Approx(kPi / 2).epsilon(1e-13));
}

TEST_CASE("integrate_sigma sub-intervals add up") {
    const NumericsConfig cfg;
    const auto g = [](double s) { return std::pow(s, -1.25); };
    const double whole = integrate_sigma(g, 1.0, 50.0, cfg);
    const double parts = integrate_sigma(g, 1.0, 1.7, cfg) + integrate_sigma(g, 1.7, 50.0, cfg);
    CHECK(parts == doctest::Approx(whole).epsilon(1e-13));
    CHECK(integrate_sigma_u(g, 0.0, 7.0, cfg) == doctest::Approx(whole).epsilon(1e-13));
}

TEST_CASE("integrate_sigma matches exact polynomial integrals") {
    const NumericsConfig cfg;
    std::mt19937 rng(20240917u);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    std::uniform_real_distribution<double> upper(1.05, 6.0);
    std::uniform_int_distribution<int> degree(0, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = degree(rng);
        std::vector<double> c(deg + 1);
        for (double& x : c) x = coef(rng);
        const double s0 = upper(rng);
        const double u0 = std::sqrt(s0 - 1.0);
        // σ = 1 + u²: ∫ p(σ)/√(σ−1) dσ = 2∫₀^{u₀} p(1+u²) du.
        double exact = 0.0;
        double scale = 0.0;
        for (int k = 0; k <= deg; ++k) {
            for (int j = 0; j <= k; ++j) {
                const double term = 2.0 * c[k] * binomial(k, j) * std::pow(u0, 2 * j + 1) / (2 * j + 1);
                exact += term;
                scale += std::abs(term);
            }
        }
        const auto p = [&](double s) {
            double acc = 0.0;
            for (int k = deg; k >= 0; --k) acc = acc * s + c[k];
            return acc;
        };
        CAPTURE(trial);
        CHECK(std::abs(integrate_sigma(p, 1.0, s0, cfg) - exact) <= cfg.quad_rel_tol * 10 * scale);
    }
}

TEST_CASE("integrate_sigma rejects reversed or sub-unit limits") {
    const NumericsConfig cfg;
    const auto g = [](double) { return 1.0; };
    CHECK_THROWS_AS(integrate_sigma(g, 0.5, 2.0, cfg), DomainError);
    CHECK_THROWS_AS(integrate_sigma(g, 3.0, 2.0, cfg), DomainError);
}

TEST_CASE("root finding") {
    const NumericsConfig cfg;
    const double r2 = find_root_monotone([](double x) { return x * x - 2.0; }, 1.0, 2.0, cfg);
    CHECK(std::abs(r2 - std::sqrt(2.0)) < 1e-12);
    const double at = find_root_monotone([](double x) { return std::tanh(x) - 0.5; }, 0.0, 2.0, cfg);
    CHECK(std::abs(at - std::atanh(0.5)) < 1e-12);
    const auto milne_rho = [](double s) { return std::sqrt((s - 1.0) / s) - 0.6; };
    CHECK(std::abs(find_root_monotone(milne_rho, 1.0, 10.0, cfg) - 1.5625) < 1e-11);
}

TEST_CASE("root finding bracket width") {
    const NumericsConfig cfg;
    const auto g = [](double x) { return std::cbrt(x - 3.7); };
    const RootResult r = find_root_bracket(g, 0.0, 10.0, cfg);
    CHECK(r.hi - r.lo <= cfg.root_tol * std::max(1.0, std::abs(r.x)));
    CHECK(r.lo <= r.x);
    CHECK(r.x <= r.hi);
}

TEST_CASE("root finding errors") {
    const NumericsConfig cfg;
    CHECK_THROWS_AS(find_root_monotone([](double x) { return x * x + 1.0; }, -1.0, 1.0, cfg), BracketError);
    NumericsConfig tight;
    tight.max_iter = 2;
    CHECK_THROWS_AS(find_root_monotone([](double x) { return std::exp(x) - 5.0; }, -50.0, 50.0, tight),
                    AccuracyError);
    CHECK(find_root_monotone([](double x) { return x - 1.0; }, 1.0, 2.0, cfg) == 1.0);
}

TEST_CASE("gamma function values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK(gamma_fn(1.25) == doctest::Approx(kGamma54).epsilon(1e-13));
    CHECK(gamma_fn(1.75) == doctest::Approx(kGamma74).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("gamma recurrence") {
    for (double x = 0.25; x <= 5.0; x += 0.25) {
        CAPTURE(x);
        CHECK(std::abs(gamma_fn(x + 1.0) - x * gamma_fn(x)) <= 1e-12 * gamma_fn(x + 1.0));
    }
}

TEST_CASE("hyp2f1 reference values") {
    CHECK(hyp2f1(0.3, -1.7, 2.2, 0.0) == 1.0);
    CHECK(hyp2f1(0.25, 0.5, 1.25, 1.0) == doctest::Approx(kF1At1).epsilon(1e-12));
    CHECK(hyp2f1(0.25, 0.5, 1.25, 0.3) == doctest::Approx(kF1At03).epsilon(1e-12));
    CHECK(hyp2f1(0.25, 0.5, 1.25, 0.9) == doctest::Approx(kF1At09).epsilon(1e-12));
    CHECK(hyp2f1(-0.75, 0.5, 0.25, 1.0) == doctest::Approx(kF2At1).epsilon(1e-12));
    CHECK(hyp2f1(-0.75, 0.5, 0.25, 0.3) == doctest::Approx(kF2At03).epsilon(1e-12));
    CHECK(hyp2f1(-0.75, 0.5, 0.25, 0.9) == doctest::Approx(kF2At09).epsilon(1e-12));
}

TEST_CASE("hyp2f1 elementary closed forms") {
    // ₂F₁(1,1;2;z) = −ln(1−z)/z and ₂F₁(½,½;3/2;z²) = asin(z)/z.
    for (double z : {0.1, 0.45, 0.6, 0.95}) {
        CAPTURE(z);
        CHECK(hyp2f1(1.0, 1.0, 2.0, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
        CHECK(hyp2f1(0.5, 0.5, 1.5, z * z) == doctest::Approx(std::asin(z) / z).epsilon(1e-12));
    }
}

TEST_CASE("hyp2f1 is symmetric in a and b") {
    for (double z : {0.0, 0.3, 0.9, 1.0}) {
        CAPTURE(z);
        CHECK(hyp2f1(0.25, 0.5, 1.25, z) == hyp2f1(0.5, 0.25, 1.25, z));
        CHECK(hyp2f1(-0.75, 0.5, 0.25, z) == hyp2f1(0.5, -0.75, 0.25, z));
    }
}

TEST_CASE("hyp2f1 domain errors") {
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -2.0, 0.3), DomainError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.5, 1.2), DomainError);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.5, -0.1), DomainError);
}
