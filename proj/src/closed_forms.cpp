#include "fermi/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fermi/errors.hpp"
#include "fermi/numerics.hpp"

namespace fermi::closed_forms {

namespace {

constexpr double kPi = std::numbers::pi;

double f_chi(double sigma) { return hyp2f1(0.25, 0.5, 1.25, 1.0 / sigma); }

// C − ₂F₁(¼,½;5/4;1/σ)/σ^{1/4}, the bracket shared by χ and g_ττ.
double matter_bracket(double sigma) {
    return matter_constant() - f_chi(sigma) / std::pow(sigma, 0.25);
}

}  // namespace

double arcsec(double x) {
    if (!(x >= 1.0)) throw DomainError("arcsec: argument must be >= 1, got " + format_double(x));
    return std::acos(1.0 / x);
}

double matter_constant() {
    static const double c = std::sqrt(kPi) * gamma_fn(1.25) / gamma_fn(0.75);
    return c;
}

ClosedFormModel::ClosedFormModel(Family family, double h0) : family_(family), h0_(h0) {
    if (!(h0 > 0.0) || !std::isfinite(h0)) throw DomainError("closed form: h0 must be positive");
}

ClosedFormModel milne() { return ClosedFormModel(Family::milne); }
ClosedFormModel de_sitter(double h0) { return ClosedFormModel(Family::de_sitter, h0); }
ClosedFormModel radiation() { return ClosedFormModel(Family::radiation); }
ClosedFormModel matter() { return ClosedFormModel(Family::matter); }

void ClosedFormModel::check(double tau, double sigma) const {
    if (!(tau > 0.0)) throw DomainError("closed form: tau must be positive");
    if (!(sigma >= 1.0)) throw DomainError("closed form: sigma must be >= 1");
    if (family_ == Family::de_sitter && !(std::log(sigma) < 2.0 * h0_ * tau)) {
        throw DomainError("de Sitter: sigma must satisfy sqrt(sigma) < exp(H0 tau)");
    }
}

double ClosedFormModel::t(double tau, double sigma) const {
    check(tau, sigma);
    switch (family_) {
        case Family::milne: return tau / std::sqrt(sigma);
        case Family::de_sitter: return tau - 0.5 * std::log(sigma) / h0_;
        case Family::radiation: return tau / sigma;
        case Family::matter: return tau / std::pow(sigma, 0.75);
    }
    return 0.0;
}

double ClosedFormModel::chi(double tau, double sigma) const {
    check(tau, sigma);
    const double r = std::sqrt(sigma);
    switch (family_) {
        case Family::milne: return std::log(r + std::sqrt(sigma - 1.0));
        case Family::de_sitter: return std::exp(-h0_ * tau) * std::sqrt(sigma - 1.0) / h0_;
        case Family::radiation: return 2.0 * std::sqrt(tau) * arcsec(r);
        case Family::matter: return 3.0 * std::cbrt(tau) * matter_bracket(sigma);
    }
    return 0.0;
}

double ClosedFormModel::rho(double tau, double sigma) const {
    check(tau, sigma);
    const double r = std::sqrt(sigma);
    switch (family_) {
        case Family::milne: return tau * std::sqrt((sigma - 1.0) / sigma);
        case Family::de_sitter: return arcsec(r) / h0_;
        case Family::radiation: return tau * (std::sqrt(sigma - 1.0) / sigma + arcsec(r));
        case Family::matter: {
            const double power = std::pow((sigma - 1.0) / r, 1.5);
            const double f = hyp2f1(-0.75, 0.5, 0.25, 1.0 / sigma);
            return tau * (matter_constant() - power + f * std::pow(sigma, 0.75));
        }
    }
    return 0.0;
}

double ClosedFormModel::rho_slice(double tau) const {
    if (!(tau > 0.0)) throw DomainError("closed form: tau must be positive");
    switch (family_) {
        case Family::milne: return tau;
        case Family::de_sitter: return arcsec(std::exp(h0_ * tau)) / h0_;
        case Family::radiation: return 0.5 * kPi * tau;
        case Family::matter: return tau * matter_constant();
    }
    return 0.0;
}

double ClosedFormModel::sigma_of_rho(double tau, double rho) const {
    if (!(tau > 0.0)) throw DomainError("closed form: tau must be positive");
    if (!(rho >= 0.0)) throw DomainError("closed form: rho must be >= 0");
    const double radius = rho_slice(tau);
    switch (family_) {
        case Family::milne: {
            if (!(rho < tau)) {
                throw OutOfSliceError("Milne: rho must be below tau = " + format_double(tau), rho, radius);
            }
            const double q = rho / tau;
            return 1.0 / ((1.0 - q) * (1.0 + q));
        }
        case Family::de_sitter: {
            const double x = h0_ * rho;
            if (!(x < 0.5 * kPi)) {
                throw OutOfSliceError("de Sitter: requires H0 rho < pi/2", rho, radius);
            }
            if (!(std::exp(-h0_ * tau) < std::cos(x))) {
                throw OutOfSliceError("de Sitter: requires exp(-H0 tau) < cos(H0 rho)", rho, radius);
            }
            const double c = std::cos(x);
            return 1.0 / (c * c);
        }
        case Family::radiation:
        case Family::matter: break;
    }
    if (!(rho < radius)) {
        throw OutOfSliceError("closed form: rho must be below rho_M = " + format_double(radius), rho, radius);
    }
    if (rho == 0.0) return 1.0;
    // ρ(τ, 1 + u²) is increasing; solve in u.
    NumericsConfig cfg;
    const auto residual = [&](double u) { return this->rho(tau, 1.0 + u * u) - rho; };
    double hi = 2.0 * rho / tau;
    while (residual(hi) < 0.0) hi *= 2.0;
    const double u = find_root_monotone(residual, 0.0, hi, cfg, std::numeric_limits<double>::min());
    return 1.0 + u * u;
}

double ClosedFormModel::g_tau_tau_sigma(double tau, double sigma) const {
    check(tau, sigma);
    const double r = std::sqrt(sigma);
    switch (family_) {
        case Family::milne: return -1.0;
        case Family::de_sitter: return -1.0 / sigma;
        case Family::radiation: {
            const double inner = 1.0 + std::sqrt(sigma - 1.0) * arcsec(r);
            return -inner * inner / sigma;
        }
        case Family::matter: {
            const double inner = 1.0 + std::sqrt(sigma - 1.0) / std::pow(sigma, 0.25) * matter_bracket(sigma);
            return -inner * inner / r;
        }
    }
    return 0.0;
}

double ClosedFormModel::g_tau_tau(double tau, double rho) const {
    if (family_ == Family::de_sitter) {
        sigma_of_rho(tau, rho);  // domain check
        const double c = std::cos(h0_ * rho);
        return -c * c;
    }
    return g_tau_tau_sigma(tau, sigma_of_rho(tau, rho));
}

double ClosedFormModel::ang(double tau, double sigma) const {
    check(tau, sigma);
    switch (family_) {
        case Family::milne: {
            const double r = rho(tau, sigma);
            return r * r;
        }
        case Family::de_sitter: {
            const double s = std::sqrt((sigma - 1.0) / sigma) / h0_;
            return s * s;
        }
        case Family::radiation: {
            const double c = 2.0 * tau * arcsec(std::sqrt(sigma));
            return c * c / sigma;
        }
        case Family::matter: {
            const double a = std::pow(tau, 2.0 / 3.0);
            const double x = chi(tau, sigma);
            return a * a * x * x / sigma;
        }
    }
    return 0.0;
}

double ClosedFormModel::v_f(double sigma) const {
    if (!(sigma >= 1.0)) throw DomainError("closed form: sigma must be >= 1");
    switch (family_) {
        case Family::milne: return std::sqrt((sigma - 1.0) / sigma);
        case Family::de_sitter: return std::sqrt(sigma - 1.0) / sigma;
        case Family::radiation:
            return std::sqrt(sigma - 1.0) / sigma + (sigma - 1.0) / sigma * arcsec(std::sqrt(sigma));
        case Family::matter:
            throw DomainError("closed form: matter v_F has no closed form; only its supremum");
    }
    return 0.0;
}

double ClosedFormModel::v_f_of_chi(double tau, double chi) const {
    if (!(tau > 0.0)) throw DomainError("closed form: tau must be positive");
    if (!(chi >= 0.0)) throw DomainError("closed form: chi must be >= 0");
    switch (family_) {
        case Family::milne: return std::tanh(chi);
        case Family::de_sitter: {
            const double x = h0_ * std::exp(h0_ * tau) * chi;
            return x / (1.0 + x * x);
        }
        case Family::radiation: {
            const double th = chi / std::sqrt(tau);
            if (!(th < kPi)) throw DomainError("radiation: chi must be below pi sqrt(tau)");
            return 0.5 * std::sin(th) + th / 4.0 * (1.0 - std::cos(th));
        }
        case Family::matter:
            throw DomainError("closed form: matter v_F has no closed form; only its supremum");
    }
    return 0.0;
}

double ClosedFormModel::v_f_sup() const {
    switch (family_) {
        case Family::milne: return 1.0;
        case Family::de_sitter: return 0.5;
        case Family::radiation: return 0.5 * kPi;
        case Family::matter: return 0.75 * std::sqrt(kPi) * gamma_fn(1.25) / gamma_fn(1.75);
    }
    return 0.0;
}

TauRho milne_fermi_from_rw(double t, double chi) {
    if (!(t > 0.0)) throw DomainError("Milne: t must be positive");
    if (!(chi >= 0.0)) throw DomainError("Milne: chi must be >= 0");
    return {t * std::cosh(chi), t * std::sinh(chi)};
}

TChi milne_rw_from_fermi(double tau, double rho) {
    if (!(tau > 0.0)) throw DomainError("Milne: tau must be positive");
    if (!(rho >= 0.0)) throw DomainError("Milne: rho must be >= 0");
    if (!(rho < tau)) throw OutOfSliceError("Milne: rho must be below tau", rho, tau);
    return {std::sqrt((tau - rho) * (tau + rho)), std::atanh(rho / tau)};
}

}  // namespace fermi::closed_forms
