#pragma once

#include <memory>
#include <span>
#include <string>

#include "fermi/numerics.hpp"

namespace fermi {

enum class ModelFamily { power_law, exponential, tabulated };

/// Scale factor a(t), its inverse b, and the derivatives the chart formulas need.
///
/// The model is immutable; all evaluators are pure. Arguments outside the
/// model domain, t ∈ (0, t_max] for a and x ∈ (a_inf, x_max] for b, raise
/// DomainError.
class ScaleFactorModel {
public:
    struct Evaluators {
        ScalarFn a;
        ScalarFn a_dot;
        ScalarFn b;
        ScalarFn b_dot;
        ScalarFn b_ddot;
    };

    struct Traits {
        ModelFamily family = ModelFamily::tabulated;
        double parameter = 0.0;  ///< α for power laws, H₀ for the exponential family
        double a_inf = 0.0;
        double t_max = kInfinity;
        double x_max = kInfinity;
        bool global_chart = false;
    };

    ScaleFactorModel(Evaluators eval, Traits traits);

    double a(double t) const;
    double a_dot(double t) const;
    /// ä(t), recovered from the inverse as −b̈(a)·ȧ³.
    double a_ddot(double t) const;
    double b(double x) const;
    double b_dot(double x) const;
    double b_ddot(double x) const;

    double a_inf() const { return traits_.a_inf; }
    double t_max() const { return traits_.t_max; }
    double x_max() const { return traits_.x_max; }
    bool global_chart() const { return traits_.global_chart; }
    ModelFamily family() const { return traits_.family; }
    double parameter() const { return traits_.parameter; }

private:
    void check_time(double t, const char* what) const;
    void check_length(double x, const char* what) const;

    std::shared_ptr<const Evaluators> eval_;
    Traits traits_;
};

/// a(t) = t^α with 0 < α ≤ 1.
ScaleFactorModel make_power_law(double alpha);

/// a(t) = exp(h0·t); a_inf = 1, not a global chart.
ScaleFactorModel make_exponential(double h0);

struct ScaleSample {
    double t;
    double a;
};

/// Monotone cubic model through at least four (t, a) samples, both strictly increasing.
/// Throws ValidationError naming the first offending index.
ScaleFactorModel make_tabulated(std::span<const ScaleSample> samples);

/// A scale-factor model together with the sign of spatial curvature.
struct Cosmology {
    ScaleFactorModel model;
    int k = 0;
    std::string name;
};

/// Throws DomainError unless k ∈ {0, −1}.
Cosmology make_cosmology(ScaleFactorModel model, int k, std::string name);

Cosmology power_law_cosmology(double alpha, int k = 0);
Cosmology milne_cosmology();
Cosmology de_sitter_cosmology(double h0);
Cosmology radiation_cosmology();
Cosmology matter_cosmology();

/// H(τ) = ȧ(τ)/a(τ).
double hubble(const Cosmology& cosmo, double tau);

/// (a(τ)/a_inf)², or +∞ when a_inf = 0.
double sigma_infinity(const Cosmology& cosmo, double tau);

}  // namespace fermi
