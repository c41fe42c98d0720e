#include "fermi/cosmology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "fermi/errors.hpp"
#include "fermi/interpolation.hpp"

namespace fermi {

// ---------------------------------------------------------------------------
// MonotoneCubic

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), slope_(x.size()) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) {
        throw ValidationError("MonotoneCubic: need matching x/y with at least two points", 0);
    }
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        if (!(h[i] > 0.0)) throw ValidationError("MonotoneCubic: x not strictly increasing", i + 1);
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            // Weighted harmonic mean (Fritsch-Butland).
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Shape-preserving three-point end slopes.
    const auto end_slope = [](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) {
            m = 0.0;
        } else if (d0 * d1 <= 0.0 && std::abs(m) > std::abs(3.0 * d0)) {
            m = 3.0 * d0;
        }
        return m;
    };
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double d = (y_[i + 1] - y_[i]) / h;
    const double dx = x - x_[i];
    const double c2 = (3.0 * d - 2.0 * slope_[i] - slope_[i + 1]) / h;
    const double c3 = (slope_[i] + slope_[i + 1] - 2.0 * d) / (h * h);
    return y_[i] + dx * (slope_[i] + dx * (c2 + dx * c3));
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double d = (y_[i + 1] - y_[i]) / h;
    const double dx = x - x_[i];
    const double c2 = (3.0 * d - 2.0 * slope_[i] - slope_[i + 1]) / h;
    const double c3 = (slope_[i] + slope_[i + 1] - 2.0 * d) / (h * h);
    return slope_[i] + dx * (2.0 * c2 + 3.0 * c3 * dx);
}

double MonotoneCubic::second_derivative(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double d = (y_[i + 1] - y_[i]) / h;
    const double dx = x - x_[i];
    const double c2 = (3.0 * d - 2.0 * slope_[i] - slope_[i + 1]) / h;
    const double c3 = (slope_[i] + slope_[i + 1] - 2.0 * d) / (h * h);
    return 2.0 * c2 + 6.0 * c3 * dx;
}

// ---------------------------------------------------------------------------
// ScaleFactorModel

ScaleFactorModel::ScaleFactorModel(Evaluators eval, Traits traits)
    : eval_(std::make_shared<const Evaluators>(std::move(eval))), traits_(traits) {}

void ScaleFactorModel::check_time(double t, const char* what) const {
    if (!(t > 0.0) || t > traits_.t_max) {
        throw DomainError(std::string(what) + ": time " + format_double(t) +
                          " outside model domain (0, " + format_double(traits_.t_max) + "]");
    }
}

void ScaleFactorModel::check_length(double x, const char* what) const {
    if (!(x > traits_.a_inf) || x > traits_.x_max) {
        throw DomainError(std::string(what) + ": scale factor " + format_double(x) +
                          " outside model range (" + format_double(traits_.a_inf) + ", " +
                          format_double(traits_.x_max) + "]");
    }
}

double ScaleFactorModel::a(double t) const {
    check_time(t, "a(t)");
    return eval_->a(t);
}

double ScaleFactorModel::a_dot(double t) const {
    check_time(t, "a_dot(t)");
    return eval_->a_dot(t);
}

double ScaleFactorModel::a_ddot(double t) const {
    check_time(t, "a_ddot(t)");
    const double rate = eval_->a_dot(t);
    return -eval_->b_ddot(eval_->a(t)) * rate * rate * rate;
}

double ScaleFactorModel::b(double x) const {
    check_length(x, "b(x)");
    return eval_->b(x);
}

double ScaleFactorModel::b_dot(double x) const {
    check_length(x, "b_dot(x)");
    return eval_->b_dot(x);
}

double ScaleFactorModel::b_ddot(double x) const {
    check_length(x, "b_ddot(x)");
    return eval_->b_ddot(x);
}

ScaleFactorModel make_power_law(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("make_power_law: alpha must lie in (0, 1], got " + format_double(alpha));
    }
    const double p = 1.0 / alpha;
    ScaleFactorModel::Evaluators eval{
        [alpha](double t) { return std::pow(t, alpha); },
        [alpha](double t) { return alpha * std::pow(t, alpha - 1.0); },
        [p](double x) { return std::pow(x, p); },
        [p](double x) { return p * std::pow(x, p - 1.0); },
        [p](double x) { return p * (p - 1.0) * std::pow(x, p - 2.0); },
    };
    ScaleFactorModel::Traits traits;
    traits.family = ModelFamily::power_law;
    traits.parameter = alpha;
    traits.a_inf = 0.0;
    traits.global_chart = true;
    return {std::move(eval), traits};
}

ScaleFactorModel make_exponential(double h0) {
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw DomainError("make_exponential: h0 must be positive, got " + format_double(h0));
    }
    ScaleFactorModel::Evaluators eval{
        [h0](double t) { return std::exp(h0 * t); },
        [h0](double t) { return h0 * std::exp(h0 * t); },
        [h0](double x) { return std::log(x) / h0; },
        [h0](double x) { return 1.0 / (h0 * x); },
        [h0](double x) { return -1.0 / (h0 * x * x); },
    };
    ScaleFactorModel::Traits traits;
    traits.family = ModelFamily::exponential;
    traits.parameter = h0;
    traits.a_inf = 1.0;
    traits.global_chart = false;
    return {std::move(eval), traits};
}

ScaleFactorModel make_tabulated(std::span<const ScaleSample> samples) {
    if (samples.size() < 4) {
        throw ValidationError("make_tabulated: need at least 4 samples, got " +
                                  std::to_string(samples.size()),
                              samples.size());
    }
    std::vector<double> ts;
    std::vector<double> as;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [t, a] = samples[i];
        if (!std::isfinite(t) || !std::isfinite(a) || !(t > 0.0) || !(a > 0.0)) {
            throw ValidationError("make_tabulated: sample " + std::to_string(i) +
                                      " must have finite positive t and a",
                                  i);
        }
        if (i > 0 && !(t > ts.back() && a > as.back())) {
            throw ValidationError("make_tabulated: samples not strictly increasing at index " +
                                      std::to_string(i),
                                  i);
        }
        ts.push_back(t);
        as.push_back(a);
    }
    const auto a_of_t = std::make_shared<const MonotoneCubic>(ts, as);
    const auto t_of_a = std::make_shared<const MonotoneCubic>(as, ts);

    const double t0 = ts.front();
    const double a0 = as.front();
    const double a_inf = std::max(0.0, a0 - (as[1] - as[0]) / (ts[1] - ts[0]) * t0);
    // Linear continuation from (0, a_inf) to the first sample.
    const double lin_slope = (a0 - a_inf) / t0;

    ScaleFactorModel::Evaluators eval{
        [=](double t) { return t < t0 ? a_inf + lin_slope * t : (*a_of_t)(t); },
        [=](double t) { return t < t0 ? lin_slope : a_of_t->derivative(t); },
        [=](double x) { return x < a0 ? (x - a_inf) / lin_slope : (*t_of_a)(x); },
        [=](double x) { return x < a0 ? 1.0 / lin_slope : t_of_a->derivative(x); },
        [=](double x) { return x < a0 ? 0.0 : t_of_a->second_derivative(x); },
    };

    // b̈ ≥ 0 on a dense sample of every segment, up to round-off of its scale.
    double max_abs = 0.0;
    double min_val = kInfinity;
    constexpr int kPerSegment = 16;
    for (std::size_t i = 0; i + 1 < as.size(); ++i) {
        for (int j = 0; j <= kPerSegment; ++j) {
            const double x = as[i] + (as[i + 1] - as[i]) * j / kPerSegment;
            const double v = t_of_a->second_derivative(x);
            max_abs = std::max(max_abs, std::abs(v));
            min_val = std::min(min_val, v);
        }
    }

    ScaleFactorModel::Traits traits;
    traits.family = ModelFamily::tabulated;
    traits.a_inf = a_inf;
    traits.t_max = ts.back();
    traits.x_max = as.back();
    traits.global_chart = min_val >= -1e-9 * max_abs;
    return {std::move(eval), traits};
}

// ---------------------------------------------------------------------------
// Cosmology

Cosmology make_cosmology(ScaleFactorModel model, int k, std::string name) {
    if (k == 1) {
        throw UnsupportedCurvatureError("cosmology: k = +1 is not supported");
    }
    if (k != 0 && k != -1) {
        throw DomainError("cosmology: curvature sign must be 0 or -1, got " + std::to_string(k));
    }
    return Cosmology{std::move(model), k, std::move(name)};
}

namespace {

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

Cosmology power_law_cosmology(double alpha, int k) {
    return make_cosmology(make_power_law(alpha), k, "power-law(" + short_number(alpha) + ")");
}

Cosmology milne_cosmology() { return make_cosmology(make_power_law(1.0), -1, "milne"); }

Cosmology de_sitter_cosmology(double h0) {
    return make_cosmology(make_exponential(h0), 0, "de-sitter(" + short_number(h0) + ")");
}

Cosmology radiation_cosmology() { return make_cosmology(make_power_law(0.5), 0, "radiation"); }

Cosmology matter_cosmology() { return make_cosmology(make_power_law(2.0 / 3.0), 0, "matter"); }

double hubble(const Cosmology& cosmo, double tau) {
    if (!(tau > 0.0)) throw DomainError("hubble: tau must be positive, got " + format_double(tau));
    return cosmo.model.a_dot(tau) / cosmo.model.a(tau);
}

double sigma_infinity(const Cosmology& cosmo, double tau) {
    if (!(tau > 0.0)) {
        throw DomainError("sigma_infinity: tau must be positive, got " + format_double(tau));
    }
    const double a_inf = cosmo.model.a_inf();
    if (a_inf > 0.0) {
        const double ratio = cosmo.model.a(tau) / a_inf;
        return ratio * ratio;
    }
    return kInfinity;
}

}  // namespace fermi
