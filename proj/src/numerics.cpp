#include "fermi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "fermi/errors.hpp"

namespace fermi {

void NumericsConfig::validate() const {
    if (!(quad_rel_tol > 0.0) || !(quad_abs_tol > 0.0) || !(root_tol > 0.0)) {
        throw DomainError("numerics: tolerances must be strictly positive");
    }
    if (max_iter < 1 || max_bracket_doublings < 1) {
        throw DomainError("numerics: iteration caps must be at least 1");
    }
    if (!(sigma_cap > 1.0)) {
        throw DomainError("numerics: sigma_cap must exceed 1");
    }
    if (!(rho_eps_factor > 0.0)) {
        throw DomainError("numerics: rho_eps_factor must be positive");
    }
}

namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes, index 7 is the centre.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment gauss_kronrod15(const ScalarFn& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    double fv1[7];
    double fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += kWgk[j] * (f1 + f2);
        res_abs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    }
    const double scale = std::abs(half);
    res_asc *= scale;
    res_abs *= scale;

    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        err = std::max(50.0 * kEps * res_abs, err);
    }
    return {lo, hi, res_k * half, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const ScalarFn& f, double lo, double hi,
                                    const NumericsConfig& cfg) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("integrate_adaptive: limits must be finite");
    }
    if (lo == hi) return {};

    std::priority_queue<Segment, std::vector<Segment>, ByError> queue;
    Segment first = gauss_kronrod15(f, lo, hi);
    double total = first.value;
    double total_err = first.error;
    queue.push(first);
    int intervals = 1;

    while (true) {
        if (!std::isfinite(total)) {
            throw AccuracyError("integrate_adaptive: non-finite integrand value", total, kInfinity);
        }
        const double tol = std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(total));
        if (total_err <= tol) break;
        if (intervals >= cfg.max_iter) {
            throw AccuracyError("integrate_adaptive: no convergence after " +
                                    std::to_string(intervals) + " subdivisions (estimate " +
                                    format_double(total) + ", error " + format_double(total_err) +
                                    ")",
                                total, total_err);
        }
        const Segment worst = queue.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > std::min(worst.lo, worst.hi)) || !(mid < std::max(worst.lo, worst.hi))) {
            throw AccuracyError("integrate_adaptive: interval collapsed to round-off", total,
                                total_err);
        }
        queue.pop();
        const Segment left = gauss_kronrod15(f, worst.lo, mid);
        const Segment right = gauss_kronrod15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }

    // Re-sum to shed the drift of the running update.
    double value = 0.0;
    double error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, intervals};
}

double integrate_sigma_u(const ScalarFn& g, double u_lo, double u_hi, const NumericsConfig& cfg) {
    if (!(u_lo >= 0.0) || !(u_hi >= u_lo) || std::isnan(u_hi)) {
        throw DomainError("integrate_sigma: need 0 <= u_lo <= u_hi (u_lo=" + format_double(u_lo) +
                          ", u_hi=" + format_double(u_hi) + ")");
    }
    if (u_lo == u_hi) return 0.0;

    double total = 0.0;
    if (u_lo < 1.0) {
        const double top = std::min(u_hi, 1.0);
        const auto near = [&g](double u) { return 2.0 * g(1.0 + u * u); };
        total += integrate_adaptive(near, u_lo, top, cfg).value;
    }
    if (u_hi > 1.0) {
        const double sigma_lo = std::max(1.0 + u_lo * u_lo, 2.0);
        const double s_hi = 1.0 / std::sqrt(sigma_lo);
        bool non_finite = false;
        const auto tail = [&g, &non_finite](double s) {
            const double s2 = s * s;
            const double v = 2.0 * g(1.0 / s2) / (s2 * std::sqrt(1.0 - s2));
            if (!std::isfinite(v)) {
                non_finite = true;
                return 0.0;
            }
            return v;
        };
        double s_lo = std::isinf(u_hi) ? 0.0 : 1.0 / std::sqrt(1.0 + u_hi * u_hi);
        if (std::isinf(u_hi) && 1.0 + u_lo * u_lo >= cfg.sigma_cap) {
            throw DomainError("integrate_sigma: lower limit beyond sigma_cap");
        }
        if (s_lo < s_hi) {
            double part = integrate_adaptive(tail, s_lo, s_hi, cfg).value;
            if (non_finite) {
                if (s_lo > 0.0) {
                    throw AccuracyError("integrate_sigma: non-finite integrand on a finite range",
                                        part, kInfinity);
                }
                // Truncate at sigma_cap; the neglected tail is bounded by the
                // integrand at the cut times the cut length in s.
                non_finite = false;
                s_lo = 1.0 / std::sqrt(cfg.sigma_cap);
                part = integrate_adaptive(tail, s_lo, s_hi, cfg).value;
                if (non_finite) {
                    throw AccuracyError("integrate_sigma: integrand not finite above sigma_cap",
                                        part, kInfinity);
                }
            }
            total += part;
        }
    }
    return total;
}

double integrate_sigma(const ScalarFn& g, double sigma_lo, double sigma_hi,
                       const NumericsConfig& cfg) {
    if (!(sigma_lo >= 1.0) || !(sigma_hi >= sigma_lo)) {
        throw DomainError("integrate_sigma: need 1 <= sigma_lo <= sigma_hi (sigma_lo=" +
                          format_double(sigma_lo) + ", sigma_hi=" + format_double(sigma_hi) + ")");
    }
    const double u_lo = std::sqrt(sigma_lo - 1.0);
    const double u_hi = std::isinf(sigma_hi) ? kInfinity : std::sqrt(sigma_hi - 1.0);
    return integrate_sigma_u(g, u_lo, u_hi, cfg);
}

RootResult find_root_bracket(const ScalarFn& g, double lo, double hi, const NumericsConfig& cfg,
                             double x_scale) {
    double a = lo;
    double b = hi;
    double fa = g(a);
    double fb = g(b);
    if (std::isnan(fa) || std::isnan(fb)) {
        throw BracketError("find_root: function is NaN at a bracket end");
    }
    if (fa == 0.0) return {a, a, a, 0};
    if (fb == 0.0) return {b, b, b, 0};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("find_root: no sign change on [" + format_double(lo) + ", " +
                           format_double(hi) + "] (g=" + format_double(fa) + ", " +
                           format_double(fb) + ")");
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 0.5 * cfg.root_tol * std::max(x_scale, std::abs(b));
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            return {b, std::min(b, c), std::max(b, c), iter};
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when only two points differ.
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = g(b);
        if (std::isnan(fb)) throw BracketError("find_root: function became NaN inside bracket");
    }
    throw AccuracyError("find_root: iteration cap reached", b, std::abs(c - b));
}

double find_root_monotone(const ScalarFn& g, double lo, double hi, const NumericsConfig& cfg,
                          double x_scale) {
    return find_root_bracket(g, lo, hi, cfg, x_scale).x;
}

}  // namespace fermi
