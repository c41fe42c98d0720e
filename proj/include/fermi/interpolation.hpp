#pragma once

#include <span>
#include <vector>

namespace fermi {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
/// slopes with harmonic-mean interior estimates). Monotone data produce a
/// monotone interpolant. The second derivative is only O(h) accurate and
/// jumps at the knots.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    /// x strictly increasing, y strictly monotone, at least two points.
    MonotoneCubic(std::span<const double> x, std::span<const double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

}  // namespace fermi
