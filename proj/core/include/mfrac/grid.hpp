#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "mfrac/errors.hpp"

namespace mfrac {

/// Log-uniform sampling of [x_min, x_max] on the positive half-line. All
/// quadrature and sampling in this library lives in u = log x coordinates,
/// where the measure du/u becomes Lebesgue measure and dilation becomes shift.
class LogGrid {
public:
    LogGrid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max) {
        if (!(x_min > 0.0) || !(x_max > 0.0)) throw DomainError("LogGrid: endpoints must be positive");
        if (!(x_min < x_max)) throw DomainError("LogGrid: x_min must be less than x_max");
        if (n < 2) throw DomainError("LogGrid: need at least 2 points");
        log_min_ = std::log(x_min);
        log_max_ = std::log(x_max);
        h_log_ = (log_max_ - log_min_) / static_cast<double>(n - 1);
        points_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            points_[i] = std::exp(log_min_ + h_log_ * static_cast<double>(i));
        }
        points_.front() = x_min;
        points_.back() = x_max;
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return points_.size(); }
    double h_log() const { return h_log_; }
    double log_min() const { return log_min_; }
    double log_max() const { return log_max_; }
    double operator[](std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }

    double log_point(std::size_t i) const { return log_min_ + h_log_ * static_cast<double>(i); }

    bool contains(double x) const { return x >= x_min_ && x <= x_max_; }

private:
    double x_min_, x_max_;
    double log_min_, log_max_, h_log_;
    std::vector<double> points_;
};

/// Fractional order alpha > 0 together with m = floor(alpha) + 1. Exact
/// integers are detected at 1e-12 and still use m = alpha + 1, so the integer
/// case runs through the same code paths as the fractional one.
struct FracOrder {
    double alpha;
    int m;
    bool is_integer;

    explicit FracOrder(double a) : alpha(a) {
        if (!(a > 0.0)) throw DomainError("FracOrder: alpha must be positive");
        const double r = std::round(a);
        is_integer = std::abs(a - r) <= 1e-12 * std::max(1.0, std::abs(a));
        if (is_integer) {
            alpha = r;
            m = static_cast<int>(r) + 1;
        } else {
            m = static_cast<int>(std::floor(a)) + 1;
        }
    }
};

}  // namespace mfrac
