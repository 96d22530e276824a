#include "mfrac/difference.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "mfrac/errors.hpp"

namespace mfrac {
namespace {

bool integer_alpha(double alpha) {
    return std::abs(alpha - std::round(alpha)) <= 1e-12 * std::max(1.0, alpha);
}

// shared series core; `eval` supplies f(h^j x) so the semigroup check can
// nest one difference inside another. `tail_out`, when given, receives the
// truncation-tail bound |binom(J)| J/alpha * recent translate magnitude.
cplx difference_series(const std::function<cplx(double)>& eval, double alpha, double c, double h,
                       double x, const DifferenceConfig& cfg, double* tail_out = nullptr) {
    if (!(h > 0.0) || h == 1.0) throw DomainError("frac_difference: h must be positive and != 1");
    if (!(alpha > 0.0)) throw DomainError("frac_difference: alpha must be positive");

    const cplx phase = std::exp(cplx(0.0, std::numbers::pi * alpha));  // (-1)^alpha
    const bool finite = integer_alpha(alpha);
    const auto j_stop =
        finite ? static_cast<std::size_t>(std::llround(alpha)) + 1 : cfg.j_max;
    const double log_h = std::log(h);

    cplx sum = 0.0, comp = 0.0;  // Kahan-compensated: the sum cancels deeply
    double binom = 1.0;          // binom(alpha, j)
    int quiet = 0;
    double recent_mag = 0.0;
    std::size_t j = 0;
    for (; j < j_stop; ++j) {
        double weight = std::exp(c * log_h * static_cast<double>(j));
        cplx fj = eval(std::pow(h, static_cast<double>(j)) * x);
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        cplx term = binom * sgn * weight * fj;
        cplx y = term - comp;
        cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        double mag = std::abs(term);
        recent_mag = std::max(recent_mag * 0.5, std::abs(weight * fj));
        if (!finite) {
            if (mag < cfg.tail_tol) {
                if (++quiet >= 10 && j > alpha) break;
            } else {
                quiet = 0;
            }
        }
        binom *= (alpha - static_cast<double>(j)) / (static_cast<double>(j) + 1.0);
    }
    double tail =
        finite ? 0.0 : std::abs(binom) * static_cast<double>(j + 1) / alpha * recent_mag;
    if (tail_out) *tail_out = tail;
    if (!finite && j >= cfg.j_max && quiet < 10 && tail >= cfg.tail_tol) {
        throw TruncationError("frac_difference: series tail did not decay within j_max");
    }
    return phase * sum;
}

cplx pow_principal(double base, double alpha) {
    // (h-1)^alpha for h on either side of 1, principal branch
    if (base >= 0.0) return std::pow(base, alpha);
    return std::pow(-base, alpha) * std::exp(cplx(0.0, std::numbers::pi * alpha));
}

}  // namespace

cplx frac_difference(const MellinFunction& f, double alpha, double c, double h, double x,
                     const DifferenceConfig& cfg) {
    if (!(x > 0.0)) throw DomainError("frac_difference: x must be positive");
    return difference_series([&f](double u) { return f(u); }, alpha, c, h, x, cfg);
}

cplx difference_symbol(double alpha, double h, double t) {
    const cplx phase = std::exp(cplx(0.0, std::numbers::pi * alpha));
    cplx w = std::exp(cplx(0.0, -t * std::log(h)));  // h^(-it)
    return phase * std::pow(cplx(1.0, 0.0) - w, alpha);
}

StrongDerivativeReport strong_derivative_estimate(const MellinFunction& f, double alpha, double c,
                                                  const LogGrid& x_grid,
                                                  const DifferenceConfig& cfg) {
    StrongDerivativeReport rep;
    std::vector<cplx> prev;
    double prev_noise = 0.0;
    for (int k = cfg.k_first; k <= cfg.k_last; ++k) {
        double step = std::ldexp(1.0, -k);
        double h = cfg.direction == HDirection::above ? 1.0 + step : 1.0 - step;
        cplx denom = pow_principal(h - 1.0, alpha);
        std::vector<cplx> q(x_grid.size());
        std::vector<cplx> noise(x_grid.size());
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            double tail = 0.0;
            q[i] = difference_series([&f](double u) { return f(u); }, alpha, c, h, x_grid[i],
                                     cfg, &tail) /
                   denom;
            noise[i] = tail / std::abs(denom);
        }
        double noise_norm = discrete_xc_norm(x_grid, noise, c);
        rep.h_values.push_back(h);
        rep.estimate_norm.push_back(discrete_xc_norm(x_grid, q, c));
        if (!prev.empty()) {
            std::vector<cplx> diff(q.size());
            for (std::size_t i = 0; i < q.size(); ++i) diff[i] = q[i] - prev[i];
            rep.successive_diff.push_back(discrete_xc_norm(x_grid, diff, c));
            rep.noise_floor.push_back(4.0 * (noise_norm + prev_noise) +
                                      1e-12 * rep.estimate_norm.back());
        }
        prev = std::move(q);
        prev_noise = noise_norm;
    }
    rep.final_estimate = std::move(prev);
    for (const auto& v : rep.final_estimate) {
        rep.imag_residual = std::max(rep.imag_residual, std::abs(v.imag()));
    }
    // truncation noise is amplified by |h-1|^-alpha; decreases are only
    // meaningful while the diffs sit above that floor
    for (std::size_t i = 1; i < rep.successive_diff.size(); ++i) {
        if (rep.successive_diff[i] > rep.successive_diff[i - 1] &&
            rep.successive_diff[i] > rep.noise_floor[i]) {
            rep.monotone = false;
        }
    }
    std::size_t n = rep.successive_diff.size();
    if (n >= 4) {
        bool tail_ok = false;
        for (std::size_t i = n - 4; i + 1 < n; ++i) {
            if (rep.successive_diff[i + 1] < rep.successive_diff[i]) tail_ok = true;
        }
        if (!tail_ok && rep.successive_diff.back() > rep.noise_floor.back()) {
            throw NonConvergentError(
                "strong_derivative_estimate: successive-difference norms stopped decreasing");
        }
    }
    return rep;
}

double difference_semigroup_check(const MellinFunction& f, double alpha, double beta, double c,
                                  double h, double x, const DifferenceConfig& cfg) {
    cplx direct = beta == 0.0 ? frac_difference(f, alpha, c, h, x, cfg)
                              : frac_difference(f, alpha + beta, c, h, x, cfg);
    cplx nested;
    if (beta == 0.0) {
        nested = frac_difference(f, alpha, c, h, x, cfg);  // Delta^0 = identity
    } else {
        auto inner = [&](double u) { return frac_difference(f, beta, c, h, u, cfg); };
        nested = difference_series(inner, alpha, c, h, x, cfg);
    }
    return std::abs(nested - direct);
}

}  // namespace mfrac
