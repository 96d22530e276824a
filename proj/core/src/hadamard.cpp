#include "mfrac/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfrac/errors.hpp"
#include "mfrac/gamma.hpp"

namespace mfrac {
namespace detail {

double t_soft_cap_for(double x) {
    // beyond this, x e^(-t) underflows and pointwise rules lose meaning
    return std::max(64.0, 690.0 + std::log(x));
}

double t_start_for(const MellinFunction& f, double x) {
    // f(x e^-t) vanishes until t reaches the upper support edge
    double hi = f.support_log_hi();
    if (!std::isfinite(hi)) return 0.0;
    return std::max(0.0, std::log(x) - hi);
}

double t_cap_for(const MellinFunction& f, double x) {
    double cap = std::numeric_limits<double>::infinity();
    // integrand vanishes once x e^(-t) drops below the declared support
    if (std::isfinite(f.support_log_lo())) {
        cap = std::min(cap, std::log(x) - f.support_log_lo() + 1.0);
    }
    if (f.kind() == MellinFunction::Kind::sampled) {
        const LogGrid& g = f.grid();
        if (x > g.x_min()) cap = std::min(cap, std::log(x / g.x_min()));
    }
    return std::max(cap, 1e-8);
}

cplx hadamard_series_sum(const std::vector<cplx>& coeffs, double c, double expo, double x) {
    if (c < 0.0) throw DomainError("hadamard series: c must be nonnegative");
    std::size_t k0 = 0;
    if (c == 0.0) {
        if (!coeffs.empty() && coeffs[0] != cplx(0.0, 0.0)) {
            throw DomainError("hadamard series: c = 0 requires a vanishing constant term");
        }
        k0 = 1;
    }
    cplx acc = 0.0;
    double xk = k0 == 1 ? x : 1.0;
    for (std::size_t k = k0; k < coeffs.size(); ++k) {
        if (coeffs[k] != cplx(0.0, 0.0)) {
            acc += std::pow(c + static_cast<double>(k), expo) * coeffs[k] * xk;
        }
        xk *= x;
    }
    return acc;
}

}  // namespace detail

namespace {

constexpr double kUFloor = 2.3e-308;  // smallest normal; cheaper than underflow traps

std::function<cplx(double)> pullback(const MellinFunction& f, double x) {
    return [&f, x](double t) -> cplx { return f(std::max(x * std::exp(-t), kUFloor)); };
}

}  // namespace

cplx hadamard_integral(const MellinFunction& f, const FracOrder& order, double mu, double x,
                       const QuadConfig& quad) {
    if (!(x > 0.0)) throw DomainError("hadamard_integral: x must be positive");
    double cap = detail::t_cap_for(f, x);
    double soft = detail::t_soft_cap_for(x);
    double start = detail::t_start_for(f, x);
    HalfLineResult res = weighted_halfline_quad(order.alpha, mu, pullback(f, x), quad, cap,
                                                /*absolute=*/false, soft, start);
    switch (res.status) {
        case HalfLineResult::Status::divergent:
            throw DivergentError("hadamard_integral: " + res.note);
        case HalfLineResult::Status::non_convergent:
            throw NonConvergentError("hadamard_integral: " + res.note);
        case HalfLineResult::Status::converged:
            break;
    }
    if (res.tail_estimate > 10.0 * quad.rel_tol * (std::abs(res.value) + 1e-300)) {
        throw NonConvergentError("hadamard_integral: unresolved tail beyond the range cap");
    }
    return res.value / gamma_fn(order.alpha);
}

cplx hadamard_integral_series(const MellinFunction& f, const FracOrder& order, double c, double x) {
    if (f.kind() != MellinFunction::Kind::power_series) {
        throw DomainError("hadamard_integral_series: input must be a power series");
    }
    if (!(x > 0.0) || x > f.radius()) {
        throw DomainError("hadamard_integral_series: x must lie in (0, radius]");
    }
    return detail::hadamard_series_sum(f.coeffs(), c, -order.alpha, x);
}

cplx integer_iterated_integral(const MellinFunction& f, int r, double c, double x,
                               const QuadConfig& quad) {
    if (r < 1) throw DomainError("integer_iterated_integral: r must be at least 1");
    if (!(x > 0.0)) throw DomainError("integer_iterated_integral: x must be positive");

    double lx = std::log(x);
    double lo = lx - std::min(80.0, detail::t_cap_for(f, x));
    bool hard_edge = false;  // representation ends there; nothing to extend into
    if (f.kind() == MellinFunction::Kind::sampled) {
        double edge = f.grid().log_min();
        if (lo <= edge) hard_edge = true;
        lo = std::max(lo, edge);
    }
    if (std::isfinite(f.support_log_lo()) && lo <= f.support_log_lo() - 1.0) {
        lo = f.support_log_lo() - 1.0;
        hard_edge = true;
    }

    // weight u^(c-1) must be integrable near 0: extend the window until the
    // integrand has died at the edge, give up when it refuses to
    if (!hard_edge) {
        double peak = std::abs(f(x)) * std::exp(c * lx) + 1e-300;
        for (int ext = 0;; ++ext) {
            double boundary = std::abs(f(std::max(std::exp(lo), kUFloor))) * std::exp(c * lo);
            if (boundary <= 1e-13 * peak) break;
            if (ext >= 8) {
                throw DivergentError(
                    "integer_iterated_integral: u^c f(u) does not decay toward 0");
            }
            lo -= 40.0;
        }
    }

    auto run = [&](std::size_t n) -> cplx {
        double h = (lx - lo) / static_cast<double>(n);
        std::vector<cplx> level(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            double s = lo + h * static_cast<double>(i);
            level[i] = f(std::exp(s)) * std::exp(c * s);
        }
        // r-fold cumulative trapezoid: each pass is int_0^v (...) du/u in s = log u
        for (int pass = 0; pass < r; ++pass) {
            std::vector<cplx> cum(n + 1);
            cum[0] = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                cum[i] = cum[i - 1] + 0.5 * h * (level[i - 1] + level[i]);
            }
            level = std::move(cum);
        }
        return level[n] * std::exp(-c * lx);
    };

    std::size_t n = 2048;
    cplx prev = run(n);
    cplx prev_extrap = prev;
    double prev_mag = std::abs(prev);
    for (int lvl = 0; lvl < quad.max_levels; ++lvl) {
        n *= 2;
        if (n > quad.max_points) {
            throw NonConvergentError("integer_iterated_integral: point budget exhausted");
        }
        cplx raw = run(n);
        // Richardson step lifts the cumulative trapezoid to fourth order
        cplx cur = (4.0 * raw - prev) / 3.0;
        prev = raw;
        double diff = std::abs(cur - prev_extrap);
        prev_extrap = cur;
        if (diff <= quad.rel_tol * (std::abs(cur) + 1e-300)) {
            return cur;
        }
        if (std::abs(cur) > quad.growth_threshold * (prev_mag + 1e-300) && lvl > 3) {
            throw DivergentError("integer_iterated_integral: refinement grows without stabilizing");
        }
        prev_mag = std::abs(cur);
    }
    throw NonConvergentError("integer_iterated_integral: refinement did not stabilize");
}

DomainProbeResult domain_probe(const MellinFunction& f, const FracOrder& order, double c, double x,
                               const QuadConfig& quad) {
    if (!(x > 0.0)) throw DomainError("domain_probe: x must be positive");
    double cap = detail::t_cap_for(f, x);
    HalfLineResult res =
        weighted_halfline_quad(order.alpha, c, pullback(f, x), quad, cap,
                               /*absolute=*/true, detail::t_soft_cap_for(x),
                               detail::t_start_for(f, x));
    DomainProbeResult out;
    out.trace = res.panel_contributions;
    out.note = res.note;
    out.convergent = res.status == HalfLineResult::Status::converged;
    if (out.convergent) out.value = res.value.real() / gamma_fn(order.alpha);
    return out;
}

}  // namespace mfrac
