#include "mfrac/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mfrac/errors.hpp"

namespace mfrac {

double MellinSpectrum::max_conjugate_asymmetry() const {
    double worst = 0.0;
    std::size_t n = t_values.size();
    for (std::size_t i = 0; i < n; ++i) {
        // locate -t by symmetry of the uniform grid
        std::size_t j = n - 1 - i;
        worst = std::max(worst, std::abs(values[j] - std::conj(values[i])));
    }
    return worst;
}

std::vector<double> uniform_t_grid(double t_max, std::size_t n) {
    if (!(t_max > 0.0) || n < 3) throw DomainError("uniform_t_grid: need t_max > 0 and n >= 3");
    if (n % 2 == 0) ++n;
    std::vector<double> t(n);
    double h = 2.0 * t_max / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) t[i] = -t_max + h * static_cast<double>(i);
    t[(n - 1) / 2] = 0.0;
    return t;
}

namespace detail {

void quad_window(const MellinFunction& f, const QuadConfig& cfg, double& lo, double& hi) {
    lo = cfg.log_window_lo;
    hi = cfg.log_window_hi;
    const double pad = 1.0;
    if (std::isfinite(f.support_log_lo())) lo = std::max(lo, f.support_log_lo() - pad);
    if (std::isfinite(f.support_log_hi())) hi = std::min(hi, f.support_log_hi() + pad);
    if (f.kind() == MellinFunction::Kind::sampled) {
        lo = std::max(lo, f.grid().log_min());
        hi = std::min(hi, f.grid().log_max());
    }
    if (f.kind() == MellinFunction::Kind::power_series && std::isfinite(f.radius())) {
        hi = std::min(hi, std::log(f.radius()));
    }
    if (!(hi > lo)) throw DomainError("quadrature window is empty");
}

}  // namespace detail

MellinSpectrum mellin_transform(const MellinFunction& f, double nu,
                                const std::vector<double>& t_grid, const QuadConfig& quad) {
    if (t_grid.empty()) throw DomainError("mellin_transform: empty t grid");
    double lo, hi;
    detail::quad_window(f, quad, lo, hi);

    double t_abs = 0.0;
    for (double t : t_grid) t_abs = std::max(t_abs, std::abs(t));
    // oscillation control |t| h <= 1/2
    double h0 = std::min(0.25, t_abs > 0.0 ? 0.5 / t_abs : 0.25);

    std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil((hi - lo) / h0)));
    double h = (hi - lo) / static_cast<double>(n);

    const std::size_t nt = t_grid.size();
    std::vector<cplx> sums(nt, 0.0);

    auto add_node = [&](double u, double weight) {
        cplx fu = f(std::exp(u));
        if (fu == cplx(0.0, 0.0)) return;
        double base = nu * u;
        cplx g = std::exp(base) * fu * weight;
        for (std::size_t k = 0; k < nt; ++k) {
            double ph = t_grid[k] * u;
            sums[k] += g * cplx(std::cos(ph), std::sin(ph));
        }
    };

    add_node(lo, 0.5);
    add_node(hi, 0.5);
    for (std::size_t i = 1; i < n; ++i) add_node(lo + h * static_cast<double>(i), 1.0);

    std::vector<cplx> prev(nt);
    for (std::size_t k = 0; k < nt; ++k) prev[k] = sums[k] * h;

    MellinSpectrum out;
    out.nu = nu;
    out.t_values = t_grid;
    for (int level = 0; level < quad.max_levels; ++level) {
        if (2 * n > quad.max_points) {
            throw NonConvergentError("mellin_transform: point budget exhausted");
        }
        for (std::size_t i = 0; i < n; ++i) add_node(lo + h * (static_cast<double>(i) + 0.5), 1.0);
        n *= 2;
        h *= 0.5;
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < nt; ++k) {
            cplx cur = sums[k] * h;
            diff = std::max(diff, std::abs(cur - prev[k]));
            scale = std::max(scale, std::abs(cur));
            prev[k] = cur;
        }
        if (diff <= quad.rel_tol * (scale + 1e-300)) {
            out.values = prev;
            return out;
        }
    }
    throw NonConvergentError("mellin_transform: refinement did not stabilize");
}

MellinFunction mellin_inverse(const MellinSpectrum& spec, const LogGrid& x_grid, double tail_tol) {
    std::size_t nt = spec.t_values.size();
    if (nt < 3 || spec.values.size() != nt) throw DomainError("mellin_inverse: malformed spectrum");
    double peak = 0.0;
    for (const auto& v : spec.values) peak = std::max(peak, std::abs(v));
    double edge = std::max(std::abs(spec.values.front()), std::abs(spec.values.back()));
    if (peak > 0.0 && edge > tail_tol * peak) {
        throw TailError("mellin_inverse: spectrum has not decayed at the t-window edge");
    }
    double ht = spec.t_values[1] - spec.t_values[0];
    std::vector<cplx> out(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        double u = x_grid.log_point(i);
        cplx acc = 0.0;
        for (std::size_t k = 0; k < nt; ++k) {
            double w = (k == 0 || k + 1 == nt) ? 0.5 : 1.0;
            double ph = -spec.t_values[k] * u;
            acc += w * spec.values[k] * cplx(std::cos(ph), std::sin(ph));
        }
        out[i] = acc * ht * std::exp(-spec.nu * u) / (2.0 * std::numbers::pi);
    }
    return MellinFunction::from_samples(x_grid, std::move(out));
}

MellinFunction mellin_translate(const MellinFunction& f, double h, double c) {
    if (!(h > 0.0)) throw DomainError("mellin_translate: h must be positive");
    double hc = std::pow(h, c);
    double lh = std::log(h);
    auto g = MellinFunction::from_rule([f, h, hc](double x) -> cplx { return hc * f(h * x); });
    g.declare_support(f.support_log_lo() - lh, f.support_log_hi() - lh);
    return g;
}

MellinFunction mellin_convolve(const MellinFunction& f, const MellinFunction& g,
                               const LogGrid& x_grid, const QuadConfig& quad) {
    double flo, fhi, glo, ghi;
    detail::quad_window(f, quad, flo, fhi);
    detail::quad_window(g, quad, glo, ghi);

    auto window = [&](double lx, double& lo, double& hi) {
        // v-range where both factors can be nonzero: f at e^v, g at x e^(-v)
        lo = std::max(flo, lx - ghi);
        hi = std::min(fhi, lx - glo);
        return hi > lo;
    };
    auto integrand_at = [&](double lx) {
        return [&, lx](double v) -> cplx { return g(std::exp(lx - v)) * f(std::exp(v)); };
    };

    // coarse pass fixes the output scale so points where the convolution is
    // tiny do not chase an unreachable relative tolerance
    double scale = 0.0;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        double lo, hi, lx = x_grid.log_point(i);
        if (!window(lx, lo, hi)) continue;
        auto fn = integrand_at(lx);
        std::size_t n = 64;
        double h = (hi - lo) / static_cast<double>(n);
        cplx acc = 0.5 * (fn(lo) + fn(hi));
        for (std::size_t k = 1; k < n; ++k) acc += fn(lo + h * static_cast<double>(k));
        scale = std::max(scale, std::abs(acc * h));
    }
    double abs_floor = quad.rel_tol * scale;

    std::vector<cplx> out(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        double lo, hi, lx = x_grid.log_point(i);
        if (!window(lx, lo, hi)) {
            out[i] = 0.0;
            continue;
        }
        out[i] = refine_trapezoid(integrand_at(lx), lo, hi, quad, 0.25, abs_floor);
    }
    return MellinFunction::from_samples(x_grid, std::move(out));
}

}  // namespace mfrac
