#include "mfrac/pde.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mfrac/derivative.hpp"
#include "mfrac/errors.hpp"
#include "mfrac/transform.hpp"

namespace mfrac {
namespace {

constexpr double kTailLog = 27.6;  // -log(1e-12)

double diffusion_a(double alpha) { return std::abs(std::cos(alpha * std::numbers::pi / 4.0)); }
double diffusion_b(double alpha) { return std::sin(alpha * std::numbers::pi / 4.0); }
double diffusion_eps(double alpha) {
    return std::cos(alpha * std::numbers::pi / 4.0) >= 0.0 ? 1.0 : -1.0;
}

void check_diffusion_order(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("diffusion: alpha must be positive");
    if (diffusion_a(alpha) < 1e-12) {
        throw DomainError("diffusion: orders with cos(alpha pi/4) = 0 are excluded");
    }
}

// stable-subordinator density in tau = log x shared by the evolution
// alpha = 1/2 and diffusion alpha = 1 closed forms
double stable_half_density(double tau, double y) {
    if (!(tau > 0.0)) return 0.0;
    return y / (2.0 * std::sqrt(std::numbers::pi)) * std::pow(tau, -1.5) *
           std::exp(-y * y / (4.0 * tau));
}

}  // namespace

bool evolution_closed_form_available(double alpha) { return std::abs(alpha - 0.5) <= 1e-12; }

bool diffusion_closed_form_available(double alpha) {
    return std::abs(alpha - 1.0) <= 1e-12 || std::abs(alpha - 4.0) <= 1e-12;
}

double evolution_kernel_closed(double x, double y) {
    return stable_half_density(std::log(x), y);
}

double diffusion_kernel_closed(double alpha, double x, double y) {
    if (std::abs(alpha - 1.0) <= 1e-12) return stable_half_density(std::log(x), y);
    if (std::abs(alpha - 4.0) <= 1e-12) {
        double lx = std::log(x);
        return std::exp(-lx * lx / (4.0 * y)) / (2.0 * std::sqrt(std::numbers::pi * y));
    }
    throw DomainError("diffusion_kernel_closed: closed form known at alpha = 1 and 4 only");
}

cplx pde_symbol(PdeKind kind, double alpha, double nu, double t, double y) {
    if (kind == PdeKind::evolution) {
        cplx s(-nu, -t);
        return std::exp(-std::pow(s, alpha) * y);
    }
    check_diffusion_order(alpha);
    double a = diffusion_a(alpha), b = diffusion_b(alpha), eps = diffusion_eps(alpha);
    double m = std::pow(std::abs(t), alpha / 2.0);
    double sgn = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    return std::exp(-m * y * cplx(a, -sgn * eps * b));
}

std::vector<double> evolution_kernel(double alpha, double nu, const LogGrid& x_grid, double y,
                                     const QuadConfig& quad, double* imag_residual) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("evolution_kernel: alpha must lie in (0,1)");
    if (!(nu < 0.0)) throw DomainError("evolution_kernel: need nu < 0");
    if (!(y > 0.0)) throw DomainError("evolution_kernel: y must be positive");

    // damping envelope: Re(-nu-it)^alpha >= (|t| cos(pi/2 * alpha signature))^alpha...
    // solve |T|^alpha cos(alpha pi/2) y = kTailLog for the window edge
    double ca = std::cos(alpha * std::numbers::pi / 2.0);
    double T = std::pow(kTailLog / (y * ca), 1.0 / alpha);
    T = std::max(T, 8.0 * std::abs(nu));
    if (T > 5e6) throw TailError("evolution_kernel: damping too weak for a workable t-window");

    double max_lx = std::max(std::abs(x_grid.log_min()), std::abs(x_grid.log_max()));
    double slope = max_lx + alpha * y * std::pow(std::max(std::abs(nu), 1.0), alpha - 1.0) + 1.0;
    double h = std::min(0.5 / slope, 0.25);
    std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * T / h));
    n += n % 2;  // keep t = 0 on a node

    const std::size_t nx = x_grid.size();
    auto pass = [&](std::size_t nn) {
        std::vector<cplx> acc(nx, 0.0);
        double hh = 2.0 * T / static_cast<double>(nn);
        for (std::size_t i = 0; i <= nn; ++i) {
            double t = -T + hh * static_cast<double>(i);
            cplx sym = std::exp(-std::pow(cplx(-nu, -t), alpha) * y);
            double w = (i == 0 || i == nn) ? 0.5 : 1.0;
            for (std::size_t k = 0; k < nx; ++k) {
                double ph = -t * x_grid.log_point(k);
                acc[k] += w * sym * cplx(std::cos(ph), std::sin(ph));
            }
        }
        for (std::size_t k = 0; k < nx; ++k) {
            // x^(-nu-it) = e^(-nu log x) e^(-it log x); the first factor is common
            acc[k] *= hh * std::exp(-nu * x_grid.log_point(k)) / (2.0 * std::numbers::pi);
        }
        return acc;
    };

    std::vector<cplx> prev = pass(n);
    for (int level = 0; level < quad.max_levels; ++level) {
        if (2 * n > quad.max_points * 8) {
            throw NonConvergentError("evolution_kernel: point budget exhausted");
        }
        std::vector<cplx> cur = pass(2 * n);
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < nx; ++k) {
            diff = std::max(diff, std::abs(cur[k] - prev[k]));
            scale = std::max(scale, std::abs(cur[k]));
        }
        prev = std::move(cur);
        n *= 2;
        if (diff <= std::max(quad.rel_tol * scale, 1e-13)) break;
        if (level + 1 == quad.max_levels) {
            throw NonConvergentError("evolution_kernel: refinement did not stabilize");
        }
    }

    std::vector<double> out(nx);
    double imag = 0.0;
    for (std::size_t k = 0; k < nx; ++k) {
        out[k] = prev[k].real();
        imag = std::max(imag, std::abs(prev[k].imag()));
    }
    if (imag_residual) *imag_residual = imag;
    return out;
}

namespace {

// panel quadrature for damped oscillatory integrands: dyadic panels with
// Gauss-Legendre node counts scaled to the phase swing inside each panel
double oscillatory_panels(const std::function<double(double)>& fn,
                          const std::function<double(double, double)>& phase_swing, double T,
                          const QuadConfig& quad) {
    auto run = [&](int mult) {
        double acc = 0.0, lo = 0.0;
        double width = std::min(1.0, T);
        while (lo < T) {
            double hi = std::min(lo + width, T);
            double swing = phase_swing(lo, hi);
            int n = std::clamp(static_cast<int>(16 + 1.5 * swing), 16, 4096) * mult;
            std::vector<double> xs, ws;
            gauss_legendre(n, xs, ws);
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            double p = 0.0;
            for (int i = 0; i < n; ++i) p += ws[i] * fn(mid + half * xs[i]);
            acc += half * p;
            lo = hi;
            width *= 2.0;
        }
        return acc;
    };
    double c1 = run(1), c2 = run(2);
    if (std::abs(c2 - c1) > std::max(quad.rel_tol * std::abs(c2), 1e-12)) {
        double c4 = run(4);
        if (std::abs(c4 - c2) > std::max(quad.rel_tol * std::abs(c4), 1e-12)) {
            throw NonConvergentError("diffusion_kernel: oscillatory panels did not stabilize");
        }
        return c4;
    }
    return c2;
}

}  // namespace

std::vector<double> diffusion_kernel(double alpha, const LogGrid& x_grid, double y,
                                     const QuadConfig& quad) {
    check_diffusion_order(alpha);
    if (!(y > 0.0)) throw DomainError("diffusion_kernel: y must be positive");
    const double a = diffusion_a(alpha), b = diffusion_b(alpha), eps = diffusion_eps(alpha);
    const std::size_t nx = x_grid.size();
    std::vector<double> out(nx);

    if (alpha <= 2.0) {
        // substitute t = tau^(2/alpha): linear damping in tau, polynomial phase
        const double p = 2.0 / alpha;
        double Ttau = (kTailLog + 4.0) / (a * y);
        for (std::size_t k = 0; k < nx; ++k) {
            double lx = x_grid.log_point(k);
            auto fn = [&](double tau) -> double {
                if (tau <= 0.0) return 0.0;
                double tp = std::pow(tau, p);
                return std::exp(-a * y * tau) * std::cos(tp * lx - eps * b * y * tau) * p *
                       std::pow(tau, p - 1.0);
            };
            auto swing = [&](double lo, double hi) {
                return std::abs(lx) * (std::pow(hi, p) - std::pow(lo, p)) + b * y * (hi - lo);
            };
            out[k] = oscillatory_panels(fn, swing, Ttau, quad) / std::numbers::pi;
        }
        return out;
    }

    // alpha > 2: the damping e^(-a y t^(alpha/2)) is already superlinear
    double T = std::pow((kTailLog + 4.0) / (a * y), 2.0 / alpha);
    for (std::size_t k = 0; k < nx; ++k) {
        double lx = x_grid.log_point(k);
        auto fn = [&](double t) -> double {
            if (t < 0.0) return 0.0;
            double m = std::pow(t, alpha / 2.0);
            return std::exp(-a * y * m) * std::cos(t * lx - eps * b * y * m);
        };
        auto swing = [&](double lo, double hi) {
            return std::abs(lx) * (hi - lo) +
                   b * y * (std::pow(hi, alpha / 2.0) - std::pow(lo, alpha / 2.0));
        };
        out[k] = oscillatory_panels(fn, swing, T, quad) / std::numbers::pi;
    }
    return out;
}

namespace {

// kernel density in tau = log v for the closed forms, plus its window
struct TauKernel {
    std::function<double(double)> density;
    double lo, hi;
};

TauKernel closed_form_tau_kernel(PdeKind kind, double alpha, double y) {
    if (kind == PdeKind::evolution || std::abs(alpha - 1.0) <= 1e-12) {
        // one-sided stable density; integrate in sigma = log tau
        return {[y](double tau) { return stable_half_density(tau, y); }, 0.0, 0.0};
    }
    return {[y](double tau) {
                return std::exp(-tau * tau / (4.0 * y)) /
                       (2.0 * std::sqrt(std::numbers::pi * y));
            },
            -11.5 * std::sqrt(std::max(y, 1e-12)) - 1.0,
            11.5 * std::sqrt(std::max(y, 1e-12)) + 1.0};
}

std::vector<cplx> convolve_closed_form(const PdeProblem& prob, double y) {
    const auto& f = prob.initial;
    const std::size_t nx = prob.x_grid.size();
    std::vector<cplx> out(nx);
    bool stable = prob.kind == PdeKind::evolution || std::abs(prob.alpha - 1.0) <= 1e-12;
    TauKernel ker = closed_form_tau_kernel(prob.kind, prob.alpha, y);
    for (std::size_t k = 0; k < nx; ++k) {
        double lx = prob.x_grid.log_point(k);
        if (stable) {
            // w(x) = int_0^inf f(x e^-tau) rho(tau) dtau in sigma = log tau
            auto integrand = [&](double sigma) -> cplx {
                double tau = std::exp(sigma);
                double rho = ker.density(tau);
                if (rho == 0.0) return 0.0;
                return f(std::max(std::exp(lx - tau), 2.3e-308)) * rho * tau;
            };
            // mass below tau = e^-12 and above tau = e^46 is negligible
            out[k] = refine_trapezoid(integrand, -12.0 - 2.0 * std::log(1.0 / std::max(y, 1e-6)),
                                      46.0, prob.quad, 0.25, 1e-13);
        } else {
            auto integrand = [&](double tau) -> cplx {
                return f(std::max(std::exp(lx - tau), 2.3e-308)) * ker.density(tau);
            };
            out[k] = refine_trapezoid(integrand, ker.lo, ker.hi, prob.quad, 0.25, 1e-13);
        }
    }
    return out;
}

std::vector<cplx> convolve_numeric(const PdeProblem& prob, double y) {
    // kernel sampled on a widened grid covering every x/v the convolution needs
    double flo = std::max(prob.initial.support_log_lo(), prob.quad.log_window_lo);
    double fhi = std::min(prob.initial.support_log_hi(), prob.quad.log_window_hi);
    double klo = prob.x_grid.log_min() - fhi - 0.5;
    double khi = prob.x_grid.log_max() - flo + 0.5;
    double h = 0.02;
    auto n = static_cast<std::size_t>(std::ceil((khi - klo) / h)) + 1;
    LogGrid kgrid(std::exp(klo), std::exp(khi), n);

    std::vector<double> slice =
        prob.kind == PdeKind::evolution
            ? evolution_kernel(prob.alpha, prob.nu, kgrid, y, prob.quad)
            : diffusion_kernel(prob.alpha, kgrid, y, prob.quad);
    std::vector<cplx> kvals(slice.begin(), slice.end());
    auto G = MellinFunction::from_samples(kgrid, std::move(kvals), 3, Extend::zero, Extend::zero);

    auto conv = mellin_convolve(prob.initial, G, prob.x_grid, prob.quad);
    return conv.samples();
}

}  // namespace

PdeSolution solve_pde(const PdeProblem& prob) {
    if (prob.kind == PdeKind::evolution) {
        if (!(prob.alpha > 0.0 && prob.alpha < 1.0)) {
            throw DomainError("solve_pde: evolution order must lie in (0,1)");
        }
        if (!(prob.nu < 0.0)) throw DomainError("solve_pde: evolution needs nu < 0");
    } else {
        check_diffusion_order(prob.alpha);
    }
    if (prob.y_values.empty()) throw DomainError("solve_pde: no y values");

    bool closed = !prob.force_numeric_kernel &&
                  (prob.kind == PdeKind::evolution ? evolution_closed_form_available(prob.alpha)
                                                   : diffusion_closed_form_available(prob.alpha));

    PdeSolution sol{prob.kind,   prob.alpha,    prob.nu,
                    closed ? KernelProvenance::closed_form : KernelProvenance::numeric,
                    prob.x_grid, prob.y_values, {}};
    for (double y : prob.y_values) {
        if (!(y > 0.0)) throw DomainError("solve_pde: y values must be positive");
        sol.w.push_back(closed ? convolve_closed_form(prob, y) : convolve_numeric(prob, y));
    }
    return sol;
}

ResidualReport residual_check(const PdeProblem& prob, const PdeSolution& sol) {
    const std::size_t ny = sol.y_values.size();
    if (ny < 5) throw DomainError("residual_check: need at least 5 y levels");
    double hy = sol.y_values[1] - sol.y_values[0];
    for (std::size_t j = 1; j < ny; ++j) {
        if (std::abs(sol.y_values[j] - sol.y_values[j - 1] - hy) > 1e-9 * hy) {
            throw DomainError("residual_check: y levels must be uniform");
        }
    }

    FracOrder order(prob.alpha);
    const std::size_t nx = sol.x_grid.size();
    // trim x ends so sampled stencils stay inside the grid
    const std::size_t margin = std::max<std::size_t>(4, nx / 16);

    ResidualReport rep;
    std::vector<double> abs_res;
    for (std::size_t j = 1; j + 1 < ny; ++j) {
        auto slice = MellinFunction::from_samples(sol.x_grid, sol.w[j], 3, Extend::zero,
                                                  Extend::error);
        int depth = order.is_integer ? static_cast<int>(std::llround(prob.alpha))
                                     : order.m;
        auto bundle = DerivativeBundle::automatic(slice, std::min(depth, 4));

        double level_max = 0.0;
        for (std::size_t k = margin; k + margin < nx; ++k) {
            double x = sol.x_grid[k];
            cplx lhs;
            if (order.is_integer) {
                // D^r = Theta^r for integral orders
                lhs = theta_derivative(bundle, static_cast<int>(std::llround(prob.alpha)), 0.0, x);
            } else {
                lhs = hadamard_derivative(bundle, order, 0.0, x, prob.quad);
            }
            cplx rhs;
            if (prob.kind == PdeKind::evolution) {
                rhs = -(sol.w[j + 1][k] - sol.w[j - 1][k]) / (2.0 * hy);
            } else {
                rhs = (sol.w[j + 1][k] - 2.0 * sol.w[j][k] + sol.w[j - 1][k]) / (hy * hy);
            }
            rep.field_scale = std::max(rep.field_scale, std::abs(rhs));
            level_max = std::max(level_max, std::abs(lhs - rhs));
        }
        rep.per_level.push_back(level_max);
    }
    for (double r : rep.per_level) {
        rep.max_rel_residual = std::max(rep.max_rel_residual, r / (rep.field_scale + 1e-300));
    }
    return rep;
}

}  // namespace mfrac
