#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mfrac {

/// Shared quadrature configuration. One engine serves transforms, Hadamard
/// integrals and convolutions; truncation windows live in u = log x space.
struct QuadConfig {
    double rel_tol = 1e-8;
    int max_levels = 20;
    int gauss_jacobi_nodes = 64;   // node count absorbing the t^(alpha-1) endpoint weight
    double log_window_lo = -40.0;  // truncation window in log x, overridable
    double log_window_hi = 40.0;
    std::size_t max_points = std::size_t(1) << 20;
    double growth_threshold = 1.5;  // divergence: partial-sum growth factor per level
    double decay_min = 0.95;        // divergence: stalled panel-contribution decay
};

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Jacobi nodes/weights on [-1, 1] for the weight (1+x)^beta, beta > -1.
void gauss_jacobi01(int n, double beta, std::vector<double>& nodes, std::vector<double>& weights);

/// Trapezoid rule with step halving on [a, b]; initial step at most h0.
/// Stops when two successive levels agree to cfg.rel_tol relative or
/// abs_floor absolute, throws NonConvergentError when the point budget
/// runs out first.
std::complex<double> refine_trapezoid(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, const QuadConfig& cfg,
                                      double h0 = 0.25, double abs_floor = 0.0);

/// Outcome of the half-line engine below. `panel_contributions` is the
/// refinement trace: the magnitude added by each successive dyadic panel.
struct HalfLineResult {
    enum class Status { converged, divergent, non_convergent };
    Status status = Status::converged;
    std::complex<double> value{0.0, 0.0};
    double tail_estimate = 0.0;
    std::vector<double> panel_contributions;
    std::string note;
};

/// Integrates e^(-mu t) t^(alpha-1) g(t) over [0, t_cap). The t^(alpha-1)
/// endpoint singularity (alpha < 1) is absorbed by Gauss-Jacobi weights on
/// the first panel; dyadic Gauss-Legendre panels cover the rest until the
/// contributions fall below tolerance or the trace shows divergence.
/// `t_cap` is a hard end (the integrand vanishes beyond it); `t_soft_cap`
/// marks where g stops being representable — reaching it with decaying
/// contributions yields a geometric tail extrapolation, anything else is
/// non-convergent. With `absolute` set the integrand is |g|, which is what
/// the domain probe runs on. Never throws; callers decide what a
/// non-converged status means.
/// `t_start` > 0 declares that g vanishes on [0, t_start) (a support edge);
/// integration then starts there and the weight is treated as smooth.
HalfLineResult weighted_halfline_quad(double alpha, double mu,
                                      const std::function<std::complex<double>(double)>& g,
                                      const QuadConfig& cfg,
                                      double t_cap = 1e300,
                                      bool absolute = false,
                                      double t_soft_cap = 0x1p40,
                                      double t_start = 0.0);

}  // namespace mfrac
