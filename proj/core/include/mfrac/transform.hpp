#pragma once

#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/quadrature.hpp"

namespace mfrac {

/// Complex samples of M[f](nu + it) along one vertical line Re s = nu.
struct MellinSpectrum {
    double nu = 0.0;
    std::vector<double> t_values;  // uniform, symmetric about 0
    std::vector<cplx> values;

    /// Largest |value(-t) - conj(value(t))| over the grid; vanishes (to
    /// quadrature accuracy) when the source function is real-valued.
    double max_conjugate_asymmetry() const;
};

/// Uniform symmetric t-grid with an odd point count (so t = 0 is a node).
std::vector<double> uniform_t_grid(double t_max, std::size_t n);

/// M[f](nu + it) = int x^(nu+it-1) f(x) dx, evaluated on a log-substituted
/// grid (u = log x). The truncation window comes from the config clipped to
/// the function's declared support; step control keeps |t| h <= 1/2.
MellinSpectrum mellin_transform(const MellinFunction& f, double nu,
                                const std::vector<double>& t_grid,
                                const QuadConfig& quad = {});

/// (1/2pi) int values(t) x^(-nu-it) dt by the trapezoid rule on the uniform
/// t-grid; throws TailError when |values| has not decayed at the window edge.
MellinFunction mellin_inverse(const MellinSpectrum& spec, const LogGrid& x_grid,
                              double tail_tol = 1e-8);

/// Mellin translation (tau_h^c f)(x) = h^c f(h x).
MellinFunction mellin_translate(const MellinFunction& f, double h, double c);

/// Mellin convolution (f * g)(x) = int g(x/u) f(u) du/u, sampled on x_grid.
MellinFunction mellin_convolve(const MellinFunction& f, const MellinFunction& g,
                               const LogGrid& x_grid, const QuadConfig& quad = {});

namespace detail {
/// Quadrature window in u = log x for a function: config window clipped to
/// declared support (padded, so jumps at a support edge stay interior) and to
/// the span of sampled representations that refuse outside evaluation.
void quad_window(const MellinFunction& f, const QuadConfig& cfg, double& lo, double& hi);
}  // namespace detail

}  // namespace mfrac
