#pragma once

#include <complex>
#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/grid.hpp"
#include "mfrac/quadrature.hpp"

namespace mfrac {

enum class PdeKind { evolution, diffusion };
enum class KernelProvenance { numeric, closed_form };

/// Sampled kernel G(x, y) over a log grid and a set of y values.
struct KernelField {
    PdeKind problem = PdeKind::evolution;
    double alpha = 0.5;
    double nu = -1.0;  // evolution line abscissa
    KernelProvenance provenance = KernelProvenance::numeric;
    LogGrid x_grid{0.5, 2.0, 2};
    std::vector<double> y_values;
    std::vector<std::vector<double>> values;  // [y][x]
    double imag_residual = 0.0;               // largest imaginary leak of the inversion
};

/// One y-slice of the evolution kernel
///   G(x,y) = (1/2pi) int e^(-(-nu-it)^alpha y) x^(-nu-it) dt,
/// alpha in (0,1), nu < 0 so Re(-nu-it) > 0 on the whole line. Throws
/// TailError when the damping cannot push the integrand below tolerance
/// inside a workable window (y too small).
std::vector<double> evolution_kernel(double alpha, double nu, const LogGrid& x_grid, double y,
                                     const QuadConfig& quad = {}, double* imag_residual = nullptr);

/// Closed form at alpha = 1/2:
///   G(x,y) = y/(2 sqrt(pi)) (log x)^(-3/2) exp(-y^2/(4 log x)) for x > 1,
/// vanishing on (0,1]. (The inversion is an inverse Laplace transform in
/// log x, so the support sits where log x > 0.)
double evolution_kernel_closed(double x, double y);

/// One y-slice of the diffusion kernel
///   G(x,y) = (1/pi) int_0^inf e^(-a y t^(alpha/2))
///            cos(t log x - eps b y t^(alpha/2)) dt,
/// a = |cos(alpha pi/4)|, b = sin(alpha pi/4), eps = sign(cos(alpha pi/4)).
/// Orders with cos(alpha pi/4) = 0 are rejected.
std::vector<double> diffusion_kernel(double alpha, const LogGrid& x_grid, double y,
                                     const QuadConfig& quad = {});

/// Closed forms at alpha = 1 (one-sided stable kernel, x > 1 only) and
/// alpha = 4 (Gaussian in log x):
///   alpha = 1: y/(2 sqrt(pi)) (log x)^(-3/2) exp(-y^2/(4 log x)),  x > 1
///   alpha = 4: (1/(2 sqrt(pi y))) exp(-log^2 x / (4y))
double diffusion_kernel_closed(double alpha, double x, double y);

bool evolution_closed_form_available(double alpha);
bool diffusion_closed_form_available(double alpha);

/// Transform-side factor of the solution: M[w(.,y)] = M[f] * symbol(t, y).
cplx pde_symbol(PdeKind kind, double alpha, double nu, double t, double y);

struct PdeProblem {
    PdeKind kind = PdeKind::evolution;
    double alpha = 0.5;
    double nu = -1.0;  // used by the evolution problem only
    MellinFunction initial = builtin::log_bump(0.0, 1.0);
    LogGrid x_grid{0.05, 20.0, 201};
    std::vector<double> y_values{0.5, 0.75, 1.0, 1.25, 1.5};
    QuadConfig quad{};
    bool force_numeric_kernel = false;  // cross-validation path
};

struct PdeSolution {
    PdeKind kind;
    double alpha;
    double nu;
    KernelProvenance kernel_provenance;
    LogGrid x_grid;
    std::vector<double> y_values;
    std::vector<std::vector<cplx>> w;  // [y][x]
};

/// w(x,y) = int f(v) G(x/v, y) dv/v per y-slice. Uses the closed-form
/// kernels where one exists (unless forced numeric); the numeric path
/// samples the kernel on a widened grid and convolves against it.
PdeSolution solve_pde(const PdeProblem& problem);

/// Plugs the solved field back into the equation: D^alpha_{0+} w(., y)
/// against -dw/dy (evolution) or d^2 w/dy^2 (diffusion), y-derivatives by
/// central differences on the uniform y levels.
struct ResidualReport {
    double max_rel_residual = 0.0;
    double field_scale = 0.0;
    std::vector<double> per_level;  // max abs residual per interior y level
};
ResidualReport residual_check(const PdeProblem& problem, const PdeSolution& solution);

}  // namespace mfrac
