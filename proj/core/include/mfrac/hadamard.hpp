#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/grid.hpp"
#include "mfrac/quadrature.hpp"

namespace mfrac {

/// Hadamard-type fractional integral
///   (J^alpha_{0+,mu} f)(x) = (1/Gamma(alpha)) int_0^x (u/x)^mu
///                            (log(x/u))^(alpha-1) f(u) du/u,
/// computed after the substitution t = log(x/u), which turns the weakly
/// singular log factor into the Jacobi weight t^(alpha-1) and du/u into dt:
///   (1/Gamma(alpha)) int_0^inf e^(-mu t) t^(alpha-1) f(x e^(-t)) dt.
/// Throws DivergentError when the refinement trace grows without
/// stabilizing and NonConvergentError when it stalls.
cplx hadamard_integral(const MellinFunction& f, const FracOrder& order, double mu,
                       double x, const QuadConfig& quad = {});

/// Series fast path for power-series inputs:
///   (J^alpha_{0+,c} f)(x) = sum_k (c+k)^(-alpha) a_k x^k      (c > 0)
/// and for c = 0 the constant term must vanish (the Hadamard domain
/// excludes it); then the sum starts at k = 1.
cplx hadamard_integral_series(const MellinFunction& f, const FracOrder& order,
                              double c, double x);

/// Integer-order iterated form
///   (J^r_{0+,c} f)(x) = x^(-c) int_0^x ... int_0^{u_{r-1}} f(u_r) u_r^c
///                       du_r/u_r ... du_1/u_1,
/// evaluated by nested cumulative trapezoid sums in log coordinates.
/// Agrees with hadamard_integral at alpha = r.
cplx integer_iterated_integral(const MellinFunction& f, int r, double c, double x,
                               const QuadConfig& quad = {});

/// Outcome of the domain diagnostic. The classification is heuristic by
/// construction; `trace` holds the panel contributions it was based on.
struct DomainProbeResult {
    bool convergent = false;
    double value = 0.0;  // (J^alpha_{0+,c} |f|)(x) when convergent
    std::vector<double> trace;
    std::string note;
};

/// Runs the refinement on |f| against the domain integral
///   int_0^x u^c (log(x/u))^(alpha-1) |f(u)| du/u
/// and classifies convergence from the refinement trace: growth by more
/// than quad.growth_threshold or contributions that fail to decay for five
/// consecutive panels mean Divergent.
DomainProbeResult domain_probe(const MellinFunction& f, const FracOrder& order,
                               double c, double x, const QuadConfig& quad = {});

namespace detail {
/// sum_k (c+k)^expo a_k x^k with the c = 0 domain rule shared by the
/// integral (expo = -alpha) and derivative (expo = +alpha) series paths.
cplx hadamard_series_sum(const std::vector<cplx>& coeffs, double c, double expo, double x);
/// Upper integration cap in t = log(x/u) imposed by f's representation.
double t_cap_for(const MellinFunction& f, double x);
/// First t where f(x e^-t) can be nonzero (upper support edge).
double t_start_for(const MellinFunction& f, double x);
/// Cap where x e^(-t) leaves double range; tails beyond it are extrapolated.
double t_soft_cap_for(double x);
}  // namespace detail

}  // namespace mfrac
