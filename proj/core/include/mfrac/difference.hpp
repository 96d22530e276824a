#pragma once

#include <complex>
#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/grid.hpp"

namespace mfrac {

/// Direction from which the h-sequence approaches 1 in the strong-derivative
/// limit. From above, h = 1 + 2^-k; from below, h = 1 - 2^-k. Dilations with
/// h > 1 push sample points toward infinity, h < 1 toward zero, so the
/// workable direction depends on where f is representable and summable.
enum class HDirection { above, below };

struct DifferenceConfig {
    std::size_t j_max = 100000;
    double tail_tol = 1e-10;
    int k_first = 3, k_last = 12;  // h = 1 +- 2^-k
    HDirection direction = HDirection::above;
};

/// Fractional Mellin difference
///   Delta_h^{alpha,c} f(x) = sum_j binom(alpha,j) (-1)^(alpha-j) h^(cj) f(h^j x),
/// with the phase realized as (-1)^alpha (-1)^(-j), (-1)^alpha = e^(i pi alpha)
/// on the principal branch. Complex-valued for non-integer alpha; at integer
/// alpha the series terminates after alpha + 1 terms. Truncation stops after
/// ten consecutive terms below tail_tol; TruncationError if j_max is reached
/// without tail decay.
cplx frac_difference(const MellinFunction& f, double alpha, double c, double h, double x,
                     const DifferenceConfig& cfg = {});

/// The transform symbol of the difference on the line Re s = c, in the same
/// principal-branch factorization the series uses:
///   (h^(-it) - 1)^alpha = (-1)^alpha (1 - h^(-it))^alpha.
cplx difference_symbol(double alpha, double h, double t);

/// Difference-quotient estimate of the strong fractional Mellin derivative:
/// Delta_h^{alpha,c} f / (h-1)^alpha along the h-sequence, with discrete
/// X_c norms of successive differences as the convergence record.
struct StrongDerivativeReport {
    std::vector<double> h_values;
    std::vector<double> successive_diff;  // discrete X_c norm of q_k - q_{k-1}
    std::vector<double> estimate_norm;    // discrete X_c norm of q_k
    std::vector<double> noise_floor;      // truncation-tail bound per step
    std::vector<cplx> final_estimate;     // per grid point, at the last h
    double imag_residual = 0.0;           // max |Im| of the final estimate
    bool monotone = true;                 // successive_diff decreasing above the floor
};
StrongDerivativeReport strong_derivative_estimate(const MellinFunction& f, double alpha,
                                                  double c, const LogGrid& x_grid,
                                                  const DifferenceConfig& cfg = {});

/// | Delta^alpha (Delta^beta f) - Delta^(alpha+beta) f | at one point, both
/// sides by the same truncated-series engine.
double difference_semigroup_check(const MellinFunction& f, double alpha, double beta, double c,
                                  double h, double x, const DifferenceConfig& cfg = {});

}  // namespace mfrac
