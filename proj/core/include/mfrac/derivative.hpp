#pragma once

#include <functional>
#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/grid.hpp"
#include "mfrac/quadrature.hpp"

namespace mfrac {

/// A function together with its ordinary derivatives up to some depth.
/// Derivatives come from analytic rules, exact coefficient shifts (power
/// series), or central differences in log x as a fallback; the fallback
/// stops at order 4, beyond which double precision differencing is noise.
class DerivativeBundle {
public:
    DerivativeBundle(MellinFunction f, std::vector<std::function<cplx(double)>> derivs);

    /// Exact derivatives for power series; finite differences otherwise.
    static DerivativeBundle automatic(MellinFunction f, int depth);

    const MellinFunction& f() const { return f_; }
    int depth() const { return depth_; }
    bool analytic() const { return !derivs_.empty() || f_.kind() == MellinFunction::Kind::power_series; }

    /// k-th ordinary derivative at x; k = 0 is the function itself.
    cplx derivative(int k, double x) const;

    /// Worst relative deviation between the supplied rules and a
    /// finite-difference estimate over the probe points (first derivative).
    double max_fd_deviation(const std::vector<double>& probes) const;

private:
    MellinFunction f_;
    std::vector<std::function<cplx(double)>> derivs_;
    int depth_ = 0;
    bool fd_ = false;
};

/// Pointwise Mellin derivative of order r:
///   Theta_c^r f(x) = sum_{k=0}^r S_c(r,k) x^k f^(k)(x);
/// r = 1 is x f'(x) + c f(x).
cplx theta_derivative(const DerivativeBundle& bundle, int r, double c, double x);

/// Hadamard-type fractional derivative, computed in the commuted form
///   (D^alpha_{0+,c} f)(x) = J^(m-alpha)_{0+,c} (Theta_c^m f)(x),
/// with m = floor(alpha) + 1. Derivatives stay inside the quadrature, which
/// keeps the noise of outer numerical differentiation out of the result.
cplx hadamard_derivative(const DerivativeBundle& bundle, const FracOrder& order, double c,
                         double x, const QuadConfig& quad = {});

/// Verification mode: the definitional operator order
///   Theta_c^m (J^(m-alpha)_{0+,c} f)(x),
/// with the outer Mellin derivative taken by central differences in log x
/// on a frozen quadrature layout. Reports both values.
struct OperatorOrderCheck {
    cplx commuted;   // J^(m-alpha) Theta_c^m f
    cplx definitional;  // Theta_c^m J^(m-alpha) f by outer differencing
    double discrepancy;
};
OperatorOrderCheck hadamard_derivative_check(const DerivativeBundle& bundle,
                                             const FracOrder& order, double c, double x,
                                             const QuadConfig& quad = {});

/// Series fast path for power-series inputs:
///   (D^alpha_{0+,c} f)(x) = sum_k (c+k)^alpha a_k x^k   (c > 0, or c = 0
/// with vanishing constant term).
cplx hadamard_derivative_series(const MellinFunction& f, const FracOrder& order, double c,
                                double x);

/// Stirling-function series for analytic inputs (c > 0):
///   D variant: sum_k S_c(alpha,k)  x^k f^(k)(x)
///   J variant: sum_k S_c(-alpha,k) x^k f^(k)(x)
/// truncated at the bundle depth; the last summed term is the tail proxy.
struct StirlingSeriesResult {
    cplx value;
    double tail_proxy;
    int terms;
};
enum class StirlingVariant { derivative, integral };
StirlingSeriesResult stirling_series_derivative(const DerivativeBundle& bundle, double alpha,
                                                double c, double x, int truncation,
                                                StirlingVariant variant = StirlingVariant::derivative);

}  // namespace mfrac
