#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mfrac/grid.hpp"

namespace mfrac {

using cplx = std::complex<double>;

/// Extension policy for evaluating a sampled function outside its grid span.
/// The default is to refuse: silent zero-fill corrupts convolution tails.
/// Zero extension must be declared explicitly by a caller that can prove it
/// (e.g. a convolution of compactly supported factors).
enum class Extend { error, zero };

/// A function of x > 0 in one of three representations: a callable rule, a
/// power series sum a_k x^k on [0, radius], or samples on a LogGrid with
/// cubic interpolation in log x.
class MellinFunction {
public:
    enum class Kind { rule, power_series, sampled };

    static MellinFunction from_rule(std::function<cplx(double)> f);
    static MellinFunction from_power_series(std::vector<cplx> coeffs,
                                            double radius = std::numeric_limits<double>::infinity());
    static MellinFunction from_samples(LogGrid grid, std::vector<cplx> values,
                                       int interp_order = 3,
                                       Extend below = Extend::error,
                                       Extend above = Extend::error);

    Kind kind() const { return kind_; }
    cplx operator()(double x) const;

    const std::vector<cplx>& coeffs() const;
    double radius() const;

    const LogGrid& grid() const;
    const std::vector<cplx>& samples() const;

    /// Support hint in log x, used to clip quadrature windows. Functions
    /// that vanish outside a known interval should declare it.
    double support_log_lo() const { return supp_lo_; }
    double support_log_hi() const { return supp_hi_; }
    MellinFunction& declare_support(double log_lo, double log_hi) {
        supp_lo_ = log_lo;
        supp_hi_ = log_hi;
        return *this;
    }

private:
    MellinFunction() = default;

    Kind kind_ = Kind::rule;
    std::function<cplx(double)> rule_;
    std::vector<cplx> coeffs_;
    double radius_ = 0.0;
    std::shared_ptr<const LogGrid> grid_;
    std::vector<cplx> values_;
    int interp_order_ = 3;
    Extend below_ = Extend::error, above_ = Extend::error;
    double supp_lo_ = -std::numeric_limits<double>::infinity();
    double supp_hi_ = std::numeric_limits<double>::infinity();
};

/// Built-in function families used by the oracle suite and the CLI.
namespace builtin {

MellinFunction power(double b);                      // x^b
MellinFunction log_k(int k);                         // log^k x
MellinFunction exp_b(double b);                      // e^(b x)
MellinFunction exp_neg();                            // e^(-x)
MellinFunction sinc();                               // sin(pi x)/(pi x)
MellinFunction sinc_deriv(int s);                    // s-th derivative of sinc
MellinFunction chi01();                              // indicator of (0,1); 1/2 at the jump
MellinFunction log_bump(double center_log, double width_log);  // smooth bump in log x

/// Power-series forms of the analytic families, truncated at `terms`.
MellinFunction power_series_exp(double b, int terms = 64);
MellinFunction power_series_sinc(int terms = 40);
MellinFunction power_series_power(double b);  // integer b >= 0 only

/// Parses "name" or "name:key=value,..." into a builtin; throws DomainError
/// on unknown names. Used by the CLI.
MellinFunction parse(const std::string& desc);

}  // namespace builtin

/// Discrete X_c norm over a grid: sum of |f| x^c h_log (the trapezoid rule
/// for the norm integral in log coordinates).
double discrete_xc_norm(const LogGrid& grid, const std::vector<cplx>& values, double c);

}  // namespace mfrac
