#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "mfrac/function.hpp"
#include "mfrac/grid.hpp"

namespace mfrac {

/// Closed-form reference families. Every value the engines are tested
/// against comes from here, through code paths that share nothing with the
/// quadrature machinery.
enum class OracleFamily { power, log_k, exp, sinc, sinc_deriv };
enum class OracleOp { integral, derivative };

struct OracleCase {
    OracleFamily family = OracleFamily::power;
    OracleOp op = OracleOp::integral;
    double alpha = 0.5;
    double c = 1.0;
    double x = 1.0;
    double b = 1.0;  // power exponent / exponential rate
    int k = 0;       // log power, or the sinc derivative order
};

/// Closed-form value of (J^alpha_{0+,c} f)(x) or (D^alpha_{0+,c} f)(x) for
/// the case's family:
///   power:      (c+b)^(-+alpha) x^b               (c+b > 0)
///   log^k:      the alternating B_alpha(k,j) sum   (c > 0)
///   e^(bx):     sum_k (c+k)^(-+alpha) b^k/k! x^k   (c > 0)
///   sinc:       sum_k (-1)^k (c+2k)^(-+alpha) pi^(2k)/(2k+1)! x^(2k)
///   sinc^(s):   shifted sum with A(s,k) factors    (c > 0, or c = 0 with odd s)
/// Series are truncated once the tail drops below 1e-12.
cplx oracle_eval(const OracleCase& c);

/// The function each family describes, as a MellinFunction rule.
MellinFunction oracle_function(const OracleCase& c);

/// Deterministic enumeration over families x operations x orders x grid
/// points with the default parameters (b = 1, k = 1); this is what the
/// verification runner sweeps.
std::vector<std::pair<OracleCase, cplx>> oracle_suite(const LogGrid& grid,
                                                      const std::vector<double>& alphas,
                                                      double c = 1.0);

}  // namespace mfrac
