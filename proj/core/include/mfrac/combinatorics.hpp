#pragma once

#include <cstddef>
#include <vector>

namespace mfrac {

/// Generalized binomial coefficient alpha over j, by the stable product
/// formula with log-magnitude accumulation when intermediate factors leave
/// double range. Decays like j^(-alpha-1); exactly zero for integer alpha
/// and j > alpha.
double frac_binomial(double alpha, std::size_t j);

/// Sum of |binom(alpha, j)| over all j, with a tail estimate from the
/// asymptotic decay once direct summation reaches `j_cap`.
struct AbsBinomialSum {
    double value = 0.0;       // direct partial sum plus tail estimate
    double partial = 0.0;     // direct partial sum alone
    double tail_estimate = 0.0;
    std::size_t terms = 0;
    bool tail_estimated = false;
};
AbsBinomialSum abs_binomial_sum(double alpha, double rel_tol = 1e-12,
                                std::size_t j_cap = 200000);

/// Triangular table of generalized Stirling numbers of the second kind:
/// S_c(r,0) = c^r, S_c(r,r) = 1, S_c(r+1,k) = S_c(r,k-1) + (c+k) S_c(r,k).
/// At c = 0 these are the classical Stirling numbers of the second kind.
class StirlingTable {
public:
    StirlingTable(double c, int r_max);

    double c() const { return c_; }
    int r_max() const { return r_max_; }
    double operator()(int r, int k) const;

private:
    double c_;
    int r_max_;
    std::vector<std::vector<double>> rows_;
};

/// Stirling function of the second kind,
///   S_c(alpha, k) = (1/k!) sum_{j=0}^{k} (-1)^(k-j) C(k,j) (c+j)^alpha.
/// The alternating sum is evaluated with compensated summation; when the
/// magnitude-ratio test shows more than 10 decimal digits cancelled, it is
/// recomputed in double-double arithmetic. Negative alpha is allowed (the
/// integral-series variant needs S_c(-alpha, k)); any base c+j <= 0 with
/// non-integer alpha is a DomainError.
double stirling_function(double c, double alpha, int k);

/// Gamma-ratio products B_alpha(k,j) = Gamma(alpha+k-j)/Gamma(alpha)
/// = prod_{v=1}^{k-j} (alpha+k-j-v); B_alpha(k,k) = 1.
double b_alpha(double alpha, int k, int j);

}  // namespace mfrac
