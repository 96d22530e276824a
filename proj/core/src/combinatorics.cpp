#include "mfrac/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "mfrac/errors.hpp"
#include "mfrac/gamma.hpp"

namespace mfrac {
namespace {

// ---------------------------------------------------------------------------
// Minimal double-double arithmetic (Dekker/Knuth error-free transforms),
// enough for the cancellation-prone Stirling-function sums.
// ---------------------------------------------------------------------------
struct dd {
    double hi = 0.0, lo = 0.0;
};

dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

dd dd_add(dd a, double b) { return dd_add(a, dd{b, 0.0}); }

dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

dd dd_mul(dd a, double b) { return dd_mul(a, dd{b, 0.0}); }

dd dd_div(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = dd_add(a, dd_neg(dd_mul(b, q1)));
    double q2 = r.hi / b.hi;
    r = dd_add(r, dd_neg(dd_mul(b, q2)));
    double q3 = r.hi / b.hi;
    return dd_add(quick_two_sum(q1, q2), q3);
}

const dd kLn2{6.93147180559945286e-01, 2.31904681384629956e-17};

dd dd_exp(dd a) {
    if (a.hi > 700.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (a.hi < -746.0) return {0.0, 0.0};
    double m = std::round(a.hi / kLn2.hi);
    dd r = dd_add(a, dd_neg(dd_mul(kLn2, m)));
    // Taylor for e^r, |r| <= ln2/2
    dd sum{1.0, 0.0}, term{1.0, 0.0};
    for (int k = 1; k < 40; ++k) {
        term = dd_mul(term, r);
        term = dd_div(term, dd{static_cast<double>(k), 0.0});
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    double scale = std::ldexp(1.0, static_cast<int>(m));
    return {sum.hi * scale, sum.lo * scale};
}

dd dd_log(double x) {
    dd y{std::log(x), 0.0};
    // one Newton step: y += x e^(-y) - 1, lifting double log to dd accuracy
    dd corr = dd_add(dd_mul(dd_exp(dd_neg(y)), x), -1.0);
    return dd_add(y, corr);
}

dd dd_pow(double base, double expo) { return dd_exp(dd_mul(dd_log(base), expo)); }

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

double ipow(double base, long long n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    double acc = 1.0, b = base;
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

}  // namespace

double frac_binomial(double alpha, std::size_t j) {
    if (j == 0) return 1.0;
    if (is_integer(alpha) && alpha >= 0.0 && static_cast<double>(j) > std::round(alpha)) {
        return 0.0;  // one factor is exactly zero
    }
    double acc = 1.0;
    bool log_path = false;
    double log_mag = 0.0;
    int sign = 1;
    for (std::size_t i = 0; i < j; ++i) {
        double factor = (alpha - static_cast<double>(i)) / (static_cast<double>(i) + 1.0);
        if (!log_path) {
            acc *= factor;
            if (std::abs(acc) > 1e280 || (acc != 0.0 && std::abs(acc) < 1e-280)) {
                log_path = true;
                log_mag = std::log(std::abs(acc));
                sign = acc < 0.0 ? -1 : 1;
                acc = 1.0;
            }
        } else {
            log_mag += std::log(std::abs(factor));
            if (factor < 0.0) sign = -sign;
        }
    }
    if (!log_path) return acc;
    double mag = std::exp(log_mag);
    return sign < 0 ? -mag : mag;
}

AbsBinomialSum abs_binomial_sum(double alpha, double rel_tol, std::size_t j_cap) {
    AbsBinomialSum out;
    if (is_integer(alpha) && alpha >= 0.0) {
        auto n = static_cast<std::size_t>(std::round(alpha));
        for (std::size_t j = 0; j <= n; ++j) out.partial += std::abs(frac_binomial(alpha, j));
        out.value = out.partial;
        out.terms = n + 1;
        return out;
    }
    double term = 1.0;  // binom(alpha, 0)
    double sum = 0.0;
    std::size_t j = 0;
    for (; j < j_cap; ++j) {
        sum += std::abs(term);
        double next = term * (alpha - static_cast<double>(j)) / (static_cast<double>(j) + 1.0);
        // Cauchy-style stop once a whole tail bound is negligible
        double jd = static_cast<double>(j) + 1.0;
        double tail_bound = std::abs(next) * jd / std::max(alpha, 1e-3);
        if (tail_bound < rel_tol * sum) {
            out.partial = sum;
            out.value = sum + tail_bound;
            out.tail_estimate = tail_bound;
            out.terms = j + 1;
            return out;
        }
        term = next;
    }
    // |binom(alpha,j)| ~ j^(-alpha-1)/|Gamma(-alpha)|; integrate the tail
    double jd = static_cast<double>(j);
    double tail = std::pow(jd, -alpha) / (alpha * std::abs(gamma_fn(-alpha)));
    out.partial = sum;
    out.tail_estimate = tail;
    out.value = sum + tail;
    out.terms = j;
    out.tail_estimated = true;
    return out;
}

StirlingTable::StirlingTable(double c, int r_max) : c_(c), r_max_(r_max) {
    if (r_max < 0) throw DomainError("StirlingTable: r_max must be nonnegative");
    rows_.resize(r_max + 1);
    rows_[0] = {1.0};  // S_c(0,0) = c^0 = 1
    for (int r = 0; r < r_max; ++r) {
        rows_[r + 1].assign(r + 2, 0.0);
        rows_[r + 1][0] = ipow(c, r + 1);
        rows_[r + 1][r + 1] = 1.0;
        for (int k = 1; k <= r; ++k) {
            rows_[r + 1][k] = rows_[r][k - 1] + (c + k) * rows_[r][k];
        }
    }
}

double StirlingTable::operator()(int r, int k) const {
    if (r < 0 || r > r_max_ || k < 0 || k > r) throw DomainError("StirlingTable: index out of range");
    return rows_[r][k];
}

double stirling_function(double c, double alpha, int k) {
    if (k < 0) throw DomainError("stirling_function: k must be nonnegative");
    const bool alpha_int = is_integer(alpha);
    if (!alpha_int) {
        if (c <= 0.0) throw DomainError("stirling_function: need c + j > 0 for non-integer alpha");
    }

    // binomial row and powers; compensated (Kahan) alternating sum
    double comp = 0.0, sum = 0.0, max_term = 0.0;
    double binom = 1.0;  // C(k, 0)
    for (int j = 0; j <= k; ++j) {
        double base = c + j;
        double p = alpha_int ? ipow(base, static_cast<long long>(std::round(alpha)))
                             : std::pow(base, alpha);
        double term = ((k - j) % 2 ? -1.0 : 1.0) * binom * p;
        max_term = std::max(max_term, std::abs(term));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        binom *= static_cast<double>(k - j) / (j + 1.0);
    }
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    double result = sum / kfact;

    // magnitude-ratio cancellation monitor: > 10 digits lost, redo in dd
    if (max_term > 1e10 * std::abs(sum) && max_term > 0.0) {
        dd acc{0.0, 0.0};
        dd bin{1.0, 0.0};
        for (int j = 0; j <= k; ++j) {
            double base = c + j;
            dd p = alpha_int && base <= 0.0
                       ? dd{ipow(base, static_cast<long long>(std::round(alpha))), 0.0}
                       : dd_pow(base, alpha);
            dd term = dd_mul(bin, p);
            if ((k - j) % 2) term = dd_neg(term);
            acc = dd_add(acc, term);
            bin = dd_div(dd_mul(bin, static_cast<double>(k - j)), dd{j + 1.0, 0.0});
        }
        result = dd_div(acc, dd{kfact, 0.0}).hi;
    }
    return result;
}

double b_alpha(double alpha, int k, int j) {
    if (j < 0 || j > k) throw DomainError("b_alpha: need 0 <= j <= k");
    double acc = 1.0;
    for (int v = 1; v <= k - j; ++v) acc *= alpha + static_cast<double>(k - j - v);
    return acc;
}

}  // namespace mfrac
