#include "mfrac/oracle.hpp"

#include <cmath>
#include <numbers>

#include "mfrac/combinatorics.hpp"
#include "mfrac/errors.hpp"

namespace mfrac {
namespace {

double sign_pm(OracleOp op) { return op == OracleOp::integral ? -1.0 : 1.0; }

// delta^m (x^c log^j x) = x^c * polynomial in log x; iterate
// delta(x^c log^i x) = c x^c log^i x + i x^c log^(i-1) x on coefficients
std::vector<double> delta_m_log_poly(int j, double c, int m) {
    std::vector<double> p(j + 1, 0.0);
    p[j] = 1.0;
    for (int pass = 0; pass < m; ++pass) {
        std::vector<double> q(p.size(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] += c * p[i];
            if (i + 1 < p.size()) q[i] += static_cast<double>(i + 1) * p[i + 1];
        }
        p = std::move(q);
    }
    return p;
}

double eval_log_poly(const std::vector<double>& p, double lx) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * lx + *it;
    return acc;
}

double binom_int(int n, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1.0);
    return acc;
}

cplx eval_power(const OracleCase& oc) {
    if (!(oc.c + oc.b > 0.0)) throw DomainError("oracle: power family needs c + b > 0");
    return std::pow(oc.c + oc.b, sign_pm(oc.op) * oc.alpha) * std::pow(oc.x, oc.b);
}

cplx eval_log(const OracleCase& oc) {
    if (!(oc.c > 0.0)) throw DomainError("oracle: log family needs c > 0");
    const int k = oc.k;
    const double lx = std::log(oc.x);
    if (oc.op == OracleOp::integral) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            double sgn = ((k - j) % 2) ? -1.0 : 1.0;
            acc += sgn * binom_int(k, j) * b_alpha(oc.alpha, k, j) /
                   std::pow(oc.c, oc.alpha + k - j) * std::pow(lx, j);
        }
        return acc;
    }
    const int mm = (std::abs(oc.alpha - std::round(oc.alpha)) <= 1e-12)
                       ? static_cast<int>(std::round(oc.alpha)) + 1
                       : static_cast<int>(std::floor(oc.alpha)) + 1;
    const double beta = mm - oc.alpha;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
        double sgn = ((k - j) % 2) ? -1.0 : 1.0;
        auto poly = delta_m_log_poly(j, oc.c, mm);
        acc += sgn * binom_int(k, j) * b_alpha(beta, k, j) / std::pow(oc.c, beta + k - j) *
               eval_log_poly(poly, lx);
    }
    return acc;
}

cplx eval_exp(const OracleCase& oc) {
    if (!(oc.c > 0.0)) throw DomainError("oracle: exponential family needs c > 0");
    double term = 1.0;  // b^k/k! x^k
    double acc = 0.0;
    for (int k = 0; k < 400; ++k) {
        double contrib = std::pow(oc.c + k, sign_pm(oc.op) * oc.alpha) * term;
        acc += contrib;
        if (std::abs(contrib) < 1e-12 * (std::abs(acc) + 1.0) && k > 4) break;
        term *= oc.b * oc.x / (k + 1.0);
    }
    return acc;
}

cplx eval_sinc(const OracleCase& oc) {
    if (!(oc.c > 0.0)) throw DomainError("oracle: sinc family needs c > 0");
    const double px2 = std::numbers::pi * std::numbers::pi * oc.x * oc.x;
    double term = 1.0;  // pi^(2k) x^(2k) / (2k+1)!
    double acc = 0.0;
    for (int k = 0; k < 200; ++k) {
        double contrib = (k % 2 ? -1.0 : 1.0) *
                         std::pow(oc.c + 2.0 * k, sign_pm(oc.op) * oc.alpha) * term;
        acc += contrib;
        if (std::abs(contrib) < 1e-12 * (std::abs(acc) + 1.0) && k > 4) break;
        term *= px2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return acc;
}

cplx eval_sinc_deriv(const OracleCase& oc) {
    const int s = oc.k;
    if (s < 1) throw DomainError("oracle: sinc_deriv needs s >= 1");
    if (!(oc.c > 0.0) && !(oc.c == 0.0 && s % 2 == 1)) {
        throw DomainError("oracle: sinc_deriv needs c > 0, or c = 0 with odd s");
    }
    double fact = 1.0;
    for (int i = 2; i <= 2 * s + 1; ++i) fact *= i;
    double term = std::pow(std::numbers::pi, 2 * s) * std::pow(oc.x, s) / fact;
    const double px2 = std::numbers::pi * std::numbers::pi * oc.x * oc.x;
    double acc = 0.0;
    for (int k = 0; k < 200; ++k) {
        double a = 1.0;  // A(s, k+s) = prod_{v=0}^{s-1} (2(k+s) - v)
        for (int v = 0; v < s; ++v) a *= 2.0 * (k + s) - v;
        double contrib = ((k + s) % 2 ? -1.0 : 1.0) *
                         std::pow(oc.c + 2.0 * k + s, sign_pm(oc.op) * oc.alpha) * a * term;
        acc += contrib;
        if (std::abs(contrib) < 1e-12 * (std::abs(acc) + 1.0) && k > 4) break;
        term *= px2 / ((2.0 * k + 2 * s + 2.0) * (2.0 * k + 2 * s + 3.0));
    }
    return acc;
}

}  // namespace

cplx oracle_eval(const OracleCase& oc) {
    if (!(oc.x > 0.0)) throw DomainError("oracle: x must be positive");
    if (!(oc.alpha > 0.0)) throw DomainError("oracle: alpha must be positive");
    switch (oc.family) {
        case OracleFamily::power:
            return eval_power(oc);
        case OracleFamily::log_k:
            return eval_log(oc);
        case OracleFamily::exp:
            return eval_exp(oc);
        case OracleFamily::sinc:
            return eval_sinc(oc);
        case OracleFamily::sinc_deriv:
            return eval_sinc_deriv(oc);
    }
    throw DomainError("oracle: unknown family");
}

MellinFunction oracle_function(const OracleCase& oc) {
    switch (oc.family) {
        case OracleFamily::power:
            return builtin::power(oc.b);
        case OracleFamily::log_k:
            return builtin::log_k(oc.k);
        case OracleFamily::exp:
            return builtin::exp_b(oc.b);
        case OracleFamily::sinc:
            return builtin::sinc();
        case OracleFamily::sinc_deriv:
            return builtin::sinc_deriv(oc.k);
    }
    throw DomainError("oracle: unknown family");
}

std::vector<std::pair<OracleCase, cplx>> oracle_suite(const LogGrid& grid,
                                                      const std::vector<double>& alphas,
                                                      double c) {
    std::vector<std::pair<OracleCase, cplx>> out;
    const OracleFamily families[] = {OracleFamily::power, OracleFamily::log_k, OracleFamily::exp,
                                     OracleFamily::sinc};
    const OracleOp ops[] = {OracleOp::integral, OracleOp::derivative};
    for (double alpha : alphas) {
        for (auto family : families) {
            for (auto op : ops) {
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    OracleCase oc;
                    oc.family = family;
                    oc.op = op;
                    oc.alpha = alpha;
                    oc.c = c;
                    oc.x = grid[i];
                    oc.b = 1.0;
                    oc.k = family == OracleFamily::log_k ? 1 : 0;
                    out.emplace_back(oc, oracle_eval(oc));
                }
            }
        }
    }
    return out;
}

}  // namespace mfrac
