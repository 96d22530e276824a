#include "mfrac/derivative.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mfrac/combinatorics.hpp"
#include "mfrac/errors.hpp"
#include "mfrac/gamma.hpp"
#include "mfrac/hadamard.hpp"

namespace mfrac {
namespace {

// central-difference steps in log x per derivative order, eps^(1/(k+2))
constexpr std::array<double, 5> kFdStep = {0.0, 6.1e-6, 1.2e-4, 7.4e-4, 2.4e-3};

// delta^k g in v = log x by central stencils, g(v) = f(e^v)
cplx log_diff(const MellinFunction& f, int k, double v, double h) {
    auto g = [&](double dv) { return f(std::exp(v + dv)); };
    switch (k) {
        case 1:
            return (g(h) - g(-h)) / (2.0 * h);
        case 2:
            return (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
        case 3:
            return (g(2.0 * h) - 2.0 * g(h) + 2.0 * g(-h) - g(-2.0 * h)) / (2.0 * h * h * h);
        case 4:
            return (g(2.0 * h) - 4.0 * g(h) + 6.0 * g(0.0) - 4.0 * g(-h) + g(-2.0 * h)) /
                   (h * h * h * h);
        default:
            throw MissingDerivativeError("finite differences support order 4 at most");
    }
}

}  // namespace

DerivativeBundle::DerivativeBundle(MellinFunction f,
                                   std::vector<std::function<cplx(double)>> derivs)
    : f_(std::move(f)), derivs_(std::move(derivs)), depth_(static_cast<int>(derivs_.size())) {}

DerivativeBundle DerivativeBundle::automatic(MellinFunction f, int depth) {
    if (depth < 0) throw DomainError("DerivativeBundle: depth must be nonnegative");
    if (f.kind() == MellinFunction::Kind::power_series) {
        // exact: the k-th derivative of sum a_j x^j has shifted coefficients
        std::vector<std::function<cplx(double)>> derivs;
        std::vector<cplx> cur = f.coeffs();
        double radius = f.radius();
        for (int k = 1; k <= depth; ++k) {
            std::vector<cplx> next;
            for (std::size_t j = 1; j < cur.size(); ++j) {
                next.push_back(cur[j] * static_cast<double>(j));
            }
            if (next.empty()) next.push_back(0.0);
            auto d = MellinFunction::from_power_series(next, radius);
            derivs.emplace_back([d](double x) { return d(x); });
            cur = d.coeffs();
        }
        return DerivativeBundle(std::move(f), std::move(derivs));
    }
    if (depth > 4) {
        throw MissingDerivativeError(
            "DerivativeBundle: finite-difference fallback stops at order 4");
    }
    DerivativeBundle b(std::move(f), {});
    b.depth_ = depth;
    b.fd_ = true;
    return b;
}

cplx DerivativeBundle::derivative(int k, double x) const {
    if (k == 0) return f_(x);
    if (k > depth_) throw MissingDerivativeError("DerivativeBundle: order exceeds bundle depth");
    if (!fd_) return derivs_[k - 1](x);

    // assemble x^k f^(k) from log-derivatives: delta^r f = sum_j S(r,j) x^j f^(j)
    double v = std::log(x);
    double h = kFdStep[k];
    if (f_.kind() == MellinFunction::Kind::sampled) {
        // sample-aligned steps: the interpolant is exact on nodes
        double hg = f_.grid().h_log();
        h = std::max(hg, std::ceil(h / hg) * hg);
    }
    StirlingTable s0(0.0, k);
    std::vector<cplx> xkfk(k + 1);  // xkfk[j] = x^j f^(j)(x)
    xkfk[0] = f_(x);
    for (int r = 1; r <= k; ++r) {
        cplx dr = log_diff(f_, r, v, h);
        for (int j = 1; j < r; ++j) dr -= s0(r, j) * xkfk[j];
        xkfk[r] = dr;  // S(r,r) = 1 and S(r,0) = 0 for r >= 1
    }
    return xkfk[k] / std::pow(x, k);
}

double DerivativeBundle::max_fd_deviation(const std::vector<double>& probes) const {
    if (derivs_.empty()) return 0.0;
    double worst = 0.0;
    for (double x : probes) {
        cplx fd = log_diff(f_, 1, std::log(x), kFdStep[1]) / x;  // f' = delta f / x
        cplx an = derivs_[0](x);
        worst = std::max(worst, std::abs(fd - an) / (std::abs(an) + 1e-12));
    }
    return worst;
}

cplx theta_derivative(const DerivativeBundle& bundle, int r, double c, double x) {
    if (r < 0) throw DomainError("theta_derivative: order must be nonnegative");
    if (!(x > 0.0)) throw DomainError("theta_derivative: x must be positive");
    if (r == 0) return bundle.f()(x);
    if (r > bundle.depth()) {
        throw MissingDerivativeError("theta_derivative: bundle depth below requested order");
    }
    StirlingTable table(c, r);
    cplx acc = table(r, 0) * bundle.f()(x);
    double xk = 1.0;
    for (int k = 1; k <= r; ++k) {
        xk *= x;
        acc += table(r, k) * xk * bundle.derivative(k, x);
    }
    return acc;
}

cplx hadamard_derivative(const DerivativeBundle& bundle, const FracOrder& order, double c,
                         double x, const QuadConfig& quad) {
    const int m = order.m;
    if (m > bundle.depth()) {
        throw MissingDerivativeError("hadamard_derivative: bundle depth below m = floor(alpha)+1");
    }
    auto theta_m = MellinFunction::from_rule(
        [&bundle, m, c](double u) { return theta_derivative(bundle, m, c, u); });
    theta_m.declare_support(bundle.f().support_log_lo(), bundle.f().support_log_hi());
    return hadamard_integral(theta_m, FracOrder(static_cast<double>(m) - order.alpha), c, x, quad);
}

OperatorOrderCheck hadamard_derivative_check(const DerivativeBundle& bundle,
                                             const FracOrder& order, double c, double x,
                                             const QuadConfig& quad) {
    OperatorOrderCheck out{};
    out.commuted = hadamard_derivative(bundle, order, c, x, quad);

    const int m = order.m;
    if (m > 4) {
        throw MissingDerivativeError(
            "hadamard_derivative_check: outer differencing stops at m = 4");
    }
    const double beta = static_cast<double>(m) - order.alpha;

    // frozen quadrature layout: panel and node counts fixed once, so the
    // quadrature error varies smoothly across the stencil and the outer
    // differences see only the integrand
    double cap = detail::t_cap_for(bundle.f(), x);
    std::vector<double> jn, jw, ln, lw;
    gauss_jacobi01(quad.gauss_jacobi_nodes * 2, beta - 1.0, jn, jw);
    gauss_legendre(48, ln, lw);
    double t_end = std::min(cap, 256.0);
    auto j_beta = [&](double xi) -> cplx {
        double first_hi = std::min(1.0, t_end);
        cplx acc = 0.0;
        double scale = std::pow(0.5 * first_hi, beta);
        for (std::size_t i = 0; i < jn.size(); ++i) {
            double t = 0.5 * first_hi * (1.0 + jn[i]);
            acc += jw[i] * std::exp(-c * t) * bundle.f()(std::max(xi * std::exp(-t), 1e-300));
        }
        acc *= scale;
        double lo = first_hi;
        while (lo < t_end) {
            double hi = std::min(2.0 * lo, t_end);
            double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            cplx p = 0.0;
            for (std::size_t i = 0; i < ln.size(); ++i) {
                double t = mid + half * ln[i];
                p += lw[i] * std::pow(t, beta - 1.0) * std::exp(-c * t) *
                     bundle.f()(std::max(xi * std::exp(-t), 1e-300));
            }
            acc += half * p;
            lo = hi;
        }
        return acc / gamma_fn(beta);
    };

    // outer Theta_c^m by log-space central differences on J^(m-alpha) f,
    // via Theta_c^m = sum_j C(m,j) c^(m-j) delta^j
    double h = m >= 3 ? 2e-3 : 1e-4;
    int wing = m >= 3 ? 2 : 1;
    std::vector<cplx> vals(2 * wing + 1);
    for (int i = -wing; i <= wing; ++i) vals[i + wing] = j_beta(x * std::exp(i * h));
    auto at = [&](int i) { return vals[i + wing]; };

    std::vector<cplx> delta(m + 1);
    delta[0] = at(0);
    if (m >= 1) delta[1] = (at(1) - at(-1)) / (2.0 * h);
    if (m >= 2) delta[2] = (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
    if (m >= 3) delta[3] = (at(2) - 2.0 * at(1) + 2.0 * at(-1) - at(-2)) / (2.0 * h * h * h);
    if (m >= 4) {
        delta[4] = (at(2) - 4.0 * at(1) + 6.0 * at(0) - 4.0 * at(-1) + at(-2)) / (h * h * h * h);
    }
    cplx acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        acc += binom * std::pow(c, m - j) * delta[j];
        binom *= static_cast<double>(m - j) / (j + 1.0);
    }
    out.definitional = acc;
    out.discrepancy =
        std::abs(out.definitional - out.commuted) / (std::abs(out.commuted) + 1e-300);
    return out;
}

cplx hadamard_derivative_series(const MellinFunction& f, const FracOrder& order, double c,
                                double x) {
    if (f.kind() != MellinFunction::Kind::power_series) {
        throw DomainError("hadamard_derivative_series: input must be a power series");
    }
    if (!(x > 0.0) || x > f.radius()) {
        throw DomainError("hadamard_derivative_series: x must lie in (0, radius]");
    }
    return detail::hadamard_series_sum(f.coeffs(), c, order.alpha, x);
}

StirlingSeriesResult stirling_series_derivative(const DerivativeBundle& bundle, double alpha,
                                                double c, double x, int truncation,
                                                StirlingVariant variant) {
    if (!(c > 0.0)) throw DomainError("stirling_series_derivative: c must be positive");
    if (truncation > bundle.depth()) {
        throw MissingDerivativeError("stirling_series_derivative: truncation exceeds bundle depth");
    }
    double expo = variant == StirlingVariant::derivative ? alpha : -alpha;
    StirlingSeriesResult out{};
    double xk = 1.0;
    cplx last = 0.0;
    for (int k = 0; k <= truncation; ++k) {
        last = stirling_function(c, expo, k) * xk * bundle.derivative(k, x);
        out.value += last;
        xk *= x;
        ++out.terms;
    }
    out.tail_proxy = std::abs(last);
    return out;
}

}  // namespace mfrac
