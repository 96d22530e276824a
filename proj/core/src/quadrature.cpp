#include "mfrac/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "mfrac/errors.hpp"
#include "mfrac/gamma.hpp"

namespace mfrac {
namespace {

struct Rule {
    std::vector<double> nodes, weights;
};

// Golub-Welsch: eigen-decompose the Jacobi matrix of the orthogonal family.
Rule golub_welsch(int n, double a, double b, double mu0) {
    Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag(k) = (b - a) / (a + b + 2.0);
        } else {
            double denom = (2.0 * k + a + b) * (2.0 * k + a + b + 2.0);
            diag(k) = (b * b - a * a) / denom;
        }
        if (k + 1 < n) {
            int m = k + 1;
            double num = 4.0 * m * (m + a) * (m + b) * (m + a + b);
            double den = (2.0 * m + a + b) * (2.0 * m + a + b);
            den *= (2.0 * m + a + b + 1.0) * (2.0 * m + a + b - 1.0);
            if (m == 1 && a + b == 0.0) {
                // 0/0 form of the general expression
                num = 4.0 * (1.0 + a) * (1.0 + b);
                den = (2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b);
            }
            sub(k) = std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v0 * v0;
    }
    return r;
}

const Rule& cached_rule(int n, double a, double b) {
    static std::mutex mtx;
    static std::map<std::tuple<int, double, double>, Rule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(n, a, b);
    auto it = cache.find(key);
    if (it == cache.end()) {
        // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx
        double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                              log_gamma(b + 1.0) - log_gamma(a + b + 2.0));
        it = cache.emplace(key, golub_welsch(n, a, b, mu0)).first;
    }
    return it->second;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    const Rule& r = cached_rule(n, 0.0, 0.0);
    nodes = r.nodes;
    weights = r.weights;
}

void gauss_jacobi01(int n, double beta, std::vector<double>& nodes, std::vector<double>& weights) {
    if (!(beta > -1.0)) throw DomainError("gauss_jacobi01: beta must exceed -1");
    const Rule& r = cached_rule(n, 0.0, beta);
    nodes = r.nodes;
    weights = r.weights;
}

std::complex<double> refine_trapezoid(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, const QuadConfig& cfg, double h0,
                                      double abs_floor) {
    if (!(b > a)) return {0.0, 0.0};
    std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil((b - a) / h0)));
    double h = (b - a) / static_cast<double>(n);
    std::complex<double> sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
    std::complex<double> prev = sum * h;
    for (int level = 0; level < cfg.max_levels; ++level) {
        if (2 * n > cfg.max_points) {
            throw NonConvergentError("refine_trapezoid: point budget exhausted before tolerance");
        }
        // add midpoints of the current mesh
        for (std::size_t i = 0; i < n; ++i) sum += f(a + h * (static_cast<double>(i) + 0.5));
        n *= 2;
        h *= 0.5;
        std::complex<double> cur = sum * h;
        double tol = std::max(cfg.rel_tol * std::abs(cur), abs_floor);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw NonConvergentError("refine_trapezoid: tolerance not reached in max_levels");
}

HalfLineResult weighted_halfline_quad(double alpha, double mu,
                                      const std::function<std::complex<double>(double)>& g,
                                      const QuadConfig& cfg, double t_cap, bool absolute,
                                      double t_soft_cap, double t_start) {
    if (!(alpha > 0.0)) throw DomainError("weighted_halfline_quad: alpha must be positive");
    t_soft_cap = std::min(t_soft_cap, 0x1p40);
    if (t_start < 0.0) t_start = 0.0;
    HalfLineResult out;

    auto eval = [&](double t) -> std::complex<double> {
        std::complex<double> v = g(t);
        return absolute ? std::complex<double>(std::abs(v), 0.0) : v;
    };

    // Integral over one panel at a given refinement level. The first panel
    // carries the t^(alpha-1) weight in its Gauss-Jacobi rule; later panels
    // fold the (now smooth) weight into the integrand.
    auto first_panel = [&](double hi, int level) {
        int n = cfg.gauss_jacobi_nodes << level;
        std::vector<double> xs, ws;
        gauss_jacobi01(n, alpha - 1.0, xs, ws);
        // t = hi (1+xi)/2, t^(alpha-1) dt = (hi/2)^alpha (1+xi)^(alpha-1) dxi
        double scale = std::pow(0.5 * hi, alpha);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = 0.5 * hi * (1.0 + xs[i]);
            acc += ws[i] * std::exp(-mu * t) * eval(t);
        }
        return scale * acc;
    };
    auto smooth_panel = [&](double lo, double hi, int level) {
        int n = 24 << level;
        std::vector<double> xs, ws;
        gauss_legendre(n, xs, ws);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        std::complex<double> acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = mid + half * xs[i];
            acc += ws[i] * std::pow(t, alpha - 1.0) * std::exp(-mu * t) * eval(t);
        }
        return half * acc;
    };

    auto integrate_level = [&](int level, HalfLineResult& res) -> std::complex<double> {
        res.panel_contributions.clear();
        std::complex<double> total = 0.0;
        double lo;
        if (t_start > 0.0) {
            // support edge: the weight is smooth from t_start on, start with
            // a plain panel there instead of the Jacobi one
            double first_hi = std::min(std::max(2.0 * t_start, t_start + 1.0), t_cap);
            if (first_hi > t_start) total = smooth_panel(t_start, first_hi, level);
            lo = first_hi;
        } else {
            double first_hi = std::min(1.0, t_cap);
            total = first_panel(first_hi, level);
            lo = first_hi;
        }
        res.panel_contributions.push_back(std::abs(total));
        int stalled = 0, tiny = 0, grown = 0;
        while (lo < t_cap) {
            double hi = std::min(2.0 * lo, t_cap);
            std::complex<double> c = smooth_panel(lo, hi, level);
            double mag = std::abs(c);
            double prev_total = std::abs(total) + 1e-300;
            total += c;
            res.panel_contributions.push_back(mag);
            std::size_t np = res.panel_contributions.size();
            // growth-factor test on partial sums, plus a stalled-decay test
            // that catches logarithmic divergence the factor test misses
            if (std::abs(total) > cfg.growth_threshold * prev_total && mag > 1e-14) {
                if (++grown >= 5) {
                    res.status = HalfLineResult::Status::divergent;
                    res.note = "partial sums grow by more than growth_threshold";
                    res.value = total;
                    return total;
                }
            } else {
                grown = 0;
            }
            if (np >= 2 && mag >= cfg.decay_min * res.panel_contributions[np - 2] &&
                mag > 1e-13 * (std::abs(total) + 1.0)) {
                if (++stalled >= 5) {
                    res.status = HalfLineResult::Status::divergent;
                    res.note = "panel contributions fail to decay";
                    res.value = total;
                    return total;
                }
            } else {
                stalled = 0;
            }
            if (mag <= 1e-4 * cfg.rel_tol * (std::abs(total) + 1e-300)) {
                if (++tiny >= 2) break;
            } else {
                tiny = 0;
            }
            lo = hi;
            if (hi >= t_soft_cap) {
                std::size_t m = res.panel_contributions.size();
                double r = m >= 2 ? res.panel_contributions[m - 1] /
                                        (res.panel_contributions[m - 2] + 1e-300)
                                  : 1.0;
                if (r < cfg.decay_min) {
                    // slowly but geometrically decaying contributions: accept
                    // with an extrapolated tail instead of running forever
                    res.tail_estimate = res.panel_contributions[m - 1] * r / (1.0 - r);
                    res.status = HalfLineResult::Status::converged;
                    res.note = "range cap reached, tail extrapolated";
                    res.value = absolute ? total + res.tail_estimate : total;
                    return res.value;
                }
                res.status = HalfLineResult::Status::non_convergent;
                res.note = "panel extension exceeded range cap";
                res.value = total;
                return total;
            }
        }
        // geometric tail extrapolation from the measured decay ratio
        std::size_t np = res.panel_contributions.size();
        if (lo < t_cap && np >= 2) {
            double r = res.panel_contributions[np - 1] / (res.panel_contributions[np - 2] + 1e-300);
            if (r < 1.0) res.tail_estimate = res.panel_contributions[np - 1] * r / (1.0 - r);
        }
        res.status = HalfLineResult::Status::converged;
        res.value = total;
        return total;
    };

    HalfLineResult lvl;
    std::complex<double> prev = integrate_level(0, lvl);
    if (lvl.status != HalfLineResult::Status::converged) return lvl;
    for (int level = 1; level <= 4; ++level) {
        HalfLineResult cur_res;
        std::complex<double> cur = integrate_level(level, cur_res);
        if (cur_res.status != HalfLineResult::Status::converged) return cur_res;
        double scale = std::abs(cur) + 1e-300;
        if (absolute) {
            // diagnostic mode: the trace decides the classification, one
            // node doubling is enough for the reported value
            if (cur_res.note.empty()) cur_res.note = "diagnostic value";
            return cur_res;
        }
        if (std::abs(cur - prev) <= cfg.rel_tol * scale) {
            cur_res.note = "converged";
            return cur_res;
        }
        prev = cur;
        lvl = cur_res;
    }
    lvl.status = HalfLineResult::Status::non_convergent;
    lvl.note = "node doubling did not stabilize";
    return lvl;
}

}  // namespace mfrac
