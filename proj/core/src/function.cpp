#include "mfrac/function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "mfrac/errors.hpp"

namespace mfrac {

MellinFunction MellinFunction::from_rule(std::function<cplx(double)> f) {
    MellinFunction m;
    m.kind_ = Kind::rule;
    m.rule_ = std::move(f);
    return m;
}

MellinFunction MellinFunction::from_power_series(std::vector<cplx> coeffs, double radius) {
    if (!(radius > 0.0)) throw DomainError("power series: radius must be positive");
    MellinFunction m;
    m.kind_ = Kind::power_series;
    m.coeffs_ = std::move(coeffs);
    m.radius_ = radius;
    return m;
}

MellinFunction MellinFunction::from_samples(LogGrid grid, std::vector<cplx> values,
                                            int interp_order, Extend below, Extend above) {
    if (values.size() != grid.size()) throw DomainError("sampled function: size mismatch");
    if (interp_order != 1 && interp_order != 3) throw DomainError("sampled function: interp order must be 1 or 3");
    MellinFunction m;
    m.kind_ = Kind::sampled;
    m.grid_ = std::make_shared<LogGrid>(std::move(grid));
    m.values_ = std::move(values);
    m.interp_order_ = interp_order;
    m.below_ = below;
    m.above_ = above;
    m.supp_lo_ = m.grid_->log_min();
    m.supp_hi_ = m.grid_->log_max();
    if (below == Extend::error) m.supp_lo_ = -std::numeric_limits<double>::infinity();
    if (above == Extend::error) m.supp_hi_ = std::numeric_limits<double>::infinity();
    return m;
}

cplx MellinFunction::operator()(double x) const {
    if (!(x > 0.0)) throw DomainError("MellinFunction: argument must be positive");
    switch (kind_) {
        case Kind::rule:
            return rule_(x);
        case Kind::power_series: {
            if (x > radius_) throw DomainError("power series: evaluation beyond radius");
            cplx acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
            return acc;
        }
        case Kind::sampled: {
            const LogGrid& g = *grid_;
            double u = std::log(x);
            if (u < g.log_min() - 1e-12) {
                if (below_ == Extend::zero) return 0.0;
                throw DomainError("sampled function: evaluation below grid span");
            }
            if (u > g.log_max() + 1e-12) {
                if (above_ == Extend::zero) return 0.0;
                throw DomainError("sampled function: evaluation above grid span");
            }
            double s = (u - g.log_min()) / g.h_log();
            auto n = static_cast<std::ptrdiff_t>(g.size());
            auto i = static_cast<std::ptrdiff_t>(std::floor(s));
            i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
            double f = s - static_cast<double>(i);
            if (interp_order_ == 1 || n < 4) {
                return values_[i] * (1.0 - f) + values_[i + 1] * f;
            }
            // local cubic Lagrange on the 4 nearest nodes
            auto j = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
            double w = s - static_cast<double>(j);  // in [0,3]
            cplx acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                double lk = 1.0;
                for (int l = 0; l < 4; ++l) {
                    if (l != k) lk *= (w - l) / static_cast<double>(k - l);
                }
                acc += lk * values_[j + k];
            }
            return acc;
        }
    }
    return 0.0;
}

const std::vector<cplx>& MellinFunction::coeffs() const {
    if (kind_ != Kind::power_series) throw DomainError("MellinFunction: not a power series");
    return coeffs_;
}

double MellinFunction::radius() const {
    if (kind_ != Kind::power_series) throw DomainError("MellinFunction: not a power series");
    return radius_;
}

const LogGrid& MellinFunction::grid() const {
    if (kind_ != Kind::sampled) throw DomainError("MellinFunction: not sampled");
    return *grid_;
}

const std::vector<cplx>& MellinFunction::samples() const {
    if (kind_ != Kind::sampled) throw DomainError("MellinFunction: not sampled");
    return values_;
}

double discrete_xc_norm(const LogGrid& grid, const std::vector<cplx>& values, double c) {
    if (values.size() != grid.size()) throw DomainError("discrete_xc_norm: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
        acc += w * std::abs(values[i]) * std::pow(grid[i], c);
    }
    return acc * grid.h_log();
}

namespace builtin {

MellinFunction power(double b) {
    return MellinFunction::from_rule([b](double x) -> cplx { return std::pow(x, b); });
}

MellinFunction log_k(int k) {
    if (k < 0) throw DomainError("log_k: k must be nonnegative");
    return MellinFunction::from_rule([k](double x) -> cplx { return std::pow(std::log(x), k); });
}

MellinFunction exp_b(double b) {
    return MellinFunction::from_rule([b](double x) -> cplx { return std::exp(b * x); });
}

MellinFunction exp_neg() {
    auto f = MellinFunction::from_rule([](double x) -> cplx { return std::exp(-x); });
    f.declare_support(-std::numeric_limits<double>::infinity(), 40.0);
    return f;
}

double sinc_value(double x) {
    double px = std::numbers::pi * x;
    if (std::abs(px) < 1e-8) return 1.0 - px * px / 6.0;
    return std::sin(px) / px;
}

MellinFunction sinc() {
    return MellinFunction::from_rule([](double x) -> cplx { return sinc_value(x); });
}

MellinFunction sinc_deriv(int s) {
    if (s < 0) throw DomainError("sinc_deriv: order must be nonnegative");
    if (s == 0) return sinc();
    // differentiated Taylor series; A(s,k) = prod_{v=0}^{s-1} (2k - v)
    return MellinFunction::from_rule([s](double x) -> cplx {
        double acc = 0.0, px2 = std::numbers::pi * std::numbers::pi * x * x;
        // sum over k of (-1)^(k+s) pi^(2k+2s) / (2k+2s+1)! A(s,k+s) x^(2k+s)
        double pref = std::pow(std::numbers::pi, 2 * s) * std::pow(x, s);
        double fact = 1.0;
        for (int i = 2; i <= 2 * s + 1; ++i) fact *= i;
        double term_base = pref / fact;
        for (int k = 0; k < 80; ++k) {
            double a = 1.0;
            for (int v = 0; v < s; ++v) a *= 2.0 * (k + s) - v;
            double term = ((k + s) % 2 ? -1.0 : 1.0) * term_base * a;
            acc += term;
            if (std::abs(term) < 1e-17 * (std::abs(acc) + 1.0)) break;
            term_base *= px2 / ((2.0 * k + 2 * s + 2) * (2.0 * k + 2 * s + 3));
        }
        return acc;
    });
}

MellinFunction chi01() {
    // midpoint value at the jump keeps trapezoid rules second order there
    auto f = MellinFunction::from_rule([](double x) -> cplx {
        if (x < 1.0) return 1.0;
        if (x == 1.0) return 0.5;
        return 0.0;
    });
    f.declare_support(-std::numeric_limits<double>::infinity(), 0.0);
    return f;
}

MellinFunction log_bump(double center_log, double width_log) {
    if (!(width_log > 0.0)) throw DomainError("log_bump: width must be positive");
    auto f = MellinFunction::from_rule([center_log, width_log](double x) -> cplx {
        double s = (std::log(x) - center_log) / width_log;
        if (std::abs(s) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - s * s));
    });
    f.declare_support(center_log - width_log, center_log + width_log);
    return f;
}

MellinFunction power_series_exp(double b, int terms) {
    std::vector<cplx> a(terms);
    double c = 1.0;
    for (int k = 0; k < terms; ++k) {
        a[k] = c;
        c *= b / (k + 1.0);
    }
    return MellinFunction::from_power_series(std::move(a));
}

MellinFunction power_series_sinc(int terms) {
    std::vector<cplx> a(2 * terms, 0.0);
    double c = 1.0;  // pi^(2k) / (2k+1)!
    for (int k = 0; k < terms; ++k) {
        a[2 * k] = (k % 2 ? -c : c);
        c *= std::numbers::pi * std::numbers::pi / ((2.0 * k + 2) * (2.0 * k + 3));
    }
    return MellinFunction::from_power_series(std::move(a));
}

MellinFunction power_series_power(double b) {
    double r = std::round(b);
    if (std::abs(b - r) > 1e-12 || r < 0) throw DomainError("power_series_power: b must be a nonnegative integer");
    std::vector<cplx> a(static_cast<std::size_t>(r) + 1, 0.0);
    a.back() = 1.0;
    return MellinFunction::from_power_series(std::move(a));
}

namespace {

std::map<std::string, double> parse_params(const std::string& s) {
    std::map<std::string, double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("builtin parameter must be key=value: " + item);
        out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return out;
}

}  // namespace

MellinFunction parse(const std::string& desc) {
    std::string name = desc;
    std::map<std::string, double> params;
    if (auto colon = desc.find(':'); colon != std::string::npos) {
        name = desc.substr(0, colon);
        params = parse_params(desc.substr(colon + 1));
    }
    auto get = [&](const std::string& key, double dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    if (name == "power") return power(get("b", 1.0));
    if (name == "log_k") return log_k(static_cast<int>(get("k", 1.0)));
    if (name == "exp") return exp_b(get("b", 1.0));
    if (name == "exp_neg") return exp_neg();
    if (name == "sinc") return sinc();
    if (name == "sinc_deriv") return sinc_deriv(static_cast<int>(get("s", 1.0)));
    if (name == "chi01") return chi01();
    if (name == "bump") return log_bump(get("center", 0.0), get("width", 1.0));
    throw DomainError("unknown builtin function: " + name);
}

}  // namespace builtin
}  // namespace mfrac
