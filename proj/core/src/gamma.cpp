#include "mfrac/gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace mfrac {
namespace {

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

template <typename T>
T lanczos_positive(T z) {
    // Valid for Re(z) > 0.5; callers reflect otherwise.
    z -= T(1);
    T acc = T(kLanczos[0]);
    for (int i = 1; i < 9; ++i) acc += T(kLanczos[i]) / (z + T(i));
    T t = z + T(kLanczosG) + T(0.5);
    using std::exp;
    using std::pow;
    using std::sqrt;
    return sqrt(T(2.0 * std::numbers::pi)) * pow(t, z + T(0.5)) * exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (x == std::floor(x) && x <= 0.0) return std::numeric_limits<double>::infinity();
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    return lanczos_positive(x);
}

double log_gamma(double x) {
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    if (x < 0.5) return std::log(gamma_fn(x));
    double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

std::complex<double> gamma_fn(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 0.0) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    if (z.real() < 0.5) {
        const std::complex<double> pi(std::numbers::pi, 0.0);
        return pi / (std::sin(pi * z) * gamma_fn(std::complex<double>(1.0, 0.0) - z));
    }
    return lanczos_positive(z);
}

}  // namespace mfrac
