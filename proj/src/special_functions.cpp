#include "ionnet/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ionnet {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

void require_positive(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("argument must be positive");
}

double e1_series(double x) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))) for x >= 1,
// evaluated bottom-up with a fixed depth that saturates double precision.
double e1_cf_scaled(double x) {
    double cf = 0.0;
    for (int k = 120; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        cf = kk * kk / (x + 2.0 * kk + 1.0 - cf);
    }
    return 1.0 / (x + 1.0 - cf);
}

// Gamma(-1, x) = e^{-x} x^{-1} / (x + 2 - 1*2/(x + 4 - 2*3/(x + 6 - ...))).
double gamma_m1_cf_scaled(double x) {
    double cf = 0.0;
    for (int k = 120; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        cf = kk * (kk + 1.0) / (x + 2.0 * (kk + 1.0) - cf);
    }
    return 1.0 / (x * (x + 2.0 - cf));
}

}  // namespace

double expint_e1(double x) {
    require_positive(x);
    if (x <= 1.0) return e1_series(x);
    return std::exp(-x) * e1_cf_scaled(x);
}

double expint_e1_scaled(double x) {
    require_positive(x);
    if (x <= 1.0) return std::exp(x) * e1_series(x);
    return e1_cf_scaled(x);
}

double gamma_upper_minus1(double x) {
    require_positive(x);
    return std::exp(-x) / x - expint_e1(x);
}

double gamma_upper_minus1_scaled(double x) {
    require_positive(x);
    if (x >= 2.0) return gamma_m1_cf_scaled(x);
    return 1.0 / x - expint_e1_scaled(x);
}

}  // namespace ionnet
