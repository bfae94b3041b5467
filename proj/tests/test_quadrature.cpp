#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ionnet/quadrature.hpp"

using namespace ionnet;

TEST_CASE("two-point Laguerre rule matches the analytic nodes and weights") {
    const GaussLaguerreRule& rule = gauss_laguerre(2);
    CHECK(rule.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rule.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(rule.weights[0] == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
    CHECK(rule.weights[1] == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-14));
}

TEST_CASE("Laguerre rules integrate monomials exactly") {
    for (int n : {8, 32, 128, 512}) {
        const GaussLaguerreRule& rule = gauss_laguerre(n);
        double wsum = 0.0, first = 0.0, fifth = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            wsum += rule.weights[i];
            first += rule.weights[i] * rule.nodes[i];
            fifth += rule.weights[i] * std::pow(rule.nodes[i], 5);
        }
        CHECK(std::abs(wsum - 1.0) <= 1e-13);
        CHECK(std::abs(first - 1.0) <= 1e-12);
        CHECK(std::abs(fifth - 120.0) <= 1e-9);
    }
}

TEST_CASE("exp-weighted integration handles damped cosines") {
    // int_0^inf cos(w x) e^-x dx = 1/(1+w^2)
    for (double w : {0.3, 2.0, 8.0}) {
        const double value =
            integrate_exp_weighted([w](double x) { return std::cos(w * x); });
        CHECK(value == doctest::Approx(1.0 / (1.0 + w * w)).epsilon(1e-7));
    }
}

TEST_CASE("adaptive Simpson on reference integrals") {
    const double gaussian = integrate_adaptive(
        [](double x) { return std::exp(-x * x); }, 0.0, 8.0, 1e-12, 1e-16);
    CHECK(gaussian == doctest::Approx(std::sqrt(std::acos(-1.0)) / 2.0).epsilon(1e-11));
    const double log_int =
        integrate_adaptive([](double x) { return std::log(x + 1.0); }, 0.0, 1.0);
    CHECK(log_int == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-10));
    CHECK_THROWS_AS(gauss_laguerre(0), std::invalid_argument);
}
