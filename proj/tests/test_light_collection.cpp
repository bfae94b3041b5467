#include <cmath>
#include <stdexcept>
#include <complex>

#include "doctest.h"
#include "ionnet/light_collection.hpp"
#include "ionnet/special_functions.hpp"
#include "test_support.hpp"

using namespace ionnet;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

FiberMode circular_plus(double waist = 1.0) {
    return FiberMode{waist, {kInvSqrt2, 0.0}, {0.0, -kInvSqrt2}};
}

FiberMode circular_minus(double waist = 1.0) {
    return FiberMode{waist, {kInvSqrt2, 0.0}, {0.0, kInvSqrt2}};
}

}  // namespace

TEST_CASE("exponential integral reference values") {
    // frozen from standard tables
    CHECK(expint_e1(0.5) == doctest::Approx(0.55977359477616081).epsilon(1e-10));
    CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552026).epsilon(1e-10));
    CHECK(expint_e1(2.0) == doctest::Approx(0.048900510708061120).epsilon(1e-10));
    CHECK(expint_e1(5.0) == doctest::Approx(0.0011482955912753257).epsilon(1e-10));
    CHECK(expint_e1(10.0) == doctest::Approx(4.1569689296853246e-06).epsilon(1e-10));
    CHECK_THROWS_AS(expint_e1(0.0), std::invalid_argument);
}

TEST_CASE("scaled and plain incomplete gamma agree") {
    for (double x : {0.3, 0.9, 1.2, 2.0, 4.0, 9.0, 25.0}) {
        const double plain = gamma_upper_minus1(x);
        const double scaled = gamma_upper_minus1_scaled(x) * std::exp(-x);
        CHECK(scaled == doctest::Approx(plain).epsilon(1e-9));
    }
    // asymptotically Gamma(-1,x) ~ e^{-x}/x^2
    const double x = 300.0;
    const double ratio = gamma_upper_minus1_scaled(x) * x * x;
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("reflected pi light is a radially polarized donut") {
    const double f = 0.7;
    for (double rho : {0.1, 0.9, 2.7}) {
        const FieldRP field = reflected_field(0, f, rho, 0.4);
        CHECK(std::abs(field.phi_component) == 0.0);
        const double denom = rho * rho + 4.0 * f * f;
        const double expected = 16.0 * f * f * rho / (denom * denom) *
                                std::sqrt(3.0 / (16.0 * std::numbers::pi));
        // polarization along -rho with the i prefactor
        CHECK(field.rho_component.real() == doctest::Approx(0.0));
        CHECK(-field.rho_component.imag() == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("reflected sigma light is azimuthal at rho = 2f and circular on axis") {
    const double f = 1.3;
    const FieldRP ring = reflected_field(+1, f, 2.0 * f, 1.0);
    CHECK(std::abs(ring.rho_component) <= 1e-15);
    CHECK(std::abs(ring.phi_component) > 0.0);

    for (int m : {+1, -1}) {
        const FieldRP axis = reflected_field(m, f, 0.0, 0.0);
        CHECK(std::abs(std::abs(axis.rho_component) - std::abs(axis.phi_component)) <=
              1e-15);
        // relative phase +-i distinguishes the handedness
        const std::complex<double> ratio = axis.phi_component / axis.rho_component;
        CHECK(ratio.real() == doctest::Approx(0.0));
        CHECK(ratio.imag() == doctest::Approx(m > 0 ? 1.0 : -1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(reflected_field(2, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pi transition light never couples into the fiber") {
    auto rng = test_support::seeded_rng(41);
    std::uniform_real_distribution<double> f_over_w(0.2, 3.0);
    std::uniform_real_distribution<double> radius(0.5, 10.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto [jx, jy] = test_support::random_qubit(rng);
        const Paraboloid mirror{f_over_w(rng),
                                trial % 2 == 0 ? radius(rng) : kInfiniteRadius};
        const FiberMode fiber{1.0, jx, jy};
        CHECK(fiber_overlap_numeric(0, mirror, fiber) < 1e-10);
    }
}

TEST_CASE("numeric sigma overlap reproduces the known working point") {
    const double overlap = fiber_overlap_numeric(
        +1, Paraboloid{0.536, kInfiniteRadius}, circular_plus());
    CHECK(overlap == doctest::Approx(0.49).epsilon(0.01));
}

TEST_CASE("analytic and numeric overlaps agree to 1e-6") {
    for (double f : {0.3, 0.536, 1.0, 2.0}) {
        for (double rho_max : {1.0, 3.0, kInfiniteRadius}) {
            const double analytic =
                sigma_coupling_analytic(f, circular_plus(), rho_max);
            const double numeric =
                fiber_overlap_numeric(+1, Paraboloid{f, rho_max}, circular_plus());
            CHECK(std::abs(analytic - numeric) <= 1e-6 * std::max(analytic, 1e-6));
        }
    }
}

TEST_CASE("sigma coupling polarization selectivity") {
    // orthogonal circular polarization is rejected entirely
    CHECK(sigma_coupling_analytic(0.5, circular_minus(), kInfiniteRadius, +1) == 0.0);
    CHECK(sigma_coupling_analytic(0.5, circular_plus(), kInfiniteRadius, -1) == 0.0);
    // matched handedness maximizes over the Jones sphere: linear gets half
    const double matched = sigma_coupling_analytic(0.5, circular_plus());
    const double linear =
        sigma_coupling_analytic(0.5, FiberMode{1.0, {1.0, 0.0}, {0.0, 0.0}});
    CHECK(linear == doctest::Approx(0.5 * matched).epsilon(1e-12));
}

TEST_CASE("sigma coupling edge geometries") {
    // vanishing mirror radius collects nothing
    CHECK(sigma_coupling_analytic(0.7, circular_plus(), 1e-6) <= 1e-10);
    // very large f/w stays finite and decays (overflow guard)
    const double far = sigma_coupling_analytic(10.0, circular_plus());
    CHECK(std::isfinite(far));
    CHECK(far < sigma_coupling_analytic(0.54, circular_plus()));
    const double extreme = sigma_coupling_analytic(50.0, circular_plus());
    CHECK(std::isfinite(extreme));
    CHECK(extreme < far);
    // shrinking waist against fixed focus kills the overlap
    CHECK(fiber_overlap_numeric(+1, Paraboloid{1.0, kInfiniteRadius},
                                circular_plus(0.02)) < 1e-3);
}

TEST_CASE("focus optimum against a coarse-grid oracle") {
    const FocusOptimum best = optimize_focus(circular_plus());
    CHECK(best.f_star == doctest::Approx(0.54).epsilon(0.02));
    CHECK(best.p_star == doctest::Approx(0.49).epsilon(0.02));

    double oracle_best = 0.0, oracle_arg = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double x = 0.05 + (5.0 - 0.05) * i / 9999.0;
        const double v = sigma_coupling_analytic(x, circular_plus());
        if (v > oracle_best) {
            oracle_best = v;
            oracle_arg = x;
        }
    }
    CHECK(best.p_star == doctest::Approx(oracle_best).epsilon(1e-6));
    CHECK(best.f_star == doctest::Approx(oracle_arg).epsilon(1e-3));
}

TEST_CASE("coupling grows with the mirror radius") {
    double previous = 0.0;
    for (double rho_max : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const FocusOptimum best = optimize_focus(circular_plus(), rho_max);
        CHECK(best.p_star >= previous - 1e-12);
        previous = best.p_star;
    }
    CHECK(optimize_focus(circular_plus(), kInfiniteRadius).p_star >= previous - 1e-12);
}

TEST_CASE("mirror gate coincidence probability") {
    CHECK(mirror_gate_coincidence(1.0, 0.25) ==
          doctest::Approx(0.25 / 64.0).epsilon(1e-12));
    CHECK(mirror_gate_coincidence(0.0, 0.25) == 0.0);
    CHECK(mirror_gate_coincidence(0.8, 0.25) ==
          doctest::Approx(4.0 * mirror_gate_coincidence(0.4, 0.25)).epsilon(1e-12));
}

TEST_CASE("cavity collection factors") {
    const CavityCollection even =
        cavity_collection({1.0, 1.0, 1.0, 0.9, 1.0});  // C = 1, kappa = Gamma
    CHECK(even.cooperativity == doctest::Approx(1.0));
    CHECK(even.p_c == doctest::Approx(0.9 * (2.0 / 3.0) * (2.0 / 3.0)).epsilon(1e-12));

    const CavityCollection decoupled = cavity_collection({0.0, 1.0, 1.0, 0.9, 1.0});
    CHECK(decoupled.p_c == 0.0);

    // perfect outcoupling, fast cavity, huge cooperativity
    const CavityCollection ideal = cavity_collection({1e5, 1e6, 1.0, 0.2, 0.2});
    CHECK(ideal.p_c == doctest::Approx(1.0).epsilon(1e-3));

    CHECK_THROWS_AS(cavity_collection({1.0, 1.0, 1.0, 0.5, 0.4}),
                    std::invalid_argument);
}

TEST_CASE("collection efficiency rises with cooperativity and cavity decay") {
    // sweep C at fixed kappa (g covaries), then kappa at fixed C
    double previous = 0.0;
    for (double coop : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double g = std::sqrt(coop);
        const double p = cavity_collection({g, 1.0, 1.0, 1.0, 1.0}).p_c;
        CHECK(p > previous);
        previous = p;
    }
    previous = 0.0;
    for (double kappa : {0.5, 1.0, 2.0, 4.0}) {
        const double g = std::sqrt(kappa);  // keeps C = 1
        const double p = cavity_collection({g, kappa, 1.0, 1.0, 1.0}).p_c;
        CHECK(p > previous);
        previous = p;
    }
}

TEST_CASE("efficiencies stay inside the unit interval") {
    auto rng = test_support::seeded_rng(42);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double p =
            sigma_coupling_analytic(u(rng), circular_plus(), u(rng) * 3.0);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        const double t = u(rng);
        const double l = t + u(rng);
        const double pc = cavity_collection({u(rng), u(rng), u(rng), t, l}).p_c;
        CHECK(pc >= 0.0);
        CHECK(pc <= 1.0);
    }
}
