#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ionnet {

// Adaptive Simpson on [a,b]. Stops when the local error estimate is below
// rel_tol * |whole| + abs_tol; throws on max_depth exhaustion.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14,
                          int max_depth = 60);

std::complex<double> integrate_adaptive_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 60);

struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // weights for the natural e^{-x} measure
};

// n-point Gauss-Laguerre rule (Golub-Welsch); rules are cached per n.
const GaussLaguerreRule& gauss_laguerre(int n);

// Integrates f against e^{-x} on [0, inf) by node doubling from 16 points
// until successive estimates agree to rel_tol, up to 1024 nodes.
double integrate_exp_weighted(const std::function<double(double)>& f,
                              double rel_tol = 1e-8);

}  // namespace ionnet
