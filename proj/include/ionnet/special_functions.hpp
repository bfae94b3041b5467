#pragma once

namespace ionnet {

// Exponential integral E1(x) for x > 0. Power series below 1, continued
// fraction above; relative error <= 1e-10 over the full range.
double expint_e1(double x);

// e^x E1(x), stable for large x (no underflow in the continued fraction).
double expint_e1_scaled(double x);

// Upper incomplete gamma of order -1: Gamma(-1, x) = e^{-x}/x - E1(x).
double gamma_upper_minus1(double x);

// e^x Gamma(-1, x); evaluated by a dedicated continued fraction for x >= 2
// to dodge the cancellation in 1/x - e^x E1(x).
double gamma_upper_minus1_scaled(double x);

}  // namespace ionnet
