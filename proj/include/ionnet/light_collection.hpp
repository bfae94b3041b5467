#pragma once

#include <complex>
#include <limits>

namespace ionnet {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// Parabolic mirror z = rho^2/(4f) - f with the emitter at the focus and the
// quantization axis along the symmetry axis.
struct Paraboloid {
    double focal_length;
    double rho_max = kInfiniteRadius;
};

// Single-mode fiber: Gaussian waist and a normalized Jones vector
// (jones_x, jones_y) in the collimated-beam frame.
struct FiberMode {
    double waist;
    std::complex<double> jones_x;
    std::complex<double> jones_y;
};

struct FieldRP {
    std::complex<double> rho_component;
    std::complex<double> phi_component;
};

// Collimated-beam field after reflection for the dipole transition m in
// {-1,0,+1}. m=0 is the radially polarized donut mode; m=+-1 is circular on
// axis and purely azimuthal at rho = 2f.
FieldRP reflected_field(int m, double focal_length, double rho, double phi);

// Overlap of the reflected transition field with the fiber mode, evaluated
// as the 2D quotient integral by adaptive quadrature over rho with an exact
// periodic rule in phi. Result in [0,1]; rel_tol is the quadrature target.
double fiber_overlap_numeric(int m, const Paraboloid& mirror, const FiberMode& fiber,
                             double rel_tol = 1e-8);

// Closed-form sigma-transition coupling
//   P = (3/2)(2f/w)^6 |jx ± i jy|^2 e^{2(2f/w)^2}
//       |Gamma(-1,4f^2/w^2) - Gamma(-1,(rho_max^2+4f^2)/w^2)|^2
// with the sign following m = ±1; evaluated in exponentially scaled form so
// large f/w cannot overflow.
double sigma_coupling_analytic(double focal_length, const FiberMode& fiber,
                               double rho_max = kInfiniteRadius, int m = +1);

struct FocusOptimum {
    double f_star;  // optimal focal length (same unit as the waist)
    double p_star;  // coupling there
};

// Golden-section maximum of the analytic coupling over f/w in [0.05, 5].
FocusOptimum optimize_focus(const FiberMode& fiber, double rho_max = kInfiniteRadius,
                            int m = +1);

// Coincidence probability for the mirror-based gate after polarization
// erasure: p_B (eta/8)^2 (coupling, Clebsch-Gordan and erasure each cost a
// factor 1/2 per photon).
double mirror_gate_coincidence(double eta, double p_b);

struct CavityParams {
    double g;        // coherent coupling, rad/s
    double kappa;    // cavity decay, rad/s
    double gamma;    // free-space emission rate, rad/s
    double t_out;    // outcoupler transmission fraction
    double l_total;  // total cavity loss fraction, >= t_out
};

struct CavityCollection {
    double cooperativity;      // C = g^2 / (kappa gamma)
    double p_c;                // collection efficiency
    double outcoupling_factor; // T_l / L
    double rate_factor;        // 2 kappa / (2 kappa + gamma)
    double purcell_factor;     // 2C / (1 + 2C)
};

CavityCollection cavity_collection(const CavityParams& params);

}  // namespace ionnet
