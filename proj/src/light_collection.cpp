#include "ionnet/light_collection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ionnet/quadrature.hpp"
#include "ionnet/special_functions.hpp"

namespace ionnet {

namespace {

const double kDipolePrefactor = std::sqrt(3.0 / (16.0 * std::numbers::pi));
constexpr std::complex<double> kI{0.0, 1.0};
constexpr int kPhiSamples = 32;  // exact for the low-order trig integrands

void validate_fiber(const FiberMode& fiber) {
    if (!(fiber.waist > 0.0)) throw std::invalid_argument("fiber waist must be positive");
    const double n = std::norm(fiber.jones_x) + std::norm(fiber.jones_y);
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument("Jones vector must be normalized");
}

void validate_mirror(const Paraboloid& mirror) {
    if (!(mirror.focal_length > 0.0))
        throw std::invalid_argument("focal length must be positive");
    if (!(mirror.rho_max > 0.0))
        throw std::invalid_argument("rho_max must be positive");
}

std::complex<double> fiber_component_rho(const FiberMode& fiber, double rho,
                                         double phi) {
    const double envelope = std::exp(-(rho / fiber.waist) * (rho / fiber.waist));
    return envelope * (fiber.jones_x * std::cos(phi) + fiber.jones_y * std::sin(phi));
}

std::complex<double> fiber_component_phi(const FiberMode& fiber, double rho,
                                         double phi) {
    const double envelope = std::exp(-(rho / fiber.waist) * (rho / fiber.waist));
    return envelope * (-fiber.jones_x * std::sin(phi) + fiber.jones_y * std::cos(phi));
}

// phi integral over one period; the trapezoid rule is exact here because the
// integrands are trigonometric polynomials of low degree
template <typename F>
std::complex<double> phi_integral(const F& f) {
    std::complex<double> sum{};
    for (int k = 0; k < kPhiSamples; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / kPhiSamples;
        sum += f(phi);
    }
    return sum * (2.0 * std::numbers::pi / kPhiSamples);
}

// radial integral with an optional map to [0, inf)
double radial_integral(const std::function<double(double)>& f, double upper,
                       double scale, double rel_tol, double abs_floor) {
    if (std::isinf(upper)) {
        const auto mapped = [&](double t) {
            const double rho = scale * t / (1.0 - t);
            const double jac = scale / ((1.0 - t) * (1.0 - t));
            return f(rho) * jac;
        };
        return integrate_adaptive(mapped, 0.0, 1.0 - 1e-9, rel_tol, abs_floor);
    }
    return integrate_adaptive(f, 0.0, upper, rel_tol, abs_floor);
}

std::complex<double> radial_integral_complex(
    const std::function<std::complex<double>(double)>& f, double upper, double scale,
    double rel_tol, double abs_floor) {
    if (std::isinf(upper)) {
        const auto mapped = [&](double t) {
            const double rho = scale * t / (1.0 - t);
            const double jac = scale / ((1.0 - t) * (1.0 - t));
            return f(rho) * jac;
        };
        return integrate_adaptive_complex(mapped, 0.0, 1.0 - 1e-9, rel_tol, abs_floor);
    }
    return integrate_adaptive_complex(f, 0.0, upper, rel_tol, abs_floor);
}

}  // namespace

FieldRP reflected_field(int m, double focal_length, double rho, double phi) {
    if (m < -1 || m > 1)
        throw std::invalid_argument("reflected_field: |m| must be <= 1");
    if (!(focal_length > 0.0))
        throw std::invalid_argument("reflected_field: focal length must be positive");
    if (rho < 0.0) throw std::invalid_argument("reflected_field: rho must be >= 0");

    const double f = focal_length;
    const double denom = rho * rho + 4.0 * f * f;
    const std::complex<double> base = kI * (4.0 * f / denom) * kDipolePrefactor;
    if (m == 0) {
        return FieldRP{-base * (4.0 * f * rho / denom), {}};
    }
    const double sign = m > 0 ? 1.0 : -1.0;
    const std::complex<double> pref =
        sign * base * std::polar(1.0, sign * phi);
    return FieldRP{pref * (-(rho * rho - 4.0 * f * f) / denom),
                   pref * (sign * kI)};
}

double fiber_overlap_numeric(int m, const Paraboloid& mirror, const FiberMode& fiber,
                             double rel_tol) {
    if (m < -1 || m > 1) throw std::invalid_argument("fiber overlap: |m| must be <= 1");
    validate_mirror(mirror);
    validate_fiber(fiber);

    const double f = mirror.focal_length;
    const double w = fiber.waist;
    const double scale = std::max(f, w);
    const double quad_tol = std::min(rel_tol * 1e-1, 1e-9);

    // magnitude estimate to anchor the absolute tolerance of the numerator
    double mag = 0.0;
    for (int k = 1; k <= 64; ++k) {
        const double rho = (std::isinf(mirror.rho_max) ? 8.0 * scale : mirror.rho_max) *
                           (k - 0.5) / 64.0;
        const FieldRP e = reflected_field(m, f, rho, 0.0);
        const double emag =
            std::sqrt(std::norm(e.rho_component) + std::norm(e.phi_component));
        mag += rho * emag * std::exp(-(rho / w) * (rho / w));
    }
    mag *= 2.0 * std::numbers::pi *
           (std::isinf(mirror.rho_max) ? 8.0 * scale : mirror.rho_max) / 64.0;
    const double abs_floor = std::max(1e-300, 1e-13 * mag);

    const auto numerator_term = [&](double rho) {
        return phi_integral([&](double phi) {
                   const FieldRP e = reflected_field(m, f, rho, phi);
                   return e.rho_component * fiber_component_rho(fiber, rho, phi) +
                          e.phi_component * fiber_component_phi(fiber, rho, phi);
               }) *
               rho;
    };
    const std::complex<double> numerator = radial_integral_complex(
        numerator_term, mirror.rho_max, scale, quad_tol, abs_floor);

    const auto field_norm_term = [&](double rho) {
        return phi_integral([&](double phi) {
                   const FieldRP e = reflected_field(m, f, rho, phi);
                   return std::complex<double>(
                       std::norm(e.rho_component) + std::norm(e.phi_component), 0.0);
               })
                   .real() *
               rho;
    };
    const double field_norm =
        radial_integral(field_norm_term, kInfiniteRadius, 2.0 * f, quad_tol, 1e-16);

    const auto fiber_norm_term = [&](double rho) {
        return phi_integral([&](double phi) {
                   return std::complex<double>(
                       std::norm(fiber_component_rho(fiber, rho, phi)) +
                           std::norm(fiber_component_phi(fiber, rho, phi)),
                       0.0);
               })
                   .real() *
               rho;
    };
    const double fiber_norm =
        radial_integral(fiber_norm_term, kInfiniteRadius, w, quad_tol, 1e-16);

    return std::norm(numerator) / (field_norm * fiber_norm);
}

double sigma_coupling_analytic(double focal_length, const FiberMode& fiber,
                               double rho_max, int m) {
    if (m != 1 && m != -1)
        throw std::invalid_argument("sigma coupling is defined for m = +-1");
    if (!(focal_length > 0.0))
        throw std::invalid_argument("focal length must be positive");
    if (!(rho_max > 0.0)) throw std::invalid_argument("rho_max must be positive");
    validate_fiber(fiber);

    const double w = fiber.waist;
    const double a = (2.0 * focal_length / w) * (2.0 * focal_length / w);
    const std::complex<double> j_combo =
        m > 0 ? fiber.jones_x + kI * fiber.jones_y : fiber.jones_x - kI * fiber.jones_y;

    // e^{2a} |Gamma(-1,a) - Gamma(-1,x2)|^2 evaluated as
    // [gtilde(a) - e^{a-x2} gtilde(x2)]^2 with gtilde(x) = e^x Gamma(-1,x),
    // so no factor ever overflows
    double bracket = gamma_upper_minus1_scaled(a);
    if (!std::isinf(rho_max)) {
        const double u = (rho_max / w) * (rho_max / w);
        bracket -= std::exp(-u) * gamma_upper_minus1_scaled(a + u);
    }
    return 1.5 * a * a * a * std::norm(j_combo) * bracket * bracket;
}

FocusOptimum optimize_focus(const FiberMode& fiber, double rho_max, int m) {
    validate_fiber(fiber);
    const double w = fiber.waist;
    const double lo = 0.05, hi = 5.0;
    const auto value = [&](double f_over_w) {
        return sigma_coupling_analytic(f_over_w * w, fiber, rho_max, m);
    };

    constexpr int kScanPoints = 200;
    int best = 0;
    double best_value = -1.0;
    std::vector<double> xs(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kScanPoints - 1));
        const double v = value(xs[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == 0 || best == kScanPoints - 1)
        throw std::runtime_error(
            "optimize_focus: no interior maximum in f/w bracket [0.05,5]; boundary "
            "values " +
            std::to_string(value(lo)) + " and " + std::to_string(value(hi)));

    double a = xs[best - 1];
    double b = xs[best + 1];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = value(x1);
    double f2 = value(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = value(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = value(x1);
        }
    }
    const double x_star = 0.5 * (a + b);
    return FocusOptimum{x_star * w, value(x_star)};
}

double mirror_gate_coincidence(double eta, double p_b) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("eta must lie in [0,1]");
    if (!(p_b >= 0.0 && p_b <= 1.0))
        throw std::invalid_argument("p_B must lie in [0,1]");
    const double x = eta / 8.0;
    return p_b * x * x;
}

CavityCollection cavity_collection(const CavityParams& params) {
    if (!(params.kappa > 0.0) || !(params.gamma > 0.0))
        throw std::invalid_argument("kappa and gamma must be positive");
    if (params.g < 0.0) throw std::invalid_argument("g must be >= 0");
    if (!(params.t_out > 0.0) || !(params.l_total > 0.0))
        throw std::invalid_argument("T_l and total loss must be positive");
    if (params.t_out > params.l_total)
        throw std::invalid_argument("outcoupler transmission cannot exceed total loss");

    CavityCollection out;
    out.cooperativity = params.g * params.g / (params.kappa * params.gamma);
    out.outcoupling_factor = params.t_out / params.l_total;
    out.rate_factor = 2.0 * params.kappa / (2.0 * params.kappa + params.gamma);
    out.purcell_factor = 2.0 * out.cooperativity / (1.0 + 2.0 * out.cooperativity);
    out.p_c = out.outcoupling_factor * out.rate_factor * out.purcell_factor;
    return out;
}

}  // namespace ionnet
