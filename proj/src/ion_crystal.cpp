#include "ionnet/ion_crystal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ionnet/detail/linalg.hpp"
#include "ionnet/quadrature.hpp"

namespace ionnet {

namespace {

constexpr double kGradientTol = 1e-12;
constexpr int kMaxNewtonIterations = 200;

std::vector<double> chain_gradient(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<double> g(n);
    for (std::size_t p = 0; p < n; ++p) {
        double s = u[p];
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const double d = u[p] - u[q];
            s -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
        }
        g[p] = s;
    }
    return g;
}

std::vector<double> axial_hessian(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<double> h(n * n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        double diag = 1.0;
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const double d = std::abs(u[p] - u[q]);
            const double c = 2.0 / (d * d * d);
            diag += c;
            h[p * n + q] = -c;
        }
        h[p * n + p] = diag;
    }
    return h;
}

bool ascending(const std::vector<double>& u) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] <= u[i - 1]) return false;
    return true;
}

void validate_thermal(const IonCrystal& c) {
    const auto n = static_cast<std::size_t>(c.n_ions);
    if (c.lamb_dicke_axial.size() != n || c.lamb_dicke_transverse.size() != n ||
        c.nbar_axial.size() != n || c.nbar_transverse.size() != n)
        throw std::invalid_argument(
            "crystal needs one Lamb-Dicke parameter and one nbar per mode; "
            "use doppler_crystal() or fill the vectors");
    for (std::size_t m = 0; m < n; ++m) {
        if (c.lamb_dicke_axial[m] < 0.0 || c.lamb_dicke_transverse[m] < 0.0)
            throw std::invalid_argument("Lamb-Dicke parameters must be >= 0");
        // -1/2 is the formal zero-exponent (cold lattice) test mode
        if (c.nbar_axial[m] < -0.5 || c.nbar_transverse[m] < -0.5)
            throw std::invalid_argument("nbar must be >= -1/2");
    }
}

}  // namespace

EquilibriumSolution equilibrium_positions(int n) {
    if (n < 1 || n > 100)
        throw std::invalid_argument("equilibrium_positions: n must lie in [1,100]");
    if (n == 1) return EquilibriumSolution{{0.0}};

    // uniform-spacing start; the minimum spacing of long chains shrinks
    // roughly as N^{-0.56}
    const double spacing = 2.018 / std::pow(n, 0.559);
    std::vector<double> u(n);
    for (int p = 0; p < n; ++p)
        u[p] = spacing * (p - 0.5 * (n - 1));

    std::vector<double> best = u;
    double best_res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
        const std::vector<double> g = chain_gradient(u);
        double res = 0.0;
        for (double x : g) res = std::max(res, std::abs(x));
        if (res < best_res) {
            best_res = res;
            best = u;
        }
        if (res < kGradientTol) return EquilibriumSolution{u};

        std::vector<double> rhs(g);
        for (double& x : rhs) x = -x;
        const std::vector<double> step = detail::solve_linear(axial_hessian(u), rhs);

        // the potential is strictly convex on the ordered cone, so Newton
        // converges once steps keep the ordering; halve only to preserve it
        double t = 1.0;
        for (int back = 0; back < 60; ++back) {
            std::vector<double> trial(u);
            for (int p = 0; p < n; ++p) trial[p] += t * step[p];
            if (ascending(trial)) {
                u = std::move(trial);
                break;
            }
            t *= 0.5;
        }
    }
    if (best_res < kGradientTol) return EquilibriumSolution{best};
    char msg[96];
    std::snprintf(msg, sizeof msg,
                  "equilibrium_positions: no convergence, residual %.3e", best_res);
    throw std::runtime_error(msg);
}

NormalModes normal_modes(const IonCrystal& crystal) {
    if (crystal.n_ions < 1) throw std::invalid_argument("normal_modes: n_ions < 1");
    if (!(crystal.omega_axial > 0.0) || !(crystal.omega_transverse > 0.0))
        throw std::invalid_argument("normal_modes: trap frequencies must be positive");
    const auto n = static_cast<std::size_t>(crystal.n_ions);
    const auto eq = equilibrium_positions(crystal.n_ions);
    const double r = crystal.omega_transverse / crystal.omega_axial;

    const std::vector<double> ka = axial_hessian(eq.positions);
    std::vector<double> kt(n * n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        double diag = r * r;
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const double d = std::abs(eq.positions[p] - eq.positions[q]);
            const double c = 1.0 / (d * d * d);
            diag -= c;
            kt[p * n + q] = c;
        }
        kt[p * n + p] = diag;
    }

    const auto ea = detail::jacobi_eigensymm(ka, n);
    const auto et = detail::jacobi_eigensymm(kt, n);

    NormalModes out;
    out.axial_freqs.resize(n);
    out.transverse_freqs.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        if (ea.values[m] <= 0.0)
            throw std::runtime_error("normal_modes: non-positive axial eigenvalue");
        out.axial_freqs[m] = std::sqrt(ea.values[m]);
        if (et.values[m] <= 0.0)
            throw std::runtime_error(
                "normal_modes: transverse mode " + std::to_string(m + 1) +
                " has imaginary frequency (zig-zag instability); raise "
                "omega_transverse/omega_axial");
        out.transverse_freqs[m] = std::sqrt(et.values[m]);
    }
    out.axial_vectors = ea.vectors;
    out.transverse_vectors = et.vectors;

    if (std::abs(out.axial_freqs[0] - 1.0) > 1e-10)
        throw std::runtime_error("normal_modes: lowest axial mode deviates from the "
                                 "center of mass");
    return out;
}

ScatterPattern::ScatterPattern(const IonCrystal& crystal) : n_(crystal.n_ions) {
    validate_thermal(crystal);
    if (!(crystal.eta_lambda > 0.0) && crystal.n_ions > 1)
        throw std::invalid_argument("eta_lambda must be positive");
    const auto eq = equilibrium_positions(crystal.n_ions);
    const NormalModes modes = normal_modes(crystal);
    const auto n = static_cast<std::size_t>(crystal.n_ions);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            PairTerm term{};
            term.phase_coeff =
                crystal.eta_lambda * (eq.positions[p] - eq.positions[q]);
            for (std::size_t m = 0; m < n; ++m) {
                const double da =
                    (modes.axial_vectors[m][p] - modes.axial_vectors[m][q]) *
                    crystal.lamb_dicke_axial[m];
                term.axial_coeff += da * da * (crystal.nbar_axial[m] + 0.5);
                const double dt =
                    (modes.transverse_vectors[m][p] - modes.transverse_vectors[m][q]) *
                    crystal.lamb_dicke_transverse[m];
                term.transverse_coeff += dt * dt * (crystal.nbar_transverse[m] + 0.5);
            }
            pairs_.push_back(term);
        }
    }
}

double ScatterPattern::raw(const ScatterGeometry& geom) const {
    const double dx = std::cos(geom.theta_out) - std::cos(geom.theta_in);
    const double dy = std::sin(geom.theta_out) - std::sin(geom.theta_in);
    double value = static_cast<double>(n_);
    for (const PairTerm& t : pairs_) {
        value += 2.0 * std::cos(t.phase_coeff * dx) *
                 std::exp(-t.axial_coeff * dx * dx - t.transverse_coeff * dy * dy);
    }
    return value;
}

double ScatterPattern::normalized(const ScatterGeometry& geom) const {
    return raw(geom) / (static_cast<double>(n_) * static_cast<double>(n_));
}

double cross_section(const IonCrystal& crystal, const ScatterGeometry& geom,
                     bool normalized) {
    const ScatterPattern pattern(crystal);
    return normalized ? pattern.normalized(geom) : pattern.raw(geom);
}

std::vector<std::pair<double, double>> radiation_pattern(const IonCrystal& crystal,
                                                         double theta_in, int grid) {
    if (grid < 2) throw std::invalid_argument("radiation_pattern: grid must be >= 2");
    const ScatterPattern pattern(crystal);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) {
        const double theta =
            -std::numbers::pi + 2.0 * std::numbers::pi * k / grid;
        out.emplace_back(theta, pattern.normalized({theta_in, theta}));
    }
    return out;
}

IonCrystal doppler_crystal(int n, double eta_lambda, double anisotropy, double s_norm,
                           double linewidth_ratio) {
    if (!(anisotropy > 0.0)) throw std::invalid_argument("anisotropy must be positive");
    if (!(s_norm >= 0.0)) throw std::invalid_argument("s_norm must be >= 0");
    if (!(linewidth_ratio > 0.0))
        throw std::invalid_argument("linewidth_ratio must be positive");

    IonCrystal crystal;
    crystal.n_ions = n;
    crystal.omega_axial = 1.0;
    crystal.omega_transverse = anisotropy;
    crystal.eta_lambda = eta_lambda;

    const NormalModes modes = normal_modes(crystal);
    const auto nn = static_cast<std::size_t>(n);
    crystal.lamb_dicke_axial.resize(nn);
    crystal.lamb_dicke_transverse.resize(nn);
    crystal.nbar_axial.resize(nn);
    crystal.nbar_transverse.resize(nn);
    // recoil scale from the normalization at the transverse COM:
    // eta_m^2 = s^2 r / (G x_m), nbar_m = G r / (2 x_m), with x_m the mode
    // frequency in axial-COM units, r the anisotropy and G the
    // linewidth-to-transverse-frequency ratio
    const double r = anisotropy;
    const double g = linewidth_ratio;
    for (std::size_t m = 0; m < nn; ++m) {
        const double xa = modes.axial_freqs[m];
        const double xt = modes.transverse_freqs[m];
        crystal.lamb_dicke_axial[m] = s_norm * std::sqrt(r / (g * xa));
        crystal.lamb_dicke_transverse[m] = s_norm * std::sqrt(r / (g * xt));
        crystal.nbar_axial[m] = g * r / (2.0 * xa);
        crystal.nbar_transverse[m] = g * r / (2.0 * xt);
    }
    return crystal;
}

double cabrillo_fidelity(double eta, double nbar, double nu_over_gamma, double chi,
                         double rel_tol) {
    if (eta < 0.0 || nbar < 0.0 || nu_over_gamma < 0.0 || chi < 0.0)
        throw std::invalid_argument("cabrillo_fidelity: parameters must be >= 0");
    const double c = 4.0 * eta * eta * (nbar + 0.5);
    if (c == 0.0) return 1.0;
    const double cos_chi = std::cos(chi);
    return integrate_exp_weighted(
        [c, cos_chi, nu_over_gamma](double tau) {
            return std::exp(-c * (1.0 - cos_chi * std::cos(nu_over_gamma * tau)));
        },
        rel_tol);
}

double cabrillo_fidelity_weak(double eta, double nbar, double chi) {
    if (eta < 0.0 || nbar < 0.0 || chi < 0.0)
        throw std::invalid_argument("cabrillo_fidelity_weak: parameters must be >= 0");
    const double c = 4.0 * eta * eta * (nbar + 0.5);
    return std::exp(-c * (1.0 - std::cos(chi)));
}

SpotMetrics spot_metrics(int n, double eta_lambda) {
    if (n < 2) throw std::invalid_argument("spot_metrics: n must be >= 2");
    if (!(eta_lambda > 0.0))
        throw std::invalid_argument("spot_metrics: eta_lambda must be positive");
    const double f = (n - 1.0) / n;
    SpotMetrics out;
    out.delta_theta = 1.7 * std::pow(1.0 - f, 0.25) / std::sqrt(eta_lambda) *
                      std::pow(n, -0.21);
    out.fraction = 0.55 / std::sqrt(eta_lambda) * std::pow(n, -0.46);
    out.witness_floor = f;
    return out;
}

double pairwise_spread(const EquilibriumSolution& eq) {
    double s = 0.0;
    for (std::size_t p = 0; p < eq.positions.size(); ++p)
        for (std::size_t q = p + 1; q < eq.positions.size(); ++q) {
            const double d = eq.positions[p] - eq.positions[q];
            s += d * d;
        }
    return s;
}

SpreadFit spread_fit(const std::vector<int>& n_values) {
    if (n_values.size() < 5)
        throw std::invalid_argument("spread_fit: need at least 5 chain sizes");
    for (int n : n_values)
        if (n < 5 || n > 50)
            throw std::invalid_argument("spread_fit: chain sizes must lie in [5,50]");

    std::vector<double> lx, ly;
    for (int n : n_values) {
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(pairwise_spread(equilibrium_positions(n))));
    }
    const auto k = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / k;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_y = sy / k;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double fit = intercept + slope * lx[i];
        ss_res += (ly[i] - fit) * (ly[i] - fit);
        ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
    }
    return SpreadFit{std::exp(intercept), slope, 1.0 - ss_res / ss_tot};
}

}  // namespace ionnet
