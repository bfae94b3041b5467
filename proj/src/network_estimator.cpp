#include "ionnet/network_estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "ionnet/heralding.hpp"

namespace ionnet {

namespace {

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

}  // namespace

double atom_photon_success(double p_e, double p_c, double p_t) {
    require_probability(p_e, "p_e");
    require_probability(p_c, "p_c");
    require_probability(p_t, "p_t");
    return p_e * p_c * p_t;
}

double deterministic_gate_time(double tau_rep, double p) {
    if (!(tau_rep > 0.0)) throw std::invalid_argument("tau_rep must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("P must lie in (0,1]");
    return tau_rep / p;
}

double repeater_time(int n_nodes, double tau_rep, double p) {
    if (n_nodes < 2) throw std::invalid_argument("repeater needs at least 2 nodes");
    return deterministic_gate_time(tau_rep, p) * std::log2(static_cast<double>(n_nodes));
}

double cluster_time(double n, double p, double epsilon, double tau_rep) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("P must lie in (0,1)");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(tau_rep > 0.0)) throw std::invalid_argument("tau_rep must be positive");
    if (!(n >= 1.0)) throw std::invalid_argument("n must be >= 1");
    const double base = 4.0 / p - 3.0;
    if (!(base > 1.0))
        throw std::invalid_argument("cluster_time requires 4/P - 3 > 1");
    const double log_n_eps = std::log(2.0 * n / epsilon);
    if (!(log_n_eps > 1.0))
        throw std::invalid_argument("cluster_time requires ln(2n/epsilon) > 1");

    const double inv_p = 1.0 / p;
    const double term_build = std::pow(inv_p, std::log2(base));
    const double term_layers = inv_p * std::log2(4.0 * (log_n_eps - 1.0) / p);
    const double term_rows = inv_p * log_n_eps;
    return tau_rep * (term_build + term_layers + term_rows);
}

double bell_separation(double t_detect) {
    if (!(t_detect > 0.0)) throw std::invalid_argument("t_detect must be positive");
    return kSpeedOfLight * t_detect;
}

double seconds_to_years(double seconds) { return seconds / kSecondsPerYear; }

}  // namespace ionnet
