#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ionnet/hilbert.hpp"

namespace test_support {

inline std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline ionnet::Amplitude random_amplitude(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

// normalized single-qubit pair (alpha, beta), biased away from zero norm
inline std::pair<ionnet::Amplitude, ionnet::Amplitude> random_qubit(
    std::mt19937_64& rng) {
    while (true) {
        ionnet::Amplitude a = random_amplitude(rng);
        ionnet::Amplitude b = random_amplitude(rng);
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 0.1) return {a / n, b / n};
    }
}

// random normalized photon-only state over the given modes with occupations
// up to max_occ per mode
inline ionnet::PureState random_photonic_state(std::mt19937_64& rng,
                                               const std::vector<ionnet::Mode>& modes,
                                               int max_occ, int n_terms) {
    std::uniform_int_distribution<int> occ(0, max_occ);
    ionnet::PureState s(modes);
    for (int t = 0; t < n_terms; ++t) {
        ionnet::BasisLabel label;
        label.occupations.resize(modes.size());
        for (auto& n : label.occupations) n = occ(rng);
        s.add_term(std::move(label), random_amplitude(rng));
    }
    if (s.norm() == 0.0) {
        ionnet::BasisLabel vacuum;
        vacuum.occupations.assign(modes.size(), 0);
        s.add_term(std::move(vacuum), {1.0, 0.0});
    }
    return s.normalized();
}

}  // namespace test_support
