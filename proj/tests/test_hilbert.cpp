#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ionnet/hilbert.hpp"
#include "ionnet/photon_source.hpp"
#include "test_support.hpp"

using namespace ionnet;

namespace {

const std::vector<Mode> kTwoPorts = {Mode{Port::A, Channel::None},
                                     Mode{Port::B, Channel::None}};

PureState one_photon_superposition() {
    PureState s(kTwoPorts);
    const double r2 = 1.0 / std::sqrt(2.0);
    s.add_term(BasisLabel{{}, {0, 1}}, {r2, 0.0});
    s.add_term(BasisLabel{{}, {1, 0}}, {r2, 0.0});
    return s;
}

}  // namespace

TEST_CASE("tensor of unit kets") {
    PureState photon({Mode{Port::A, Channel::None}});
    photon.add_term(BasisLabel{{}, {1}}, {1.0, 0.0});
    const PureState joint = tensor(PureState::atom(Spin::Up), photon);
    CHECK(joint.term_count() == 1);
    CHECK(joint.amplitude(BasisLabel{{Spin::Up}, {1}}) == Amplitude{1.0, 0.0});
}

TEST_CASE("tensor of two number pairs carries the double-excitation term") {
    const double p = 0.04;
    const PureState joint =
        tensor(make_number_pair(p, Port::A), make_number_pair(p, Port::B));
    CHECK(joint.term_count() == 4);
    const Amplitude dd = joint.amplitude(BasisLabel{{Spin::Down, Spin::Down}, {1, 1}});
    CHECK(dd.real() == doctest::Approx(p).epsilon(1e-12));
    CHECK(dd.imag() == 0.0);
}

TEST_CASE("tensor with a zero-term state annihilates") {
    const PureState empty;
    const PureState joint = tensor(empty, PureState::atom(Spin::Down));
    CHECK(joint.empty());
}

TEST_CASE("tensor rejects overlapping mode sets") {
    CHECK_THROWS_AS(tensor(make_number_pair(0.1, Port::A), make_number_pair(0.1, Port::A)),
                    std::invalid_argument);
}

TEST_CASE("projection onto one photon in port A") {
    const auto [state, prob] =
        project(one_photon_superposition(), [](auto modes, auto occ) {
            for (std::size_t i = 0; i < modes.size(); ++i)
                if (modes[i].port == Port::A && occ[i] != 1) return false;
            return true;
        });
    CHECK(prob == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(state.term_count() == 1);
    CHECK(std::abs(state.amplitude(BasisLabel{{}, {1, 0}})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projection onto everything is the identity") {
    const PureState s = one_photon_superposition();
    const auto [state, prob] = project(s, [](auto, auto) { return true; });
    CHECK(prob == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(state, s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("impossible projection returns the empty state with probability 0") {
    PureState s(kTwoPorts);  // |1>_A |1>_B has no one-photon-per-port content
    const double r2 = 1.0 / std::sqrt(2.0);
    s.add_term(BasisLabel{{}, {0, 2}}, {-r2, 0.0});
    s.add_term(BasisLabel{{}, {2, 0}}, {r2, 0.0});
    const auto [state, prob] = project(s, [](auto, auto occ) {
        return occ[0] == 1 && occ[1] == 1;
    });
    CHECK(prob == 0.0);
    CHECK(state.empty());
}

TEST_CASE("fidelity basics") {
    const PureState bell = []{
        PureState s;
        const double r2 = 1.0 / std::sqrt(2.0);
        s.add_term(BasisLabel{{Spin::Up, Spin::Down}, {}}, {r2, 0.0});
        s.add_term(BasisLabel{{Spin::Down, Spin::Up}, {}}, {-r2, 0.0});
        return s;
    }();
    PureState ud;
    ud.add_term(BasisLabel{{Spin::Up, Spin::Down}, {}}, {1.0, 0.0});
    PureState du;
    du.add_term(BasisLabel{{Spin::Down, Spin::Up}, {}}, {1.0, 0.0});

    CHECK(fidelity(bell, bell) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(ud, du) == 0.0);
    CHECK(fidelity(bell, ud) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fidelity rejects mismatched bases") {
    PureState photon({Mode{Port::A, Channel::None}});
    photon.add_term(BasisLabel{{}, {1}}, {1.0, 0.0});
    PureState other({Mode{Port::B, Channel::None}});
    other.add_term(BasisLabel{{}, {1}}, {1.0, 0.0});
    CHECK_THROWS_AS(fidelity(photon, other), std::invalid_argument);
}

TEST_CASE("amplitudes must be finite") {
    PureState s;
    CHECK_THROWS_AS(s.add_term(BasisLabel{{Spin::Up}, {}},
                               Amplitude{std::nan(""), 0.0}),
                    std::invalid_argument);
}

TEST_CASE("aligned_to and atoms_only guard their preconditions") {
    PureState photon({Mode{Port::A, Channel::None}});
    photon.add_term(BasisLabel{{}, {1}}, {1.0, 0.0});
    CHECK_THROWS_AS(photon.aligned_to({Mode{Port::B, Channel::None}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(photon.atoms_only(), std::invalid_argument);
    PureState vacuum({Mode{Port::A, Channel::None}});
    vacuum.add_term(BasisLabel{{Spin::Up}, {0}}, {1.0, 0.0});
    CHECK(vacuum.atoms_only().amplitude(BasisLabel{{Spin::Up}, {}}) ==
          Amplitude{1.0, 0.0});
}

TEST_CASE("normalize is idempotent and exact") {
    auto rng = test_support::seeded_rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState s = test_support::random_photonic_state(rng, kTwoPorts, 2, 4);
        CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(s.normalized().norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("tensor norm is multiplicative") {
    auto rng = test_support::seeded_rng(12);
    const std::vector<Mode> other = {Mode{Port::B, Channel::Red}};
    for (int trial = 0; trial < 200; ++trial) {
        PureState a = test_support::random_photonic_state(
            rng, {Mode{Port::A, Channel::None}}, 2, 3);
        PureState b = test_support::random_photonic_state(rng, other, 2, 3);
        a = a.scaled({0.3, 0.4});
        b = b.scaled({-1.1, 0.2});
        CHECK(tensor(a, b).norm() ==
              doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
    }
}

TEST_CASE("projection probabilities over a disjoint complete family sum to 1") {
    auto rng = test_support::seeded_rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const PureState s = test_support::random_photonic_state(rng, kTwoPorts, 2, 5);
        double total = 0.0;
        for (int want = 0; want <= 4; ++want) {
            total += project(s, [want](auto, auto occ) {
                         int sum = 0;
                         for (int n : occ) sum += n;
                         return sum == want;
                     }).probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}
