#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ionnet {

using Amplitude = std::complex<double>;

enum class Spin : std::uint8_t { Up, Down };

enum class Port : std::uint8_t { A, B };

// Photonic channel within a spatial port. None is the single-channel case
// (number qubits); H/V polarization, Red/Blue frequency, T1/T2 time bins.
enum class Channel : std::uint8_t { None, H, V, Red, Blue, T1, T2 };

struct Mode {
    Port port;
    Channel channel;
    auto operator<=>(const Mode&) const = default;
};

std::string to_string(Spin s);
std::string to_string(const Mode& m);

// One basis ket: an ordered list of atomic spins and one occupation number
// per mode of the owning state. Occupation slots are parallel to
// PureState::modes().
struct BasisLabel {
    std::vector<Spin> atoms;
    std::vector<int> occupations;
    auto operator<=>(const BasisLabel&) const = default;
};

std::string to_string(const BasisLabel& label);

/// Sparse complex-amplitude state over a labeled hybrid atom/photon basis.
/// Absent labels carry amplitude zero. Values are immutable in spirit: all
/// operations below return new states.
class PureState {
public:
    PureState() = default;
    explicit PureState(std::vector<Mode> modes);

    // Single-atom ket with no photonic modes.
    static PureState atom(Spin s);

    // Accumulates amplitude onto a label. The first term fixes the atom
    // count; occupation vectors must match the mode list. Non-finite
    // amplitudes and negative occupations are rejected.
    void add_term(BasisLabel label, Amplitude amp);

    Amplitude amplitude(const BasisLabel& label) const;

    const std::vector<Mode>& modes() const { return modes_; }
    const std::map<BasisLabel, Amplitude>& terms() const { return terms_; }
    std::size_t atom_count() const { return atom_count_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double norm() const;
    PureState normalized() const;

    PureState scaled(Amplitude factor) const;

    // Reorders this state's occupation slots to follow `target` mode order.
    // Modes absent from this state are added with occupation zero; this
    // state's modes must be a subset of `target`.
    PureState aligned_to(const std::vector<Mode>& target) const;

    // Drops all photonic modes; valid only when every term has zero
    // occupation everywhere (used after detection consumed the photons).
    PureState atoms_only() const;

private:
    std::vector<Mode> modes_;
    std::size_t atom_count_ = 0;
    bool atom_count_fixed_ = false;
    std::map<BasisLabel, Amplitude> terms_;
};

// Tensor product. Atom lists concatenate (a's atoms first); mode sets must
// be disjoint. A zero-term factor annihilates the product.
PureState tensor(const PureState& a, const PureState& b);

// Predicate over photonic occupations; receives the state's mode list and
// one occupation vector.
using OccupationPredicate =
    std::function<bool(std::span<const Mode>, std::span<const int>)>;

struct Projection {
    PureState state;       // renormalized post-measurement state
    double probability;    // sum of |amplitude|^2 over matching labels
};

// Measurement-induced projection onto the labels matching `pred`.
// Zero probability yields an empty state, not an error.
Projection project(const PureState& s, const OccupationPredicate& pred);

Amplitude inner_product(const PureState& a, const PureState& b);

// |<a|b>|^2. Both states must be normalized and share one basis (equal atom
// counts and equal mode sets; ordering may differ).
double fidelity(const PureState& a, const PureState& b);

}  // namespace ionnet
