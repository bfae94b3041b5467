#include "ionnet/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionnet {

namespace {

bool finite(Amplitude a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

}  // namespace

std::string to_string(Spin s) { return s == Spin::Up ? "u" : "d"; }

std::string to_string(const Mode& m) {
    std::string out = m.port == Port::A ? "A:" : "B:";
    switch (m.channel) {
        case Channel::None: out += "n"; break;
        case Channel::H: out += "H"; break;
        case Channel::V: out += "V"; break;
        case Channel::Red: out += "r"; break;
        case Channel::Blue: out += "b"; break;
        case Channel::T1: out += "t1"; break;
        case Channel::T2: out += "t2"; break;
    }
    return out;
}

std::string to_string(const BasisLabel& label) {
    std::string out;
    for (Spin s : label.atoms) out += to_string(s);
    if (!label.occupations.empty()) {
        out += "|";
        for (std::size_t i = 0; i < label.occupations.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(label.occupations[i]);
        }
    }
    return out;
}

PureState::PureState(std::vector<Mode> modes) : modes_(std::move(modes)) {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        for (std::size_t j = i + 1; j < modes_.size(); ++j)
            if (modes_[i] == modes_[j])
                throw std::invalid_argument("duplicate mode in state basis");
}

PureState PureState::atom(Spin s) {
    PureState out;
    out.add_term(BasisLabel{{s}, {}}, Amplitude{1.0, 0.0});
    return out;
}

void PureState::add_term(BasisLabel label, Amplitude amp) {
    if (!finite(amp)) throw std::invalid_argument("non-finite amplitude");
    if (label.occupations.size() != modes_.size())
        throw std::invalid_argument("occupation vector does not match mode list");
    for (int n : label.occupations)
        if (n < 0) throw std::invalid_argument("negative occupation");
    if (atom_count_fixed_) {
        if (label.atoms.size() != atom_count_)
            throw std::invalid_argument("atom count differs between labels");
    } else {
        atom_count_ = label.atoms.size();
        atom_count_fixed_ = true;
    }
    auto it = terms_.find(label);
    if (it == terms_.end()) {
        if (amp != Amplitude{}) terms_.emplace(std::move(label), amp);
    } else {
        it->second += amp;
        if (it->second == Amplitude{}) terms_.erase(it);
    }
}

Amplitude PureState::amplitude(const BasisLabel& label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double PureState::norm() const {
    double sq = 0.0;
    for (const auto& [label, amp] : terms_) sq += std::norm(amp);
    return std::sqrt(sq);
}

PureState PureState::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero state");
    return scaled(Amplitude{1.0 / n, 0.0});
}

PureState PureState::scaled(Amplitude factor) const {
    PureState out(modes_);
    out.atom_count_ = atom_count_;
    out.atom_count_fixed_ = atom_count_fixed_;
    if (factor == Amplitude{}) return out;
    for (const auto& [label, amp] : terms_) out.terms_.emplace(label, amp * factor);
    return out;
}

PureState PureState::aligned_to(const std::vector<Mode>& target) const {
    std::vector<std::ptrdiff_t> slot(modes_.size(), -1);
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        auto it = std::find(target.begin(), target.end(), modes_[i]);
        if (it == target.end())
            throw std::invalid_argument("aligned_to: mode missing from target basis");
        slot[i] = it - target.begin();
    }
    PureState out(target);
    for (const auto& [label, amp] : terms_) {
        BasisLabel moved{label.atoms, std::vector<int>(target.size(), 0)};
        for (std::size_t i = 0; i < modes_.size(); ++i)
            moved.occupations[static_cast<std::size_t>(slot[i])] = label.occupations[i];
        out.add_term(std::move(moved), amp);
    }
    return out;
}

PureState PureState::atoms_only() const {
    PureState out;
    for (const auto& [label, amp] : terms_) {
        for (int n : label.occupations)
            if (n != 0)
                throw std::invalid_argument("atoms_only: photons still present");
        out.add_term(BasisLabel{label.atoms, {}}, amp);
    }
    return out;
}

PureState tensor(const PureState& a, const PureState& b) {
    for (const Mode& m : a.modes())
        for (const Mode& n : b.modes())
            if (m == n) throw std::invalid_argument("tensor: overlapping mode sets");

    std::vector<Mode> modes = a.modes();
    modes.insert(modes.end(), b.modes().begin(), b.modes().end());
    PureState out(modes);
    for (const auto& [la, va] : a.terms()) {
        for (const auto& [lb, vb] : b.terms()) {
            BasisLabel joint;
            joint.atoms = la.atoms;
            joint.atoms.insert(joint.atoms.end(), lb.atoms.begin(), lb.atoms.end());
            joint.occupations = la.occupations;
            joint.occupations.insert(joint.occupations.end(), lb.occupations.begin(),
                                     lb.occupations.end());
            out.add_term(std::move(joint), va * vb);
        }
    }
    return out;
}

Projection project(const PureState& s, const OccupationPredicate& pred) {
    PureState kept(s.modes());
    double prob = 0.0;
    for (const auto& [label, amp] : s.terms()) {
        if (pred(std::span<const Mode>(s.modes()),
                 std::span<const int>(label.occupations))) {
            prob += std::norm(amp);
            kept.add_term(label, amp);
        }
    }
    if (prob == 0.0) return Projection{PureState(s.modes()), 0.0};
    return Projection{kept.scaled(Amplitude{1.0 / std::sqrt(prob), 0.0}), prob};
}

Amplitude inner_product(const PureState& a, const PureState& b) {
    if (a.atom_count() != b.atom_count())
        throw std::invalid_argument("inner_product: atom counts differ");
    std::vector<Mode> basis = a.modes();
    for (const Mode& m : b.modes())
        if (std::find(basis.begin(), basis.end(), m) == basis.end())
            basis.push_back(m);
    const PureState aa = a.aligned_to(basis);
    const PureState bb = b.aligned_to(basis);
    Amplitude acc{};
    for (const auto& [label, amp] : aa.terms())
        acc += std::conj(amp) * bb.amplitude(label);
    return acc;
}

double fidelity(const PureState& a, const PureState& b) {
    std::vector<Mode> sa = a.modes();
    std::vector<Mode> sb = b.modes();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb || a.atom_count() != b.atom_count())
        throw std::invalid_argument("fidelity: mismatched bases");
    if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("fidelity: states must be normalized");
    const double f = std::norm(inner_product(a, b));
    // clip the last-ulp overshoot from rounding
    return std::min(f, 1.0);
}

}  // namespace ionnet
