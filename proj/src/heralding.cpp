#include "ionnet/heralding.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace ionnet {

namespace {

constexpr double kPairNormTol = 1e-9;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binomial(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

void require_unit_interval(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

void require_qubit_normalized(Amplitude a, Amplitude b, const char* which) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kPairNormTol)
        throw std::invalid_argument(std::string("atom ") + which +
                                    " amplitudes must satisfy |alpha|^2+|beta|^2=1");
}

// Expansion of one input mode pair (n_a photons at port A, n_b at B) of a
// common channel: list of (photons ending at A, amplitude factor) with
// n_a + n_b - j photons at B.
std::vector<std::pair<int, double>> split_channel(int n_a, int n_b) {
    const int n = n_a + n_b;
    std::vector<std::pair<int, double>> out;
    const double norm_in = std::sqrt(factorial(n_a) * factorial(n_b));
    for (int j = 0; j <= n; ++j) {
        double c = 0.0;
        for (int p = std::max(0, j - n_b); p <= std::min(j, n_a); ++p) {
            const int q = j - p;
            const double sign = ((n_a - p) % 2 == 0) ? 1.0 : -1.0;
            c += binomial(n_a, p) * sign * binomial(n_b, q);
        }
        if (c == 0.0) continue;
        const double coeff = c * std::sqrt(factorial(j) * factorial(n - j)) /
                             (norm_in * std::pow(2.0, 0.5 * n));
        out.emplace_back(j, coeff);
    }
    return out;
}

// Two-atom state with no photonic modes.
PureState two_atom_state(Amplitude c_ud, Amplitude c_du, Amplitude c_uu = {},
                         Amplitude c_dd = {}) {
    PureState out;
    if (c_uu != Amplitude{}) out.add_term(BasisLabel{{Spin::Up, Spin::Up}, {}}, c_uu);
    if (c_ud != Amplitude{}) out.add_term(BasisLabel{{Spin::Up, Spin::Down}, {}}, c_ud);
    if (c_du != Amplitude{}) out.add_term(BasisLabel{{Spin::Down, Spin::Up}, {}}, c_du);
    if (c_dd != Amplitude{}) out.add_term(BasisLabel{{Spin::Down, Spin::Down}, {}}, c_dd);
    return out;
}

// The atoms<->photons joint state must factor for a heralded outcome to be
// pure; pulls out the (normalized) atomic part or reports impurity.
PureState extract_atomic_costate(const PureState& joint) {
    // group amplitudes by photonic occupation key
    std::map<std::vector<int>, std::map<std::vector<Spin>, Amplitude>> groups;
    for (const auto& [label, amp] : joint.terms())
        groups[label.occupations][label.atoms] = amp;
    if (groups.empty()) throw std::invalid_argument("empty heralded state");

    const auto& ref = groups.begin()->second;
    double ref_sq = 0.0;
    for (const auto& [atoms, amp] : ref) ref_sq += std::norm(amp);
    for (const auto& [occ, vec] : groups) {
        // scalar that maps ref onto vec, then residual must vanish
        Amplitude c{};
        for (const auto& [atoms, amp] : vec) {
            auto it = ref.find(atoms);
            if (it != ref.end()) c += amp * std::conj(it->second);
        }
        c /= ref_sq;
        double residual = 0.0, scale = 0.0;
        for (const auto& [atoms, amp] : vec) {
            auto it = ref.find(atoms);
            const Amplitude expect = (it != ref.end()) ? c * it->second : Amplitude{};
            residual += std::norm(amp - expect);
            scale += std::norm(amp);
        }
        for (const auto& [atoms, amp] : ref)
            if (vec.find(atoms) == vec.end()) residual += std::norm(c * amp);
        if (residual > 1e-20 + 1e-12 * scale)
            throw std::runtime_error("heralded atomic state is not pure");
    }
    PureState out;
    for (const auto& [atoms, amp] : ref) out.add_term(BasisLabel{atoms, {}}, amp);
    return out.normalized();
}

int port_photons(const PureState& s, const BasisLabel& label, Port port) {
    int n = 0;
    for (std::size_t i = 0; i < s.modes().size(); ++i)
        if (s.modes()[i].port == port) n += label.occupations[i];
    return n;
}

}  // namespace

Port detector_port(DetectorId id) { return id == DetectorId::D1 ? Port::A : Port::B; }

std::string to_string(DetectorId id) { return id == DetectorId::D1 ? "D1" : "D2"; }

DetectionPattern DetectionPattern::none() { return {}; }

DetectionPattern DetectionPattern::single(DetectorId id) {
    return DetectionPattern{{DetectionEvent{id, std::nullopt}}};
}

DetectionPattern DetectionPattern::coincidence() {
    return DetectionPattern{{DetectionEvent{DetectorId::D1, std::nullopt},
                             DetectionEvent{DetectorId::D2, std::nullopt}}};
}

DetectionPattern DetectionPattern::timebin(DetectorId at_t1, DetectorId at_t2) {
    return DetectionPattern{{DetectionEvent{at_t1, Channel::T1},
                             DetectionEvent{at_t2, Channel::T2}}};
}

std::string to_string(const DetectionPattern& pattern) {
    if (pattern.events.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < pattern.events.size(); ++i) {
        if (i) out += "+";
        out += to_string(pattern.events[i].detector);
        if (pattern.events[i].time_bin)
            out += *pattern.events[i].time_bin == Channel::T1 ? "@t1" : "@t2";
    }
    return out;
}

Amplitude path_offset_phase(const PathGeometry& geom) {
    const double phase = geom.delta_omega * geom.delta_x / kSpeedOfLight;
    if (!std::isfinite(phase)) throw std::invalid_argument("non-finite path phase");
    return std::polar(1.0, phase);
}

PureState beamsplitter(const PureState& s) {
    // complete the basis so both ports exist for every channel present
    std::set<Channel> channels;
    for (const Mode& m : s.modes()) channels.insert(m.channel);
    std::vector<Mode> out_modes;
    for (Channel c : channels) {
        out_modes.push_back(Mode{Port::A, c});
        out_modes.push_back(Mode{Port::B, c});
    }
    std::sort(out_modes.begin(), out_modes.end());
    const PureState in = s.aligned_to(out_modes);

    std::vector<std::pair<std::size_t, std::size_t>> channel_slots;
    for (Channel c : channels) {
        const auto at = [&](Port p) {
            return static_cast<std::size_t>(
                std::find(out_modes.begin(), out_modes.end(), Mode{p, c}) -
                out_modes.begin());
        };
        channel_slots.emplace_back(at(Port::A), at(Port::B));
    }

    PureState out(out_modes);
    for (const auto& [label, amp] : in.terms()) {
        std::vector<std::pair<std::vector<int>, Amplitude>> acc = {
            {std::vector<int>(out_modes.size(), 0), amp}};
        for (const auto& [slot_a, slot_b] : channel_slots) {
            const int n_a = label.occupations[slot_a];
            const int n_b = label.occupations[slot_b];
            if (n_a > 2 || n_b > 2)
                throw std::invalid_argument(
                    "beamsplitter: occupation above 2 in a single mode");
            const auto split = split_channel(n_a, n_b);
            std::vector<std::pair<std::vector<int>, Amplitude>> next;
            next.reserve(acc.size() * split.size());
            for (const auto& [occ, a] : acc) {
                for (const auto& [j, coeff] : split) {
                    auto occ2 = occ;
                    occ2[slot_a] = j;
                    occ2[slot_b] = n_a + n_b - j;
                    next.emplace_back(std::move(occ2), a * coeff);
                }
            }
            acc = std::move(next);
        }
        for (auto& [occ, a] : acc)
            out.add_term(BasisLabel{label.atoms, std::move(occ)}, a);
    }
    return out;
}

HeraldOutcome type1_herald(double p_e, const PathGeometry& geom, double eta_det,
                           DetectorId which, bool exact) {
    require_unit_interval(p_e, "p_e");
    require_unit_interval(eta_det, "eta_det");

    HeraldOutcome out;
    out.pattern = DetectionPattern::single(which);
    if (p_e > 0.2)
        out.warnings.push_back("p_e above the weak-excitation regime (p_e <= 0.2)");

    if (p_e == 0.0 || eta_det == 0.0) return out;

    const double phi = geom.delta_k * geom.delta_x;
    const Amplitude rel = (which == DetectorId::D1 ? 1.0 : -1.0) * std::polar(1.0, phi);
    out.atomic_state =
        two_atom_state(Amplitude{1.0, 0.0}, rel).scaled(1.0 / std::sqrt(2.0));

    if (!exact) {
        out.probability = 2.0 * p_e * eta_det;
        out.infidelity_floor = p_e;
        return out;
    }

    // Full two-emitter treatment: keep the order-p_e^2 double-scattering term
    // and push everything through the beamsplitter and threshold detectors.
    PureState pair_a({Mode{Port::A, Channel::None}});
    pair_a.add_term(BasisLabel{{Spin::Up}, {0}}, std::sqrt(1.0 - p_e));
    pair_a.add_term(BasisLabel{{Spin::Down}, {1}},
                    std::sqrt(p_e) * std::polar(1.0, phi));
    PureState pair_b({Mode{Port::B, Channel::None}});
    pair_b.add_term(BasisLabel{{Spin::Up}, {0}}, std::sqrt(1.0 - p_e));
    pair_b.add_term(BasisLabel{{Spin::Down}, {1}}, std::sqrt(p_e));

    const PureState post = beamsplitter(tensor(pair_a, pair_b));
    const double eta = eta_det;
    double single_click = 0.0;
    double single_click_two_photon = 0.0;
    for (const auto& [label, amp] : post.terms()) {
        const int n_a = port_photons(post, label, Port::A);
        const int n_b = port_photons(post, label, Port::B);
        const double w = std::norm(amp);
        // exactly one detector fires
        const double p_only_a =
            (1.0 - std::pow(1.0 - eta, n_a)) * std::pow(1.0 - eta, n_b);
        const double p_only_b =
            (1.0 - std::pow(1.0 - eta, n_b)) * std::pow(1.0 - eta, n_a);
        single_click += w * (p_only_a + p_only_b);
        if (n_a + n_b == 2) single_click_two_photon += w * (p_only_a + p_only_b);
    }
    out.probability = single_click;
    out.infidelity_floor =
        single_click > 0.0 ? single_click_two_photon / single_click : 0.0;
    return out;
}

double type1_success(double p_ap, double eta_det) {
    require_unit_interval(p_ap, "P_ap");
    require_unit_interval(eta_det, "eta_det");
    return 2.0 * p_ap * eta_det;
}

double type1_recoil_fidelity(double eta, double nbar) {
    if (eta < 0.0 || nbar < 0.0)
        throw std::invalid_argument("eta and nbar must be non-negative");
    const double f = 1.0 - 4.0 * eta * eta * (nbar + 0.5);
    return std::clamp(f, 0.0, 1.0);
}

bool within_lamb_dicke_limit(double eta, double nbar) {
    return eta * eta * nbar <= 0.1;
}

BellDecomposition bell_decompose(const PureState& s) {
    if (s.atom_count() != 2)
        throw std::invalid_argument("bell_decompose: expected a two-atom state");
    if (s.empty()) throw std::invalid_argument("bell_decompose: empty state");

    std::set<Channel> channel_set;
    for (const Mode& m : s.modes()) channel_set.insert(m.channel);
    if (channel_set.size() != 2 || s.modes().size() != 4)
        throw std::invalid_argument(
            "bell_decompose: expected two photonic qubits over two channels");
    const std::vector<Channel> chans(channel_set.begin(), channel_set.end());

    const auto slot = [&](Port p, Channel c) {
        auto it = std::find(s.modes().begin(), s.modes().end(), Mode{p, c});
        if (it == s.modes().end())
            throw std::invalid_argument("bell_decompose: missing mode for a port");
        return static_cast<std::size_t>(it - s.modes().begin());
    };
    const std::array<std::array<std::size_t, 2>, 2> slots = {
        {{slot(Port::A, chans[0]), slot(Port::A, chans[1])},
         {slot(Port::B, chans[0]), slot(Port::B, chans[1])}}};

    // Which channel encodes P_up: inferred from the atom<->photon correlation.
    std::optional<Channel> up_channel;
    for (const auto& [label, amp] : s.terms()) {
        for (int side = 0; side < 2; ++side) {
            const int n0 = label.occupations[slots[side][0]];
            const int n1 = label.occupations[slots[side][1]];
            if (n0 + n1 != 1 || std::min(n0, n1) != 0)
                throw std::invalid_argument(
                    "bell_decompose: each port must carry exactly one photon");
            const Channel occupied = n0 == 1 ? chans[0] : chans[1];
            const Channel implied = label.atoms[side] == Spin::Up
                                        ? occupied
                                        : (occupied == chans[0] ? chans[1] : chans[0]);
            if (up_channel && *up_channel != implied)
                throw std::invalid_argument(
                    "bell_decompose: atom-photon correlation is inconsistent");
            up_channel = implied;
        }
    }
    const Channel cu = *up_channel;
    const Channel cd = cu == chans[0] ? chans[1] : chans[0];

    const auto c_of = [&](Spin i, Spin j) {
        BasisLabel label{{i, j}, std::vector<int>(4, 0)};
        label.occupations[slot(Port::A, i == Spin::Up ? cu : cd)] = 1;
        label.occupations[slot(Port::B, j == Spin::Up ? cu : cd)] = 1;
        return s.amplitude(label);
    };
    const Amplitude c_uu = c_of(Spin::Up, Spin::Up);
    const Amplitude c_ud = c_of(Spin::Up, Spin::Down);
    const Amplitude c_du = c_of(Spin::Down, Spin::Up);
    const Amplitude c_dd = c_of(Spin::Down, Spin::Down);

    const auto photon_pair = [&](Channel ca, Channel cb, Amplitude amp,
                                 PureState& into) {
        BasisLabel label{{}, std::vector<int>(4, 0)};
        label.occupations[slot(Port::A, ca)] = 1;
        label.occupations[slot(Port::B, cb)] = 1;
        into.add_term(std::move(label), amp);
    };
    const double r2 = 1.0 / std::sqrt(2.0);

    BellDecomposition out;
    for (int i = 0; i < 4; ++i) out.photonic[i] = PureState(s.modes());
    photon_pair(cu, cu, r2, out.photonic[0]);
    photon_pair(cd, cd, r2, out.photonic[0]);
    photon_pair(cu, cu, r2, out.photonic[1]);
    photon_pair(cd, cd, -r2, out.photonic[1]);
    photon_pair(cu, cd, r2, out.photonic[2]);
    photon_pair(cd, cu, r2, out.photonic[2]);
    photon_pair(cu, cd, r2, out.photonic[3]);
    photon_pair(cd, cu, -r2, out.photonic[3]);

    out.atomic[0] = two_atom_state({}, {}, c_uu * r2, c_dd * r2);
    out.atomic[1] = two_atom_state({}, {}, c_uu * r2, -c_dd * r2);
    out.atomic[2] = two_atom_state(c_ud * r2, c_du * r2);
    out.atomic[3] = two_atom_state(c_ud * r2, -c_du * r2);
    return out;
}

HeraldOutcome type2_herald(Amplitude alpha_a, Amplitude beta_a, Amplitude alpha_b,
                           Amplitude beta_b, QubitKind kind,
                           const DetectionPattern& pattern, double eta_det,
                           const std::optional<PathGeometry>& geom) {
    if (kind != QubitKind::Frequency && kind != QubitKind::Timebin)
        throw std::invalid_argument("type2_herald: kind must be frequency or timebin");
    require_qubit_normalized(alpha_a, beta_a, "A");
    require_qubit_normalized(alpha_b, beta_b, "B");
    require_unit_interval(eta_det, "eta_det");

    if (pattern.events.size() != 2)
        throw std::invalid_argument("type2_herald: expected a two-click pattern");
    if (kind == QubitKind::Frequency) {
        if (pattern.events[0].time_bin || pattern.events[1].time_bin)
            throw std::invalid_argument(
                "type2_herald: time labels are inconsistent with frequency qubits");
        if (pattern.events[0].detector == pattern.events[1].detector)
            throw std::invalid_argument(
                "type2_herald: frequency heralding requires both detectors");
    } else {
        if (!pattern.events[0].time_bin || !pattern.events[1].time_bin ||
            *pattern.events[0].time_bin == *pattern.events[1].time_bin)
            throw std::invalid_argument(
                "type2_herald: time-bin patterns need one event per time bin");
    }

    const auto [cu, cd] = channels_for(kind);
    PureState pair_a({Mode{Port::A, cu}, Mode{Port::A, cd}});
    pair_a.add_term(BasisLabel{{Spin::Up}, {1, 0}}, alpha_a);
    pair_a.add_term(BasisLabel{{Spin::Down}, {0, 1}}, beta_a);
    PureState pair_b({Mode{Port::B, cu}, Mode{Port::B, cd}});
    pair_b.add_term(BasisLabel{{Spin::Up}, {1, 0}}, alpha_b);
    pair_b.add_term(BasisLabel{{Spin::Down}, {0, 1}}, beta_b);

    const PureState post = beamsplitter(tensor(pair_a, pair_b));

    OccupationPredicate pred;
    if (kind == QubitKind::Frequency) {
        pred = [](std::span<const Mode> modes, std::span<const int> occ) {
            int a = 0, b = 0;
            for (std::size_t i = 0; i < modes.size(); ++i)
                (modes[i].port == Port::A ? a : b) += occ[i];
            return a == 1 && b == 1;
        };
    } else {
        const DetectionEvent& e0 = pattern.events[0];
        const DetectionEvent& e1 = pattern.events[1];
        const Port p_t1 =
            detector_port((*e0.time_bin == Channel::T1 ? e0 : e1).detector);
        const Port p_t2 =
            detector_port((*e0.time_bin == Channel::T2 ? e0 : e1).detector);
        pred = [p_t1, p_t2](std::span<const Mode> modes, std::span<const int> occ) {
            for (std::size_t i = 0; i < modes.size(); ++i) {
                const Port want = modes[i].channel == Channel::T1 ? p_t1 : p_t2;
                const int expect = modes[i].port == want ? 1 : 0;
                if (occ[i] != expect) return false;
            }
            return true;
        };
    }

    HeraldOutcome out;
    out.pattern = pattern;
    const Projection proj = project(post, pred);
    out.probability = proj.probability * eta_det * eta_det;
    if (proj.probability == 0.0) return out;

    PureState atomic = extract_atomic_costate(proj.state);
    if (geom) {
        const Amplitude phase = path_offset_phase(*geom);
        PureState shifted;
        for (const auto& [label, amp] : atomic.terms()) {
            const bool is_du =
                label.atoms == std::vector<Spin>{Spin::Down, Spin::Up};
            shifted.add_term(label, is_du ? amp * phase : amp);
        }
        atomic = shifted;
    }
    out.atomic_state = std::move(atomic);
    return out;
}

double type2_success(double p_ap, double eta_det, double p_b) {
    require_unit_interval(p_ap, "P_ap");
    require_unit_interval(eta_det, "eta_det");
    require_unit_interval(p_b, "p_B");
    const double x = p_ap * eta_det;
    return p_b * x * x;
}

double default_bell_fraction(QubitKind kind) {
    switch (kind) {
        case QubitKind::Frequency: return 0.25;
        case QubitKind::Timebin: return 0.5;
        default:
            throw std::invalid_argument(
                "no default Bell-detection fraction for this qubit kind; supply p_B");
    }
}

std::vector<PatternProbability> detection_outcome_probabilities(
    const PureState& post_bs, double eta_det, bool time_resolving) {
    require_unit_interval(eta_det, "eta_det");

    struct Cell {
        Port port;
        std::optional<Channel> time_bin;
    };
    std::vector<Cell> cells;
    if (time_resolving) {
        for (Port p : {Port::A, Port::B})
            for (Channel c : {Channel::T1, Channel::T2}) cells.push_back({p, c});
    } else {
        cells.push_back({Port::A, std::nullopt});
        cells.push_back({Port::B, std::nullopt});
    }

    const auto cell_count = [&](const BasisLabel& label, const Cell& cell) {
        int n = 0;
        for (std::size_t i = 0; i < post_bs.modes().size(); ++i) {
            const Mode& m = post_bs.modes()[i];
            if (m.port != cell.port) continue;
            if (cell.time_bin && m.channel != *cell.time_bin) continue;
            n += label.occupations[i];
        }
        return n;
    };

    std::vector<PatternProbability> out;
    const std::size_t n_outcomes = std::size_t{1} << cells.size();
    for (std::size_t mask = 0; mask < n_outcomes; ++mask) {
        double prob = 0.0;
        for (const auto& [label, amp] : post_bs.terms()) {
            double p = std::norm(amp);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const int n = cell_count(label, cells[c]);
                const double miss = std::pow(1.0 - eta_det, n);
                p *= (mask >> c) & 1 ? 1.0 - miss : miss;
            }
            prob += p;
        }
        if (prob <= 0.0) continue;
        DetectionPattern pattern;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if ((mask >> c) & 1)
                pattern.events.push_back(DetectionEvent{
                    cells[c].port == Port::A ? DetectorId::D1 : DetectorId::D2,
                    cells[c].time_bin});
        out.push_back({std::move(pattern), prob});
    }
    return out;
}

std::vector<PatternProbability> type1_pattern_probabilities(double p_e,
                                                            const PathGeometry& geom,
                                                            double eta_det) {
    require_unit_interval(p_e, "p_e");
    const double phi = geom.delta_k * geom.delta_x;
    PureState pair_a({Mode{Port::A, Channel::None}});
    pair_a.add_term(BasisLabel{{Spin::Up}, {0}}, std::sqrt(1.0 - p_e));
    pair_a.add_term(BasisLabel{{Spin::Down}, {1}},
                    std::sqrt(p_e) * std::polar(1.0, phi));
    PureState pair_b({Mode{Port::B, Channel::None}});
    pair_b.add_term(BasisLabel{{Spin::Up}, {0}}, std::sqrt(1.0 - p_e));
    pair_b.add_term(BasisLabel{{Spin::Down}, {1}}, std::sqrt(p_e));
    return detection_outcome_probabilities(beamsplitter(tensor(pair_a, pair_b)),
                                           eta_det, false);
}

std::vector<PatternProbability> type2_pattern_probabilities(
    Amplitude alpha_a, Amplitude beta_a, Amplitude alpha_b, Amplitude beta_b,
    QubitKind kind, double eta_det) {
    if (kind != QubitKind::Frequency && kind != QubitKind::Timebin)
        throw std::invalid_argument("kind must be frequency or timebin");
    require_qubit_normalized(alpha_a, beta_a, "A");
    require_qubit_normalized(alpha_b, beta_b, "B");
    const auto [cu, cd] = channels_for(kind);
    PureState pair_a({Mode{Port::A, cu}, Mode{Port::A, cd}});
    pair_a.add_term(BasisLabel{{Spin::Up}, {1, 0}}, alpha_a);
    pair_a.add_term(BasisLabel{{Spin::Down}, {0, 1}}, beta_a);
    PureState pair_b({Mode{Port::B, cu}, Mode{Port::B, cd}});
    pair_b.add_term(BasisLabel{{Spin::Up}, {1, 0}}, alpha_b);
    pair_b.add_term(BasisLabel{{Spin::Down}, {0, 1}}, beta_b);
    return detection_outcome_probabilities(beamsplitter(tensor(pair_a, pair_b)),
                                           eta_det, kind == QubitKind::Timebin);
}

std::string herald_record_json(const HeraldOutcome& outcome,
                               const std::string& protocol) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol;
    j["pattern"] = to_string(outcome.pattern);
    j["probability"] = outcome.probability;
    auto& terms = j["atomic_state"] = nlohmann::ordered_json::array();
    for (const auto& [label, amp] : outcome.atomic_state.terms())
        terms.push_back({to_string(label), amp.real(), amp.imag()});
    j["infidelity_floor"] = outcome.infidelity_floor;
    j["warnings"] = outcome.warnings;
    return j.dump(2) + "\n";
}

}  // namespace ionnet
