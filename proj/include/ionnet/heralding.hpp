#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ionnet/hilbert.hpp"
#include "ionnet/photon_source.hpp"

namespace ionnet {

// D1 watches output port A, D2 output port B (fixed convention; the sign of
// the type I herald state follows it: + for D1, - for D2).
enum class DetectorId : std::uint8_t { D1, D2 };

Port detector_port(DetectorId id);
std::string to_string(DetectorId id);

// PMT model: threshold (not number-resolving) and frequency-blind; arrival
// times are resolvable when resolves_time is set.
struct Detector {
    DetectorId id = DetectorId::D1;
    double efficiency = 1.0;
    bool resolves_time = false;
    static constexpr bool resolves_frequency = false;
};

struct DetectionEvent {
    DetectorId detector;
    std::optional<Channel> time_bin;  // T1/T2 when time-resolved, else empty
    auto operator<=>(const DetectionEvent&) const = default;
};

struct DetectionPattern {
    std::vector<DetectionEvent> events;  // empty = no click
    auto operator<=>(const DetectionPattern&) const = default;

    static DetectionPattern none();
    static DetectionPattern single(DetectorId id);
    static DetectionPattern coincidence();  // D1 and D2, no time labels
    static DetectionPattern timebin(DetectorId at_t1, DetectorId at_t2);
};

std::string to_string(const DetectionPattern& pattern);

struct HeraldOutcome {
    PureState atomic_state;                 // normalized when probability > 0
    double probability = 0.0;
    DetectionPattern pattern;
    double infidelity_floor = 0.0;          // undetected-extra-photon weight (type I)
    std::vector<std::string> warnings;
};

// Interferometer geometry: phase Delta_k * Delta_x for type I, and the
// frequency-splitting phase Delta_omega * Delta_x / c for type II.
struct PathGeometry {
    double delta_k = 0.0;        // wavevector difference, 1/m
    double delta_x = 0.0;        // path-length difference, m
    double delta_omega = 0.0;    // qubit frequency splitting, rad/s
};

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

// e^{i Delta_omega Delta_x / c}; unit modulus.
Amplitude path_offset_phase(const PathGeometry& geom);

/// 50:50 beamsplitter acting channel-by-channel between ports A and B.
/// Creation operators map as a_A -> (a_A - a_B)/sqrt(2),
/// a_B -> (a_A + a_B)/sqrt(2); unitary, norm preserving. Occupations above
/// 2 in a single mode are outside the modeled regime and rejected.
PureState beamsplitter(const PureState& s);

// --- Type I: one photon total ---------------------------------------------

// Herald state (|ud> ± e^{i phi}|du>)/sqrt(2) with phi = delta_k*delta_x and
// the sign set by the detector. The reported probability is the protocol
// success rate P_I = 2 p_e eta_det (either detector) in the default
// O(p_e)-truncated treatment; with exact=true the full two-emitter state is
// carried through the beamsplitter and threshold detection instead, and the
// two-photon contamination of single-click events is reported as
// infidelity_floor.
HeraldOutcome type1_herald(double p_e, const PathGeometry& geom, double eta_det,
                           DetectorId which, bool exact = false);

// P_I = 2 P_ap eta_det.
double type1_success(double p_ap, double eta_det);

// Recoil-limited fidelity 1 - 4 eta^2 (nbar + 1/2), clamped to [0,1].
// Valid deep in the Lamb-Dicke regime (eta^2 nbar << 1).
double type1_recoil_fidelity(double eta, double nbar);

// Regime check for the formula above: eta^2 nbar <= 0.1.
bool within_lamb_dicke_limit(double eta, double nbar);

// --- Type II: one photon from each atom ------------------------------------

struct BellDecomposition {
    // Order: phi+, phi-, psi+, psi-. atomic[i] holds the unnormalized
    // co-state; sum_i tensor(atomic[i], photonic[i]) reconstructs the input.
    std::array<PureState, 4> photonic;
    std::array<PureState, 4> atomic;
    static constexpr std::array<const char*, 4> names = {"phi+", "phi-", "psi+",
                                                         "psi-"};
};

// Decomposes a two-pair joint state (each atom correlated with its own
// photonic qubit, one photon per port) into photonic Bell states with
// attached atomic co-states.
BellDecomposition bell_decompose(const PureState& s);

// Heralded gate: atoms prepared in (alpha_a, beta_a) and (alpha_b, beta_b),
// photonic qubits carrying the amplitudes through the beamsplitter; the
// detection pattern projects the atoms. Frequency kind accepts the
// coincidence pattern; time-bin accepts the four ordered two-click patterns
// (different detectors -> psi- co-state, same detector -> psi+). The
// reported probability is the exact pattern probability including
// eta_det^2. When geom is given, the e^{i Delta_omega Delta_x/c} offset
// phase multiplies the |du> component.
HeraldOutcome type2_herald(Amplitude alpha_a, Amplitude beta_a, Amplitude alpha_b,
                           Amplitude beta_b, QubitKind kind,
                           const DetectionPattern& pattern, double eta_det = 1.0,
                           const std::optional<PathGeometry>& geom = std::nullopt);

// P_II = p_B (P_ap eta_det)^2. Defaults: p_B = 1/4 (frequency), 1/2
// (time-bin); polarization has no derived default here and requires an
// explicit value.
double type2_success(double p_ap, double eta_det, double p_b);
double default_bell_fraction(QubitKind kind);

// --- Exact detection sweep --------------------------------------------------

struct PatternProbability {
    DetectionPattern pattern;
    double probability;
};

// Threshold-detection outcome distribution for a post-beamsplitter state:
// every click pattern (including "no click") with its exact probability.
// Probabilities sum to 1. time_resolving splits each port into T1/T2 cells.
std::vector<PatternProbability> detection_outcome_probabilities(
    const PureState& post_bs, double eta_det, bool time_resolving);

// Same sweep for the full type I two-emitter input at the given p_e.
std::vector<PatternProbability> type1_pattern_probabilities(double p_e,
                                                            const PathGeometry& geom,
                                                            double eta_det);

// Same sweep for the type II joint input.
std::vector<PatternProbability> type2_pattern_probabilities(
    Amplitude alpha_a, Amplitude beta_a, Amplitude alpha_b, Amplitude beta_b,
    QubitKind kind, double eta_det);

// Serialized record {protocol, pattern, probability, atomic_state}.
std::string herald_record_json(const HeraldOutcome& outcome,
                               const std::string& protocol);

}  // namespace ionnet
