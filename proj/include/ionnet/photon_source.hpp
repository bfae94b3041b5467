#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ionnet/hilbert.hpp"

namespace ionnet {

enum class QubitKind { Number, Polarization, Frequency, Timebin };

std::string to_string(QubitKind kind);

// Channel pair used by a photonic-qubit kind, in (P_up, P_down) order.
// Number qubits use the single None channel for both slots.
std::pair<Channel, Channel> channels_for(QubitKind kind);

// Level-scheme preset: a parameter bundle, not simulated dynamics. The
// effective excitation probability is p_e / branch_divisor; p_e itself has
// no universal default and must be supplied by the user.
struct LevelPreset {
    std::string name;
    double wavelength_nm = 0.0;
    std::optional<double> p_e;
    double branch_divisor = 1.0;
    std::string notes;

    double effective_excitation_probability() const;
};

// Named presets: uv_number, uv_polarization, uv_frequency, uv_timebin,
// ir935_polarization, ir935_frequency, ir1300_frequency.
LevelPreset preset(const std::string& name);
std::vector<std::string> preset_names();

// Loads presets from a key=value file; a `name=` line starts a new record.
// Keys: name, wavelength_nm, p_e, branch_divisor, notes.
std::vector<LevelPreset> load_presets(const std::string& path);

// sqrt(1-p_e)|up>|0> + sqrt(p_e)|down>|1>, photon at the given port.
PureState make_number_pair(double p_e, Port port = Port::A);

// sqrt(p_up)|up>|1_H 0_V> + sqrt(p_down)|down>|0_H 1_V>.
PureState make_polarization_pair(double p_up, double p_down, Port port = Port::A);

// alpha|up>|1_r 0_b> + beta|down>|0_r 1_b>; preserves the qubit amplitudes.
PureState make_frequency_pair(Amplitude alpha, Amplitude beta, Port port = Port::A);

// beta|up>|0_t1 1_t2> - alpha|down>|1_t1 0_t2>: the emission-time encoding
// carries a fixed amplitude swap and sign from the intermediate pi pulse.
PureState make_timebin_pair(Amplitude alpha, Amplitude beta, Port port = Port::A);

struct ResolvabilityCheck {
    double delta;   // angular-frequency splitting, or time separation
    double gamma;   // transition linewidth (angular frequency)
};

// Continuous resolvability metric; smaller is better resolved. Frequency
// kind: gamma/delta. Time-bin kind: exp(-gamma*delta). Callers compare to a
// threshold (0.01 by convention). Other kinds have no resolvability notion.
double resolvable(const ResolvabilityCheck& check, QubitKind kind);

inline constexpr double kResolvabilityThreshold = 0.01;

}  // namespace ionnet
