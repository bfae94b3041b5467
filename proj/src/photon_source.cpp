#include "ionnet/photon_source.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ionnet/config.hpp"

namespace ionnet {

namespace {

constexpr double kInputNormTol = 1e-9;

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

void require_normalized_pair(Amplitude alpha, Amplitude beta) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1.0) > kInputNormTol)
        throw std::invalid_argument("qubit amplitudes must satisfy |alpha|^2+|beta|^2=1");
}

// Two-channel pair state amp_up|up>|1,0> + amp_down|down>|0,1>.
PureState two_channel_pair(Amplitude amp_up, Amplitude amp_down, Port port,
                           Channel up_channel, Channel down_channel) {
    PureState out({Mode{port, up_channel}, Mode{port, down_channel}});
    out.add_term(BasisLabel{{Spin::Up}, {1, 0}}, amp_up);
    out.add_term(BasisLabel{{Spin::Down}, {0, 1}}, amp_down);
    return out;
}

}  // namespace

std::string to_string(QubitKind kind) {
    switch (kind) {
        case QubitKind::Number: return "number";
        case QubitKind::Polarization: return "polarization";
        case QubitKind::Frequency: return "frequency";
        case QubitKind::Timebin: return "timebin";
    }
    return "?";
}

std::pair<Channel, Channel> channels_for(QubitKind kind) {
    switch (kind) {
        case QubitKind::Number: return {Channel::None, Channel::None};
        case QubitKind::Polarization: return {Channel::H, Channel::V};
        case QubitKind::Frequency: return {Channel::Red, Channel::Blue};
        case QubitKind::Timebin: return {Channel::T1, Channel::T2};
    }
    throw std::invalid_argument("unknown qubit kind");
}

double LevelPreset::effective_excitation_probability() const {
    if (!p_e)
        throw std::invalid_argument("preset '" + name + "' has no p_e set; supply one");
    return *p_e / branch_divisor;
}

std::vector<std::string> preset_names() {
    return {"uv_number",          "uv_polarization", "uv_frequency", "uv_timebin",
            "ir935_polarization", "ir935_frequency", "ir1300_frequency"};
}

LevelPreset preset(const std::string& name) {
    // Branch divisors: UV decays stay on the cycling transition (1); the
    // 935 nm path loses 55:1 against it (divisor 56) and the 1.3 um path
    // 475:1 (divisor 476).
    if (name == "uv_number") return {name, 370.0, std::nullopt, 1.0, "UV number qubit"};
    if (name == "uv_polarization")
        return {name, 370.0, std::nullopt, 1.0, "UV polarization qubit"};
    if (name == "uv_frequency") return {name, 370.0, std::nullopt, 1.0, "UV frequency qubit"};
    if (name == "uv_timebin") return {name, 370.0, std::nullopt, 1.0, "UV time-bin qubit"};
    if (name == "ir935_polarization")
        return {name, 935.0, std::nullopt, 56.0, "IR polarization qubit, 55:1 branching"};
    if (name == "ir935_frequency")
        return {name, 935.0, std::nullopt, 56.0, "IR frequency qubit, 55:1 branching"};
    if (name == "ir1300_frequency")
        return {name, 1300.0, std::nullopt, 476.0, "IR frequency qubit, 475:1 branching"};
    std::string msg = "unknown preset '" + name + "'; valid names:";
    for (const auto& n : preset_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

std::vector<LevelPreset> load_presets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open preset file: " + path);
    std::vector<LevelPreset> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto kv = parse_kv_line(line);
        if (!kv) continue;
        const auto& [key, value] = *kv;
        if (key == "name") {
            out.push_back(LevelPreset{value, 0.0, std::nullopt, 1.0, ""});
            continue;
        }
        if (out.empty())
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": key before any name= record");
        LevelPreset& p = out.back();
        if (key == "wavelength_nm") p.wavelength_nm = std::stod(value);
        else if (key == "p_e") p.p_e = std::stod(value);
        else if (key == "branch_divisor") p.branch_divisor = std::stod(value);
        else if (key == "notes") p.notes = value;
        else
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown preset key '" + key + "'");
    }
    for (const auto& p : out) {
        if (p.p_e && !(*p.p_e > 0.0 && *p.p_e <= 1.0))
            throw std::invalid_argument("preset '" + p.name + "': p_e outside (0,1]");
        if (p.branch_divisor < 1.0)
            throw std::invalid_argument("preset '" + p.name + "': branch_divisor < 1");
    }
    return out;
}

PureState make_number_pair(double p_e, Port port) {
    require_probability(p_e, "p_e");
    PureState out({Mode{port, Channel::None}});
    out.add_term(BasisLabel{{Spin::Up}, {0}}, Amplitude{std::sqrt(1.0 - p_e), 0.0});
    out.add_term(BasisLabel{{Spin::Down}, {1}}, Amplitude{std::sqrt(p_e), 0.0});
    return out;
}

PureState make_polarization_pair(double p_up, double p_down, Port port) {
    require_probability(p_up, "p_up");
    require_probability(p_down, "p_down");
    if (std::abs(p_up + p_down - 1.0) > kInputNormTol)
        throw std::invalid_argument("p_up + p_down must equal 1");
    return two_channel_pair(std::sqrt(p_up), std::sqrt(p_down), port, Channel::H,
                            Channel::V);
}

PureState make_frequency_pair(Amplitude alpha, Amplitude beta, Port port) {
    require_normalized_pair(alpha, beta);
    return two_channel_pair(alpha, beta, port, Channel::Red, Channel::Blue);
}

PureState make_timebin_pair(Amplitude alpha, Amplitude beta, Port port) {
    require_normalized_pair(alpha, beta);
    PureState out({Mode{port, Channel::T1}, Mode{port, Channel::T2}});
    out.add_term(BasisLabel{{Spin::Up}, {0, 1}}, beta);
    out.add_term(BasisLabel{{Spin::Down}, {1, 0}}, -alpha);
    return out;
}

double resolvable(const ResolvabilityCheck& check, QubitKind kind) {
    if (!(check.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    switch (kind) {
        case QubitKind::Frequency:
            return check.gamma / check.delta;
        case QubitKind::Timebin:
            return std::exp(-check.gamma * std::abs(check.delta));
        default:
            throw std::invalid_argument("resolvability is defined only for frequency "
                                        "and time-bin qubits");
    }
}

}  // namespace ionnet
