// ionnet command-line front end: wires flat key=value configs and flags to
// the calculators and emits CSV/JSON artifacts. Exit codes: 0 success,
// 1 validation failure, 2 numerical failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ionnet/config.hpp"
#include "ionnet/heralding.hpp"
#include "ionnet/hilbert.hpp"
#include "ionnet/ion_crystal.hpp"
#include "ionnet/light_collection.hpp"
#include "ionnet/network_estimator.hpp"
#include "ionnet/photon_source.hpp"

namespace {

using ionnet::Amplitude;
using nlohmann::ordered_json;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Key/value bag per command: config-file values overlaid by flags.
class Params {
public:
    void set_file_values(const std::map<std::string, std::string>& kv) {
        for (const auto& [k, v] : kv) values_.try_emplace(k, v);
    }
    void set_flag(const std::string& key, const std::string& value) {
        values_[key] = value;  // flags override file values
    }
    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_number(const std::string& key, std::optional<double> fallback,
                      std::vector<std::string>& violations) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            if (fallback) return *fallback;
            violations.push_back("missing required key '" + key + "'");
            return 0.0;
        }
        try {
            std::size_t used = 0;
            const std::string& text = it->second;
            if (text == "inf") return ionnet::kInfiniteRadius;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            violations.push_back("key '" + key + "': not a number");
            return 0.0;
        }
    }

private:
    std::map<std::string, std::string> values_;
};

void require_range(double v, double lo, double hi, const std::string& key,
                   std::vector<std::string>& violations) {
    if (!(v >= lo && v <= hi))
        violations.push_back("key '" + key + "': out of range [" + std::to_string(lo) +
                             "," + std::to_string(hi) + "]");
}

std::string resolve_output(const std::string& path) {
    if (path.empty() || path == "-") return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("IONNET_OUTPUT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        return (std::filesystem::path(dir) / p).string();
    }
    return path;
}

void write_text(const std::string& path, const std::string& body) {
    const std::string resolved = resolve_output(path);
    if (resolved.empty() || resolved == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + resolved);
    out << body;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string human_duration(double seconds) {
    const double years = ionnet::seconds_to_years(seconds);
    char buf[64];
    if (years >= 1.0) {
        std::snprintf(buf, sizeof buf, "%.4g years", years);
    } else if (seconds >= 1.0) {
        std::snprintf(buf, sizeof buf, "%.4g s", seconds);
    } else if (seconds >= 1e-3) {
        std::snprintf(buf, sizeof buf, "%.4g ms", seconds * 1e3);
    } else {
        std::snprintf(buf, sizeof buf, "%.4g us", seconds * 1e6);
    }
    return buf;
}

int fail_validation(const std::vector<std::string>& violations) {
    for (const auto& v : violations) std::cerr << "error: " << v << "\n";
    return 1;
}

// ---- herald ----------------------------------------------------------------

int run_herald(const Params& p) {
    std::vector<std::string> violations;
    const std::string protocol = p.get_string("protocol", "");
    if (protocol != "type1" && protocol != "type2")
        violations.push_back("key 'protocol': must be type1 or type2");
    const double eta_det = p.get_number("eta-det", 1.0, violations);
    require_range(eta_det, 0.0, 1.0, "eta-det", violations);

    ionnet::HeraldOutcome outcome;
    if (protocol == "type1") {
        const double p_e = p.get_number("p-e", std::nullopt, violations);
        if (!violations.empty()) return fail_validation(violations);
        require_range(p_e, 0.0, 1.0, "p-e", violations);
        const std::string det = p.get_string("detector", "d1");
        if (det != "d1" && det != "d2")
            violations.push_back("key 'detector': must be d1 or d2");
        ionnet::PathGeometry geom;
        geom.delta_k = p.get_number("delta-k", 0.0, violations);
        geom.delta_x = p.get_number("delta-x", 0.0, violations);
        const bool exact = p.get_number("exact", 0.0, violations) != 0.0;
        if (!violations.empty()) return fail_validation(violations);
        outcome = ionnet::type1_herald(
            p_e, geom, eta_det,
            det == "d1" ? ionnet::DetectorId::D1 : ionnet::DetectorId::D2, exact);
    } else if (protocol == "type2") {
        const std::string kind_name = p.get_string("kind", "");
        ionnet::QubitKind kind{};
        if (kind_name == "frequency") kind = ionnet::QubitKind::Frequency;
        else if (kind_name == "timebin") kind = ionnet::QubitKind::Timebin;
        else violations.push_back("key 'kind': must be frequency or timebin");

        const auto amp = [&](const std::string& stem, double re0) {
            return Amplitude(p.get_number(stem + "-re", re0, violations),
                             p.get_number(stem + "-im", 0.0, violations));
        };
        const Amplitude aa = amp("alpha-a", kInvSqrt2);
        const Amplitude ba = amp("beta-a", kInvSqrt2);
        const Amplitude ab = amp("alpha-b", kInvSqrt2);
        const Amplitude bb = amp("beta-b", kInvSqrt2);

        const std::string pat = p.get_string("pattern", "coincidence");
        std::optional<ionnet::DetectionPattern> pattern;
        if (pat == "coincidence") pattern = ionnet::DetectionPattern::coincidence();
        else if (pat == "d1t1,d2t2")
            pattern = ionnet::DetectionPattern::timebin(ionnet::DetectorId::D1,
                                                        ionnet::DetectorId::D2);
        else if (pat == "d2t1,d1t2")
            pattern = ionnet::DetectionPattern::timebin(ionnet::DetectorId::D2,
                                                        ionnet::DetectorId::D1);
        else if (pat == "d1t1,d1t2")
            pattern = ionnet::DetectionPattern::timebin(ionnet::DetectorId::D1,
                                                        ionnet::DetectorId::D1);
        else if (pat == "d2t1,d2t2")
            pattern = ionnet::DetectionPattern::timebin(ionnet::DetectorId::D2,
                                                        ionnet::DetectorId::D2);
        else
            violations.push_back(
                "key 'pattern': must be coincidence or a dXt1,dXt2 pair");

        std::optional<ionnet::PathGeometry> geom;
        if (p.has("delta-omega") || p.has("delta-x")) {
            ionnet::PathGeometry g;
            g.delta_omega = p.get_number("delta-omega", 0.0, violations);
            g.delta_x = p.get_number("delta-x", 0.0, violations);
            geom = g;
        }
        if (!violations.empty()) return fail_validation(violations);
        outcome = ionnet::type2_herald(aa, ba, ab, bb, kind, *pattern, eta_det, geom);
    }
    if (!violations.empty()) return fail_validation(violations);

    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    write_text(p.get_string("output", ""),
               ionnet::herald_record_json(outcome, protocol));
    return 0;
}

// ---- pattern ---------------------------------------------------------------

int run_pattern(const Params& p) {
    std::vector<std::string> violations;
    const double n = p.get_number("n", std::nullopt, violations);
    const double eta_lambda = p.get_number("eta-lambda", std::nullopt, violations);
    const double anisotropy = p.get_number("anisotropy", 10.0, violations);
    const double theta_in = p.get_number("theta-in", 0.0, violations);
    const double grid = p.get_number("grid", 2048.0, violations);
    const double s_norm = p.get_number("s-norm", 1.0, violations);
    const double linewidth_ratio = p.get_number("linewidth-ratio", 48.0, violations);
    const double mc_samples = p.get_number("mc-check-samples", 0.0, violations);
    const double seed = p.get_number("seed", 0.0, violations);
    if (!violations.empty()) return fail_validation(violations);
    if (n < 1 || n > 100) violations.push_back("key 'n': out of range [1,100]");
    if (!(eta_lambda > 0.0)) violations.push_back("key 'eta-lambda': must be positive");
    if (grid < 2) violations.push_back("key 'grid': must be >= 2");
    if (!violations.empty()) return fail_validation(violations);

    const ionnet::IonCrystal crystal = ionnet::doppler_crystal(
        static_cast<int>(n), eta_lambda, anisotropy, s_norm, linewidth_ratio);
    const auto curve =
        ionnet::radiation_pattern(crystal, theta_in, static_cast<int>(grid));

    std::string body = "theta_out_rad,normalized_intensity\n";
    for (const auto& [theta, value] : curve)
        body += format_number(theta) + "," + format_number(value) + "\n";
    write_text(p.get_string("output", ""), body);

    if (mc_samples > 0.0) {
        // sampling diagnostic: Gaussian normal-coordinate draws against the
        // closed-form pattern at a few angles
        const ionnet::ScatterPattern pattern(crystal);
        const auto eq = ionnet::equilibrium_positions(crystal.n_ions);
        const auto modes = ionnet::normal_modes(crystal);
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        std::normal_distribution<double> unit(0.0, 1.0);
        const int n_ions = crystal.n_ions;
        double worst = 0.0;
        for (int a = 1; a <= 8; ++a) {
            const double theta = 0.35 * a;
            const double dx = std::cos(theta) - std::cos(theta_in);
            const double dy = std::sin(theta) - std::sin(theta_in);
            double mean = 0.0, m2 = 0.0;
            const auto samples = static_cast<long>(mc_samples);
            for (long s = 0; s < samples; ++s) {
                std::complex<double> sum{};
                std::vector<double> qa(n_ions), qt(n_ions);
                for (int m = 0; m < n_ions; ++m) {
                    qa[m] = unit(rng) * std::sqrt(crystal.nbar_axial[m] + 0.5);
                    qt[m] = unit(rng) * std::sqrt(crystal.nbar_transverse[m] + 0.5);
                }
                for (int ion = 0; ion < n_ions; ++ion) {
                    double phase = eta_lambda * eq.positions[ion] * dx;
                    for (int m = 0; m < n_ions; ++m) {
                        phase += std::numbers::sqrt2 * crystal.lamb_dicke_axial[m] *
                                 modes.axial_vectors[m][ion] * qa[m] * dx;
                        phase += std::numbers::sqrt2 *
                                 crystal.lamb_dicke_transverse[m] *
                                 modes.transverse_vectors[m][ion] * qt[m] * dy;
                    }
                    sum += std::polar(1.0, phase);
                }
                const double value = std::norm(sum);
                const double delta = value - mean;
                mean += delta / (s + 1);
                m2 += delta * (value - mean);
            }
            const double sigma = std::sqrt(m2 / (samples - 1) / samples);
            const double exact = pattern.raw({theta_in, theta});
            const double pull = std::abs(mean - exact) / std::max(sigma, 1e-300);
            worst = std::max(worst, pull);
        }
        std::cerr << "mc-check: worst |analytic - sampled| = " << worst << " sigma\n";
        if (worst > 5.0) throw std::runtime_error("mc-check exceeded 5 sigma");
    }
    return 0;
}

// ---- collect ---------------------------------------------------------------

int run_collect(const Params& p) {
    std::vector<std::string> violations;
    const std::string scan = p.get_string("scan", "f-over-w");
    if (scan != "f-over-w" && scan != "rho-max")
        violations.push_back("key 'scan': must be f-over-w or rho-max");
    const double lo = p.get_number("min", std::nullopt, violations);
    const double hi = p.get_number("max", std::nullopt, violations);
    const double points = p.get_number("points", std::nullopt, violations);
    const double m = p.get_number("m", 1.0, violations);
    const std::string jones_name = p.get_string("jones", "circular-plus");
    if (!violations.empty()) return fail_validation(violations);
    if (!(lo > 0.0) || !(hi > lo)) violations.push_back("key 'min'/'max': need 0 < min < max");
    if (points < 2) violations.push_back("key 'points': must be >= 2");
    if (m != 1.0 && m != -1.0) violations.push_back("key 'm': must be +1 or -1");

    ionnet::FiberMode fiber{1.0, kInvSqrt2, {0.0, 0.0}};
    if (jones_name == "circular-plus") fiber = {1.0, kInvSqrt2, {0.0, -kInvSqrt2}};
    else if (jones_name == "circular-minus") fiber = {1.0, kInvSqrt2, {0.0, kInvSqrt2}};
    else if (jones_name == "linear-x") fiber = {1.0, 1.0, 0.0};
    else if (jones_name == "linear-y") fiber = {1.0, 0.0, 1.0};
    else violations.push_back("key 'jones': unknown polarization name");
    if (!violations.empty()) return fail_validation(violations);

    std::string body;
    const auto count = static_cast<int>(points);
    if (scan == "f-over-w") {
        const double rho_max = p.get_number("rho-max", ionnet::kInfiniteRadius, violations);
        if (!violations.empty()) return fail_validation(violations);
        body = "f_over_w,P_sigma\n";
        for (int i = 0; i < count; ++i) {
            const double x = lo + (hi - lo) * i / (count - 1);
            const double value = ionnet::sigma_coupling_analytic(
                x, fiber, rho_max, static_cast<int>(m));
            body += format_number(x) + "," + format_number(value) + "\n";
        }
    } else {
        // coupling against mirror radius, focus re-optimized per radius
        body = "rho_max_over_w,P_sigma\n";
        for (int i = 0; i < count; ++i) {
            const double x = lo + (hi - lo) * i / (count - 1);
            const auto best = ionnet::optimize_focus(fiber, x, static_cast<int>(m));
            body += format_number(x) + "," + format_number(best.p_star) + "\n";
        }
    }
    write_text(p.get_string("output", ""), body);
    return 0;
}

// ---- cavity ----------------------------------------------------------------

int run_cavity(const Params& p) {
    std::vector<std::string> violations;
    ionnet::CavityParams params{};
    params.g = p.get_number("g", std::nullopt, violations);
    params.kappa = p.get_number("kappa", std::nullopt, violations);
    params.gamma = p.get_number("gamma", std::nullopt, violations);
    params.t_out = p.get_number("t-l", std::nullopt, violations);
    params.l_total = p.get_number("l-total", std::nullopt, violations);
    if (!violations.empty()) return fail_validation(violations);

    const ionnet::CavityCollection c = ionnet::cavity_collection(params);
    ordered_json j;
    j["C"] = c.cooperativity;
    j["p_c"] = c.p_c;
    j["factors"] = {c.outcoupling_factor, c.rate_factor, c.purcell_factor};
    write_text(p.get_string("output", ""), j.dump(2) + "\n");
    return 0;
}

// ---- estimate ----------------------------------------------------------------

int run_estimate(const Params& p) {
    std::vector<std::string> violations;
    const double prob = p.get_number("p", std::nullopt, violations);
    const double tau_rep_us = p.get_number("tau-rep-us", std::nullopt, violations);
    const double epsilon = p.get_number("epsilon", 0.1, violations);
    const double n = p.get_number("n", std::nullopt, violations);
    const double n_nodes = p.get_number("n-nodes", 16.0, violations);
    const double t_detect_us = p.get_number("t-detect-us", 10.0, violations);
    const double p_e = p.get_number("p-e", 1.0, violations);
    const double p_c = p.get_number("p-c", 1.0, violations);
    const double p_t = p.get_number("p-t", 1.0, violations);
    const double eta_det = p.get_number("eta-det", 1.0, violations);
    const double p_b = p.get_number("p-b", 0.25, violations);
    if (!violations.empty()) return fail_validation(violations);
    require_range(prob, 0.0, 1.0, "p", violations);
    if (!(tau_rep_us > 0.0)) violations.push_back("key 'tau-rep-us': must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        violations.push_back("key 'epsilon': out of range (0,1)");
    if (n_nodes < 2) violations.push_back("key 'n-nodes': must be >= 2");
    if (!violations.empty()) return fail_validation(violations);

    const double tau_rep = tau_rep_us * 1e-6;
    const double t_detect = t_detect_us * 1e-6;
    const double p_ap = ionnet::atom_photon_success(p_e, p_c, p_t);
    const double t_cluster = ionnet::cluster_time(n, prob, epsilon, tau_rep);

    ordered_json j;
    j["inputs"] = {{"p", prob},       {"tau_rep_us", tau_rep_us},
                   {"epsilon", epsilon}, {"n", n},
                   {"n_nodes", n_nodes}, {"t_detect_us", t_detect_us},
                   {"p_e", p_e},      {"p_c", p_c},
                   {"p_t", p_t},      {"eta_det", eta_det},
                   {"p_b", p_b}};
    j["P_ap"] = p_ap;
    j["P_I"] = ionnet::type1_success(p_ap, eta_det);
    j["P_II"] = ionnet::type2_success(p_ap, eta_det, p_b);
    j["t_gate"] = ionnet::deterministic_gate_time(tau_rep, prob);
    j["t_repeater"] = ionnet::repeater_time(static_cast<int>(n_nodes), tau_rep, prob);
    j["T_cluster_seconds"] = t_cluster;
    j["T_cluster_human"] = human_duration(t_cluster);
    j["bell_distance_m"] = ionnet::bell_separation(t_detect);
    write_text(p.get_string("output", ""), j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"atom-photon network calculators"};
    app.require_subcommand(1);

    struct Command {
        CLI::App* sub = nullptr;
        std::vector<std::pair<std::string, std::string*>> options;
        std::string* config_path = nullptr;
        std::string* output = nullptr;
        int (*run)(const Params&) = nullptr;
    };

    const std::map<std::string, std::vector<std::string>> option_names = {
        {"herald",
         {"protocol", "kind", "p-e", "eta-det", "detector", "delta-k", "delta-x",
          "delta-omega", "exact", "alpha-a-re", "alpha-a-im", "beta-a-re", "beta-a-im",
          "alpha-b-re", "alpha-b-im", "beta-b-re", "beta-b-im", "pattern"}},
        {"pattern",
         {"n", "eta-lambda", "anisotropy", "theta-in", "grid", "s-norm",
          "linewidth-ratio", "seed", "mc-check-samples"}},
        {"collect", {"scan", "min", "max", "points", "rho-max", "jones", "m"}},
        {"cavity", {"g", "kappa", "gamma", "t-l", "l-total"}},
        {"estimate",
         {"p", "tau-rep-us", "epsilon", "n", "n-nodes", "t-detect-us", "p-e", "p-c",
          "p-t", "eta-det", "p-b"}},
    };
    const std::map<std::string, int (*)(const Params&)> runners = {
        {"herald", run_herald},   {"pattern", run_pattern}, {"collect", run_collect},
        {"cavity", run_cavity},   {"estimate", run_estimate},
    };

    std::vector<Command> commands;
    commands.reserve(option_names.size());
    std::vector<std::unique_ptr<std::string>> storage;
    for (const auto& [name, keys] : option_names) {
        Command cmd;
        cmd.sub = app.add_subcommand(name);
        for (const auto& key : keys) {
            storage.push_back(std::make_unique<std::string>());
            cmd.sub->add_option("--" + key, *storage.back());
            cmd.options.emplace_back(key, storage.back().get());
        }
        storage.push_back(std::make_unique<std::string>());
        cmd.config_path = storage.back().get();
        cmd.sub->add_option("--config", *cmd.config_path, "key=value config file");
        storage.push_back(std::make_unique<std::string>());
        cmd.output = storage.back().get();
        cmd.sub->add_option("--output,-o", *cmd.output, "output path (default stdout)");
        cmd.run = runners.at(name);
        commands.push_back(std::move(cmd));
    }

    CLI11_PARSE(app, argc, argv);

    for (const Command& cmd : commands) {
        if (!cmd.sub->parsed()) continue;
        try {
            Params params;
            for (const auto& [key, value] : cmd.options)
                if (cmd.sub->count("--" + key) > 0) params.set_flag(key, *value);
            if (!cmd.config_path->empty())
                params.set_file_values(ionnet::parse_kv_file(*cmd.config_path));
            if (!cmd.output->empty()) params.set_flag("output", *cmd.output);
            return cmd.run(params);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "numerical failure: " << e.what() << "\n";
            return 2;
        }
    }
    return 1;
}
