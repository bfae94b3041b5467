// Exercises the built CLI end to end: output formats, determinism, config
// overrides, validation and failure exit codes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

int g_failures = 0;
std::string g_binary;

void check(bool ok, const std::string& name) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code;
    std::string output;  // stdout
    std::string errors;  // stderr
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string command =
        g_binary + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(command.c_str());
    const auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    RunResult r{status == -1 ? -1 : WEXITSTATUS(status), slurp(out_path),
                slurp(err_path)};
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-ionnet>\n";
        return 2;
    }
    g_binary = argv[1];

    {
        const RunResult r = run("estimate --p 0.1 --tau-rep-us 1 --epsilon 0.1 --n 1000");
        check(r.exit_code == 0, "estimate exits cleanly");
        const auto j = nlohmann::json::parse(r.output, nullptr, false);
        check(!j.is_discarded(), "estimate emits valid JSON");
        if (!j.is_discarded()) {
            const double t = j["T_cluster_seconds"].get<double>();
            check(std::abs(t - 0.162) < 0.162 * 0.05, "cluster headline near 0.162 s");
            check(j["inputs"]["p"].get<double>() == 0.1, "inputs echoed");
            check(std::abs(j["bell_distance_m"].get<double>() - 2997.92458) < 1e-6,
                  "bell distance for the default detection window");
        }
    }

    {
        const RunResult a = run("estimate --p 0.05 --tau-rep-us 2 --n 500 -o est_a.json");
        const RunResult b = run("estimate --p 0.05 --tau-rep-us 2 --n 500 -o est_b.json");
        check(a.exit_code == 0 && b.exit_code == 0, "estimate writes files");
        check(slurp_file("est_a.json") == slurp_file("est_b.json"),
              "identical configs give byte-identical output");
        std::remove("est_a.json");
        std::remove("est_b.json");
    }

    {
        const RunResult r = run("estimate --tau-rep-us 1 --n 1000");
        check(r.exit_code == 1, "missing key exits 1");
        check(r.errors.find("missing required key 'p'") != std::string::npos,
              "missing key is named");
        const RunResult bad = run("estimate --p 1.5 --tau-rep-us 1 --n 1000");
        check(bad.exit_code == 1, "range violation exits 1");
        check(bad.errors.find("'p'") != std::string::npos, "range violation names the key");
    }

    {
        std::ofstream cfg("cli_test.cfg");
        cfg << "p = 0.01\n" << "tau-rep-us = 1\n" << "n = 1000\n" << "epsilon = 0.1\n";
        cfg.close();
        const RunResult file_only = run("estimate --config cli_test.cfg");
        const RunResult overridden = run("estimate --config cli_test.cfg --p 0.1");
        check(file_only.exit_code == 0 && overridden.exit_code == 0,
              "config file accepted");
        const auto jf = nlohmann::json::parse(file_only.output, nullptr, false);
        const auto jo = nlohmann::json::parse(overridden.output, nullptr, false);
        check(!jf.is_discarded() && jf["inputs"]["p"].get<double>() == 0.01,
              "file value used");
        check(!jo.is_discarded() && jo["inputs"]["p"].get<double>() == 0.1,
              "flag overrides file");
        std::remove("cli_test.cfg");
    }

    {
        const RunResult r =
            run("pattern --n 3 --eta-lambda 600 --anisotropy 10 --grid 256 -o pat.csv");
        check(r.exit_code == 0, "pattern exits cleanly");
        const std::string body = slurp_file("pat.csv");
        check(body.rfind("theta_out_rad,normalized_intensity\n", 0) == 0,
              "pattern CSV has the header row");
        check(body.find('\r') == std::string::npos, "pattern CSV uses LF endings");
        int lines = 0;
        for (char c : body) lines += c == '\n';
        check(lines == 257, "pattern CSV row count matches the grid");
        check(body.find(",1\n") != std::string::npos, "forward sample is exactly 1");
        std::remove("pat.csv");
    }

    {
        const RunResult a =
            run("pattern --n 4 --eta-lambda 200 --grid 128 --seed 3 -o pat_a.csv");
        const RunResult b =
            run("pattern --n 4 --eta-lambda 200 --grid 128 --seed 3 -o pat_b.csv");
        check(a.exit_code == 0 && b.exit_code == 0, "pattern writes files");
        check(slurp_file("pat_a.csv") == slurp_file("pat_b.csv"),
              "pattern output is byte-identical across runs");
        std::remove("pat_a.csv");
        std::remove("pat_b.csv");
    }

    {
        const RunResult r = run("pattern --n 5 --eta-lambda 300 --anisotropy 1.05 --grid 16");
        check(r.exit_code == 2, "zig-zag instability exits 2");
        check(r.errors.find("numerical failure") != std::string::npos,
              "numerical failure is reported");
    }

    {
        const RunResult r = run(
            "pattern --n 2 --eta-lambda 100 --grid 64 --mc-check-samples 20000 --seed 7");
        check(r.exit_code == 0, "sampling diagnostic passes");
        check(r.errors.find("mc-check") != std::string::npos,
              "sampling diagnostic reports the pull");
    }

    {
        const RunResult r =
            run("collect --scan f-over-w --min 0.05 --max 5 --points 200 -o collect.csv");
        check(r.exit_code == 0, "collect exits cleanly");
        const std::string body = slurp_file("collect.csv");
        check(body.rfind("f_over_w,P_sigma\n", 0) == 0, "collect CSV header");
        double best = 0.0;
        std::istringstream lines(body);
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            const auto comma = line.find(',');
            best = std::max(best, std::stod(line.substr(comma + 1)));
        }
        check(best > 0.45 && best < 0.52, "collect scan peak is near one half");
        std::remove("collect.csv");
    }

    {
        const RunResult r =
            run("collect --scan rho-max --min 0.5 --max 4 --points 5 -o radius.csv");
        check(r.exit_code == 0, "radius scan exits cleanly");
        const std::string body = slurp_file("radius.csv");
        check(body.rfind("rho_max_over_w,P_sigma\n", 0) == 0, "radius scan CSV header");
        // per-radius optimum grows monotonically toward the open-mirror value
        std::istringstream lines(body);
        std::string line;
        std::getline(lines, line);
        double previous = -1.0;
        bool monotone = true;
        while (std::getline(lines, line)) {
            const double v = std::stod(line.substr(line.find(',') + 1));
            monotone = monotone && v >= previous;
            previous = v;
        }
        check(monotone && previous > 0.45 && previous < 0.52,
              "radius scan rises toward the open-mirror coupling");
        std::remove("radius.csv");
    }

    {
        const RunResult r = run("cavity --g 1 --kappa 1 --gamma 1 --t-l 0.9 --l-total 1");
        check(r.exit_code == 0, "cavity exits cleanly");
        const auto j = nlohmann::json::parse(r.output, nullptr, false);
        check(!j.is_discarded() && std::abs(j["p_c"].get<double>() - 0.4) < 1e-12,
              "cavity p_c value");
        check(!j.is_discarded() && j["factors"].size() == 3, "cavity factors listed");
    }

    {
        const RunResult r = run("herald --protocol type2 --kind frequency");
        check(r.exit_code == 0, "herald exits cleanly");
        const auto j = nlohmann::json::parse(r.output, nullptr, false);
        check(!j.is_discarded(), "herald emits valid JSON");
        if (!j.is_discarded()) {
            check(j["pattern"].get<std::string>() == "D1+D2", "herald pattern label");
            check(std::abs(j["probability"].get<double>() - 0.25) < 1e-12,
                  "balanced herald probability");
            check(j["atomic_state"].size() == 2, "herald atomic state terms");
        }
    }

    {
        std::remove("cli_env_out/est.json");
        std::remove("cli_env_out");
        const std::string cmd = "IONNET_OUTPUT_DIR=cli_env_out " + g_binary +
                                " estimate --p 0.1 --tau-rep-us 1 --n 1000 -o est.json"
                                " >/dev/null 2>/dev/null";
        const int status = std::system(cmd.c_str());
        check(WEXITSTATUS(status) == 0 && !slurp_file("cli_env_out/est.json").empty(),
              "IONNET_OUTPUT_DIR routes relative outputs");
        std::remove("cli_env_out/est.json");
    }

    std::cout << (g_failures == 0 ? "all CLI checks passed\n"
                                  : "CLI checks FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
