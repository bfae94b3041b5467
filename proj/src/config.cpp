#include "ionnet/config.hpp"

#include <fstream>
#include <stdexcept>

namespace ionnet {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::optional<std::pair<std::string, std::string>> parse_kv_line(const std::string& line) {
    std::string body = line;
    if (auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    body = trim(body);
    if (body.empty()) return std::nullopt;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("malformed config line (expected key=value): " + line);
    return std::make_pair(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto kv = parse_kv_line(line)) out[kv->first] = kv->second;
    }
    return out;
}

}  // namespace ionnet
