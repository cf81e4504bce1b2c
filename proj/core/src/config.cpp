// SPDX-License-Identifier: Apache-2.0
#include "insector/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace insector {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
    throw ConfigError("config: key '" + std::string(key) + "' expects " + expected + ", got '" +
                      std::string(value) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, const char* expected) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value, expected);
    return out;
}

int parse_int(std::string_view key, std::string_view value) {
    return parse_number<int>(key, value, "an integer");
}

double parse_real(std::string_view key, std::string_view value) {
    if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
    return parse_number<double>(key, value, "a real number");
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(key, value, "true or false");
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view key, std::string_view value, Parse parse) {
    std::vector<T> out;
    while (!value.empty()) {
        const auto comma = value.find(',');
        out.push_back(parse(key, trim(value.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    if (out.empty()) bad_value(key, value, "a comma-separated list");
    return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"N", [](auto& c, auto k, auto v) { c.n = parse_int(k, v); }},
        {"n_sectors", [](auto& c, auto k, auto v) { c.n_sectors = parse_int(k, v); }},
        {"M", [](auto& c, auto k, auto v) { c.m = parse_int(k, v); }},
        {"snr_db", [](auto& c, auto k, auto v) { c.snr_db = parse_real(k, v); }},
        {"trials", [](auto& c, auto k, auto v) { c.trials = parse_int(k, v); }},
        {"scheme", [](auto& c, auto, auto v) { c.scheme = parse_scheme(v); }},
        {"seed",
         [](auto& c, auto k, auto v) { c.seed = parse_number<std::uint64_t>(k, v, "an unsigned integer"); }},
        {"n_mask_candidates", [](auto& c, auto k, auto v) { c.n_mask_candidates = parse_int(k, v); }},
        {"pool_factor", [](auto& c, auto k, auto v) { c.pool_factor = parse_int(k, v); }},
        {"m_values", [](auto& c, auto k, auto v) { c.m_values = parse_list<int>(k, v, parse_int); }},
        {"snr_values",
         [](auto& c, auto k, auto v) { c.snr_values = parse_list<double>(k, v, parse_real); }},
        {"channel.n_antennas", [](auto& c, auto k, auto v) { c.channel.n_antennas = parse_int(k, v); }},
        {"channel.k_rays", [](auto& c, auto k, auto v) { c.channel.k_rays = parse_int(k, v); }},
        {"channel.grid_mode",
         [](auto& c, auto k, auto v) {
             if (v == "on_grid")
                 c.channel.grid_mode = GridMode::on_grid;
             else if (v == "off_grid")
                 c.channel.grid_mode = GridMode::off_grid;
             else
                 bad_value(k, v, "on_grid or off_grid");
         }},
        {"channel.power_normalization",
         [](auto& c, auto k, auto v) { c.channel.power_normalization = parse_bool(k, v); }},
        {"channel.rng_seed",
         [](auto& c, auto k, auto v) {
             c.channel.rng_seed = parse_number<std::uint64_t>(k, v, "an unsigned integer");
         }},
        {"channel.in_sector", [](auto& c, auto k, auto v) { c.in_sector = parse_bool(k, v); }},
        {"omp.max_sparsity", [](auto& c, auto k, auto v) { c.omp.max_sparsity = parse_int(k, v); }},
        {"omp.residual_tol", [](auto& c, auto k, auto v) { c.omp.residual_tol = parse_real(k, v); }},
        {"omp.oversampling", [](auto& c, auto k, auto v) { c.omp.oversampling = parse_int(k, v); }},
    };
    return table;
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    bool antennas_given = false;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
        if (!seen.emplace(key).second)
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" +
                              std::string(key) + "'");
        if (value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty value for '" +
                              std::string(key) + "'");
        it->second(config, key, value);
        antennas_given = antennas_given || key == "channel.n_antennas";
    }
    if (antennas_given && config.channel.n_antennas != config.n)
        throw ConfigError("config: channel.n_antennas must equal N");
    config.channel.n_antennas = config.n;
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace insector
