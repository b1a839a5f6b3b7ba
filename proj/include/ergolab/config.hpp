#pragma once

// Flat key = value experiment configs. Unknown keys are hard errors (no
// silent ignore), every syntax error carries its line number, and integer
// fields accept the scientific form 1e3 when it denotes an exact integer.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab {

struct ConfigError : std::runtime_error {
    int line;  // 0 when no line applies
    ConfigError(int ln, const std::string& msg)
        : std::runtime_error(ln > 0 ? "line " + std::to_string(ln) + ": " + msg : msg), line(ln) {}
};

struct ExperimentConfig {
    std::string command;
    std::string system = "rotation";      // rotation | derndinger | skew
    std::vector<double> alpha;            // rotation generator (torus dim = length)
    std::string fiber;                    // Z<m> | S3 | T | file
    std::string cocycle;                  // constant:<elem|angle> | torus-exp:<k>
    std::string observable = "one";       // one | exp:k | coord:n | fiberchar:k | expfiber:k,l
    std::optional<double> theta;          // character weight for avg
    std::optional<double> theta_lo, theta_hi;
    std::optional<std::uint64_t> theta_steps;
    std::vector<std::uint64_t> windows;
    std::string samples = "uniform:8";    // uniform:<count> | torus:... | subshift:... | product:...
    double tolerance = 1e-3;
    std::uint64_t seed = 1;
    std::uint64_t starts = 8;             // unique-ergodicity
    std::uint64_t trials = 200;           // cocycle-check
    std::uint64_t gmax = 30;              // cocycle-check exponent range
    std::int64_t max_torus_k = 3;         // torus-fiber irrep catalog cutoff
    std::vector<std::string> probes{"one"};
    std::vector<std::uint64_t> corrupt;   // a,b,v: overwrite table[a][b] = v
    std::string group_file;
    std::string out;
    std::uint64_t threads = 1;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline double parse_double(std::string_view s, int line, const std::string& key) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError(line, key + ": expected a number, got '" + std::string(s) + "'");
    return v;
}

// Plain decimal first; otherwise a scientific form like 1e3 denoting an
// exact nonnegative integer below 2^53.
inline std::uint64_t parse_uint(std::string_view s, int line, const std::string& key) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && p == s.data() + s.size()) return v;
    double d = parse_double(s, line, key);
    if (d < 0 || d != std::floor(d) || d > 9007199254740992.0)
        throw ConfigError(line, key + ": expected an integer, got '" + std::string(s) + "'");
    return static_cast<std::uint64_t>(d);
}

inline std::int64_t parse_int(std::string_view s, int line, const std::string& key) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError(line, key + ": expected an integer, got '" + std::string(s) + "'");
    return v;
}

inline std::vector<double> parse_double_list(std::string_view s, int line, const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_double(item, line, key));
    return out;
}

inline std::vector<std::uint64_t> parse_uint_list(std::string_view s, int line, const std::string& key) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_list(s)) out.push_back(parse_uint(item, line, key));
    return out;
}

}  // namespace detail

inline const std::set<std::string>& known_commands() {
    static const std::set<std::string> c{"avg",           "ww-scan",          "cocycle-check",
                                         "skew-ergodicity", "unique-ergodicity", "derndinger-demo"};
    return c;
}

inline ExperimentConfig parse_config(const std::string& text) {
    using namespace detail;
    ExperimentConfig cfg;
    std::set<std::string> seen;
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view raw(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line;
        std::string_view sv = trim(raw);
        if (sv.empty() || sv.front() == '#') {
            if (pos > text.size()) break;
            continue;
        }
        std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
        std::string key(trim(sv.substr(0, eq)));
        std::string_view val = trim(sv.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        if (!seen.insert(key).second) throw ConfigError(line, "duplicate key '" + key + "'");

        if (key == "command") {
            cfg.command = std::string(val);
            if (!known_commands().count(cfg.command))
                throw ConfigError(line, "unknown command '" + cfg.command + "'");
        } else if (key == "system") {
            cfg.system = std::string(val);
            if (cfg.system != "rotation" && cfg.system != "derndinger" && cfg.system != "skew")
                throw ConfigError(line, "system: expected rotation, derndinger or skew");
        } else if (key == "alpha") {
            cfg.alpha = parse_double_list(val, line, key);
            if (cfg.alpha.empty()) throw ConfigError(line, "alpha: empty list");
        } else if (key == "fiber") {
            cfg.fiber = std::string(val);
        } else if (key == "cocycle") {
            cfg.cocycle = std::string(val);
        } else if (key == "observable") {
            cfg.observable = std::string(val);
        } else if (key == "theta") {
            cfg.theta = parse_double(val, line, key);
        } else if (key == "theta_lo") {
            cfg.theta_lo = parse_double(val, line, key);
        } else if (key == "theta_hi") {
            cfg.theta_hi = parse_double(val, line, key);
        } else if (key == "theta_steps") {
            cfg.theta_steps = parse_uint(val, line, key);
        } else if (key == "windows") {
            cfg.windows = parse_uint_list(val, line, key);
            for (std::size_t i = 0; i < cfg.windows.size(); ++i) {
                if (cfg.windows[i] == 0) throw ConfigError(line, "windows must be >= 1");
                if (i > 0 && cfg.windows[i] <= cfg.windows[i - 1])
                    throw ConfigError(line, "windows must be strictly increasing");
            }
        } else if (key == "samples") {
            cfg.samples = std::string(val);
        } else if (key == "tolerance") {
            cfg.tolerance = parse_double(val, line, key);
            if (cfg.tolerance <= 0) throw ConfigError(line, "tolerance must be positive");
        } else if (key == "seed") {
            cfg.seed = parse_uint(val, line, key);
        } else if (key == "starts") {
            cfg.starts = parse_uint(val, line, key);
        } else if (key == "trials") {
            cfg.trials = parse_uint(val, line, key);
        } else if (key == "gmax") {
            cfg.gmax = parse_uint(val, line, key);
        } else if (key == "max_torus_k") {
            cfg.max_torus_k = parse_int(val, line, key);
        } else if (key == "probes") {
            cfg.probes = split_list(val);
        } else if (key == "corrupt") {
            cfg.corrupt = parse_uint_list(val, line, key);
            if (cfg.corrupt.size() != 3) throw ConfigError(line, "corrupt: expected 'row,col,value'");
        } else if (key == "group_file") {
            cfg.group_file = std::string(val);
        } else if (key == "out") {
            cfg.out = std::string(val);
        } else if (key == "threads") {
            cfg.threads = parse_uint(val, line, key);
            if (cfg.threads == 0) throw ConfigError(line, "threads must be >= 1");
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
        if (pos > text.size()) break;
    }
    return cfg;
}

}  // namespace ergolab
