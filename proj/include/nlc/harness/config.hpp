#pragma once

// Line-based `key = value` run configuration.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlc/calculus.hpp"
#include "nlc/exponents.hpp"

namespace nlc {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    int nx = 64;
    int ny = 64;
    double lx = 1.0;
    double ly = 1.0;
    /// Fixed step; empty selects CFL-adaptive stepping.
    std::optional<double> dt = 1e-3;
    double cfl = 0.9;
    double t_end = 0.1;
    double rho_bar = 1.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 1.0;
    double serrin_r = 4.0;
    double serrin_s = 4.0;
    int cadence = 1;
    double tol_unit = 1e-8;
    double cg_tol = 1e-10;
    int cg_max_iter = 500;
    std::string scenario = "rest";
    std::map<std::string, std::string> scenario_params;
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    Grid2D grid() const { return Grid2D(nx, ny, lx, ly); }

    /// Numeric scenario parameter, or `fallback` when absent.
    double param(const std::string& key, double fallback) const;
    std::string param_string(const std::string& key, const std::string& fallback) const;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text, const std::string& what) {
    const std::string s(text);
    double v = 0.0;
    if (s == "inf" || s == "infinity") return kInfinity;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(what + ": expected a number, got '" + s + "'");
    return v;
}

inline long long parse_integer(std::string_view text, const std::string& what) {
    const std::string s(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(what + ": expected an integer, got '" + s + "'");
    return v;
}

} // namespace detail

inline double SimConfig::param(const std::string& key, double fallback) const {
    const auto it = scenario_params.find(key);
    if (it == scenario_params.end()) return fallback;
    return detail::parse_double(it->second, "scenario." + key);
}

inline std::string SimConfig::param_string(const std::string& key, const std::string& fallback) const {
    const auto it = scenario_params.find(key);
    return it == scenario_params.end() ? fallback : it->second;
}

/// Checks the cross-field invariants; throws ConfigError.
inline void validate(const SimConfig& c) {
    if (c.nx < 8 || c.ny < 8 || c.nx % 2 || c.ny % 2) throw ConfigError("nx, ny must be even and >= 8");
    if (!(c.lx > 0.0) || !(c.ly > 0.0)) throw ConfigError("lx, ly must be positive");
    if (c.dt && !(*c.dt > 0.0)) throw ConfigError("dt must be positive or 'auto'");
    if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
    if (!(c.t_end > 0.0) || std::isinf(c.t_end)) throw ConfigError("t_end must be positive and finite");
    if (!(c.rho_bar > 0.0)) throw ConfigError("rho_bar must be positive");
    const double elen = std::sqrt(c.e1 * c.e1 + c.e2 * c.e2 + c.e3 * c.e3);
    if (!(std::abs(elen - 1.0) <= 1e-9)) throw ConfigError("(e1, e2, e3) must be a unit vector");
    if (!admissible_exponents(c.serrin_r, c.serrin_s).admissible)
        throw ConfigError("serrin_r, serrin_s must satisfy 1/r + 1/s <= 1/2 with r > 2");
    if (c.cadence < 1) throw ConfigError("cadence must be >= 1");
    if (!(c.tol_unit > 0.0)) throw ConfigError("tol_unit must be positive");
    if (!(c.cg_tol > 0.0)) throw ConfigError("cg_tol must be positive");
    if (c.cg_max_iter < 1) throw ConfigError("cg_max_iter must be >= 1");
    if (c.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

inline SimConfig parse_config(std::istream& in, const std::string& source = "<config>") {
    SimConfig c;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = detail::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string_view value = detail::trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
        const std::string what = where + ": " + key;
        auto integer = [&] { return detail::parse_integer(value, what); };
        auto real = [&] { return detail::parse_double(value, what); };

        if (key == "nx") c.nx = static_cast<int>(integer());
        else if (key == "ny") c.ny = static_cast<int>(integer());
        else if (key == "lx") c.lx = real();
        else if (key == "ly") c.ly = real();
        else if (key == "dt") c.dt = value == "auto" ? std::nullopt : std::optional<double>(real());
        else if (key == "cfl") c.cfl = real();
        else if (key == "t_end") c.t_end = real();
        else if (key == "rho_bar") c.rho_bar = real();
        else if (key == "e1") c.e1 = real();
        else if (key == "e2") c.e2 = real();
        else if (key == "e3") c.e3 = real();
        else if (key == "serrin_r") c.serrin_r = real();
        else if (key == "serrin_s") c.serrin_s = real();
        else if (key == "cadence") c.cadence = static_cast<int>(integer());
        else if (key == "tol_unit") c.tol_unit = real();
        else if (key == "cg_tol") c.cg_tol = real();
        else if (key == "cg_max_iter") c.cg_max_iter = static_cast<int>(integer());
        else if (key == "scenario") c.scenario = std::string(value);
        else if (key.rfind("scenario.", 0) == 0 && key.size() > 9) c.scenario_params[key.substr(9)] = std::string(value);
        else if (key == "seed") {
            const long long s = integer();
            if (s < 0) throw ConfigError(what + ": must be nonnegative");
            c.seed = static_cast<std::uint64_t>(s);
        } else if (key == "out_dir") c.out_dir = std::string(value);
        else throw ConfigError(where + ": unknown key '" + key + "'");
    }
    validate(c);
    return c;
}

inline SimConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in, path);
}

} // namespace nlc
