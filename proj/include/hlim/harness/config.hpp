#ifndef HLIM_HARNESS_CONFIG_HPP
#define HLIM_HARNESS_CONFIG_HPP

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"

namespace hlim {

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored, later keys win.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text) {
        KeyValueConfig c;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                fail(Errc::invalid_config, "line " + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            if (key.empty()) fail(Errc::invalid_config, "line " + std::to_string(lineno) + ": empty key");
            c.values_[key] = trim(line.substr(eq + 1));
        }
        return c;
    }

    static KeyValueConfig load(const std::string& path) {
        std::ifstream f(path);
        if (!f) fail(Errc::io_error, "cannot read config '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const std::string& str(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) fail(Errc::invalid_config, "missing key '" + key + "'");
        return it->second;
    }

    std::string str(const std::string& key, const std::string& fallback) const {
        return has(key) ? str(key) : fallback;
    }

    double number(const std::string& key) const { return to_double(str(key), key); }
    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::size_t count(const std::string& key) const {
        const double v = number(key);
        if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
            fail(Errc::invalid_config, "key '" + key + "' must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    std::size_t count(const std::string& key, std::size_t fallback) const { return has(key) ? count(key) : fallback; }

    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& v = str(key);
        if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
        if (v == "false" || v == "0" || v == "no" || v == "off") return false;
        fail(Errc::invalid_config, "key '" + key + "' must be a boolean");
    }

    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        std::string item;
        std::istringstream in(str(key));
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(to_double(item, key));
        }
        return out;
    }
    std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
        return has(key) ? list(key) : fallback;
    }

    /// `v,u1,theta` with zero transverse velocity.
    GasState state(const std::string& key) const { return parse_state(str(key), key); }

    static GasState parse_state(const std::string& text, const std::string& what = "state") {
        KeyValueConfig tmp;
        tmp.values_[what] = text;
        const std::vector<double> v = tmp.list(what);
        if (v.size() != 3) fail(Errc::invalid_config, "'" + what + "' must be v,u1,theta");
        GasState s{v[0], v[1], 0.0, 0.0, v[2]};
        if (!(s.v > 0.0) || !(s.theta > 0.0)) fail(Errc::invalid_config, "'" + what + "' needs v > 0 and theta > 0");
        return s;
    }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return {};
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    }

    static double to_double(const std::string& s, const std::string& key) {
        double v = 0.0;
        const char* end = s.data() + s.size();
        auto [p, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || p != end) {
            // allow fractions such as 1/50
            auto slash = s.find('/');
            if (slash != std::string::npos)
                return to_double(trim(s.substr(0, slash)), key) / to_double(trim(s.substr(slash + 1)), key);
            fail(Errc::invalid_config, "key '" + key + "': '" + s + "' is not a number");
        }
        return v;
    }

    std::map<std::string, std::string> values_;
};

}

#endif
