#ifndef HLIM_HARNESS_IO_HPP
#define HLIM_HARNESS_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

inline void to_json(nlohmann::json& j, const GasState& s) {
    j = {{"v", s.v}, {"u1", s.u1}, {"u2", s.u2}, {"u3", s.u3}, {"theta", s.theta}, {"p", s.pressure()}};
}

/// Accepts an object with v, u1, theta (u2, u3 optional) or an array [v, u1, theta].
inline void from_json(const nlohmann::json& j, GasState& s) {
    if (j.is_array()) {
        if (j.size() != 3) fail(Errc::invalid_config, "state array must be [v, u1, theta]");
        s = GasState{j[0].get<double>(), j[1].get<double>(), 0.0, 0.0, j[2].get<double>()};
        return;
    }
    s.v = j.at("v").get<double>();
    s.u1 = j.at("u1").get<double>();
    s.u2 = j.value("u2", 0.0);
    s.u3 = j.value("u3", 0.0);
    s.theta = j.at("theta").get<double>();
}

inline void to_json(nlohmann::json& j, const WaveStrengths& s) {
    j = {{"r1", s.r1}, {"cd", s.cd}, {"s3", s.s3}, {"total", s.total}};
}

inline void to_json(nlohmann::json& j, const WavePattern& w) {
    j = {{"left", w.left},         {"mid_star", w.mid_star},   {"mid_upper", w.mid_upper},
         {"right", w.right},       {"s3", w.s3},               {"fan_left", w.fan_left},
         {"fan_right", w.fan_right}, {"strengths", w.strengths}};
}

/// Patterns are always re-solved from their end states so that every field is consistent.
inline WavePattern pattern_from_json(const nlohmann::json& j) {
    try {
        return solve_riemann(j.at("left").get<GasState>(), j.at("right").get<GasState>());
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::invalid_config, std::string("pattern needs left and right states: ") + e.what());
    }
}

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Errc::io_error, "cannot read '" + path + "'");
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::io_error, "malformed JSON in '" + path + "': " + e.what());
    }
}

/// Column-major table written as CSV with full double precision.
class CsvTable {
public:
    void add(const std::string& name, std::vector<double> values) {
        if (!cols_.empty() && values.size() != cols_.front().size())
            fail(Errc::domain_error, "CSV column '" + name + "' has a different length");
        names_.push_back(name);
        cols_.push_back(std::move(values));
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) fail(Errc::io_error, "cannot write '" + path + "'");
        for (std::size_t c = 0; c < names_.size(); ++c) f << (c ? "," : "") << names_[c];
        f << "\n";
        const std::size_t n = cols_.empty() ? 0 : cols_.front().size();
        char buf[32];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < cols_.size(); ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", cols_[c][i]);
                f << (c ? "," : "") << buf;
            }
            f << "\n";
        }
        if (!f) fail(Errc::io_error, "write failed for '" + path + "'");
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> cols_;
};

}

#endif
