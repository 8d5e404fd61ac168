#ifndef HLIM_HARNESS_SCALING_HPP
#define HLIM_HARNESS_SCALING_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/numerics.hpp"
#include "hlim/profiles.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

enum class ScalingStudy { lemma21, lemma22, lemma26, shock_tail, contact_tail };

inline const char* scaling_name(ScalingStudy s) {
    switch (s) {
        case ScalingStudy::lemma21: return "lemma21";
        case ScalingStudy::lemma22: return "lemma22";
        case ScalingStudy::lemma26: return "lemma26";
        case ScalingStudy::shock_tail: return "shock_tail";
        case ScalingStudy::contact_tail: return "contact_tail";
    }
    return "unknown";
}

struct ScalingConfig {
    GasState left{1.0, 0.0, 0.0, 0.0, 1.0};
    GasState right{1.0 + 0.2 / std::sqrt(2.0), 0.0, 0.0, 0.0, 1.0 - 0.2 / std::sqrt(2.0)};
    std::vector<double> values;  ///< sigma for lemma21, eps otherwise
    double p = 2.0;              ///< Lebesgue exponent for lemma21
    double h = 0.1;
    double T = 0.5;
    double dx = 0.0;  ///< 0 selects the resolution rule min(sigma, sqrt(eps)) / 10 at the smallest value
    TransportModel transport = TransportModel::power_law();
};

struct ScalingRow {
    double parameter = 0.0;
    double value = 0.0;
};

struct ScalingReport {
    ScalingStudy study = ScalingStudy::lemma21;
    std::vector<ScalingRow> rows;
    double slope = 0.0;
    double predicted = 0.0;
    double residual = 0.0;
    double r_squared = 0.0;
};

/// Asymptotic setting for the first hyperbolic wave: a rarefaction much wider than sigma
/// over the window [h, T]. The default short window sits in the pre-asymptotic range where
/// sigma exceeds the fan width and the measured slope falls below the predicted exponent.
inline ScalingConfig wave_I_asymptotic_config() {
    ScalingConfig c;
    c.right = GasState{1.6, 0.35, 0.0, 0.0, 0.72};
    c.values = {1e-2, 5e-3, 2.5e-3};
    c.h = 2.0;
    c.T = 4.0;
    return c;
}

namespace detail {

inline double smallest(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
inline double largest(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

/// ||d/dx U1||_{L^p} of the smoothed rarefaction at t = 0 for each sigma.
inline std::vector<ScalingRow> lemma21_rows(const ScalingConfig& c, const WavePattern& w) {
    const double smin = smallest(c.values), smax = largest(c.values);
    const double dx = c.dx > 0.0 ? c.dx : smin / 50.0;
    const UniformGrid g = UniformGrid::span(-30.0 * smax, 30.0 * smax,
                                            static_cast<std::size_t>(60.0 * smax / dx) + 1);
    std::vector<ScalingRow> rows;
    for (double sigma : c.values) {
        const RarefactionWave r = rarefaction_wave(w, sigma);
        std::vector<double> ux(g.n);
        for (std::size_t i = 0; i < g.n; ++i) ux[i] = r.eval(0.0, g.at(i)).U1x;
        rows.push_back({sigma, lp_norm(ux, g.dx, c.p)});
    }
    return rows;
}

/// sup over the time levels of ||d||_{L2}^2 with sigma = eps^(1/5).
inline std::vector<ScalingRow> lemma22_rows(const ScalingConfig& c, const WavePattern& w) {
    const double emin = smallest(c.values), emax = largest(c.values);
    const double dx = c.dx > 0.0 ? c.dx : std::min(default_sigma(emin), std::sqrt(emin)) / 10.0;
    const double margin = 12.0 * default_sigma(emax);
    const double xa = w.fan_left * c.T - margin, xb = std::max(0.0, w.fan_right * c.h) + margin;
    const UniformGrid g = UniformGrid::span(xa, xb, static_cast<std::size_t>((xb - xa) / dx) + 2);
    const std::vector<double> times = time_levels(c.h, c.T, g.dx, 1.2 * std::abs(w.fan_left), 0.9);
    std::vector<ScalingRow> rows;
    for (double eps : c.values) {
        const HyperbolicField<3> f = build_hyperbolic_wave_I(w, eps, default_sigma(eps), g, times, c.transport);
        rows.push_back({eps, f.sup_norm_squared()});
    }
    return rows;
}

/// sup over the time levels of ||b||_{L2}^2 with the model contact sources.
inline std::vector<ScalingRow> lemma26_rows(const ScalingConfig& c, const WavePattern& w) {
    const double emin = smallest(c.values);
    const double dx = c.dx > 0.0 ? c.dx : std::min(default_sigma(emin), std::sqrt(emin)) / 10.0;
    const UniformGrid g = UniformGrid::span(-4.0, 4.0, static_cast<std::size_t>(8.0 / dx) + 2);
    std::vector<ScalingRow> rows;
    for (double eps : c.values) {
        CompositeOptions o;
        o.h = c.h;
        o.T = c.T;
        o.transport = c.transport;
        const CompositeProfile cp(w, eps, g, o);
        rows.push_back({eps, cp.wave_II()->sup_norm_squared()});
    }
    return rows;
}

}

/// Log-log slope of the lemma's norm across the swept parameter, with the predicted exponent.
inline ScalingReport run_scaling_study(ScalingStudy which, const ScalingConfig& c) {
    if (c.values.size() < 3) fail(Errc::insufficient_data, "scaling study needs at least 3 parameter values");
    for (double v : c.values)
        if (!(v > 0.0)) fail(Errc::invalid_config, "scaling parameters must be positive");
    const WavePattern w = solve_riemann(c.left, c.right);
    ScalingReport r;
    r.study = which;
    switch (which) {
        case ScalingStudy::lemma21:
            r.rows = detail::lemma21_rows(c, w);
            r.predicted = -1.0 + 1.0 / c.p;
            break;
        case ScalingStudy::lemma22:
            r.rows = detail::lemma22_rows(c, w);
            r.predicted = 2.0 - 1.0 / 5.0;
            break;
        case ScalingStudy::lemma26:
            r.rows = detail::lemma26_rows(c, w);
            r.predicted = 2.5;
            break;
        case ScalingStudy::shock_tail:
            // decay rate in x of the shock layer; the profile is a function of x / eps
            for (double eps : c.values) r.rows.push_back({eps, ShockWave(w, c.transport, eps).tail_rate(true)});
            r.predicted = -1.0;
            break;
        case ScalingStudy::contact_tail:
            // Gaussian coefficient of ln|Theta_x| against x^2 at t = 0; the profile is a function of x / sqrt(eps)
            for (double eps : c.values) r.rows.push_back({eps, ContactWave(w, c.transport, eps).tail_fit().c / eps});
            r.predicted = -1.0;
            break;
    }
    std::vector<double> x, y;
    for (const auto& row : r.rows) {
        x.push_back(row.parameter);
        y.push_back(row.value);
    }
    const LinearFit f = loglog_fit(x, y);
    r.slope = f.slope;
    r.residual = f.residual;
    r.r_squared = f.r_squared;
    return r;
}

}

#endif
