#ifndef HLIM_HARNESS_SWEEP_HPP
#define HLIM_HARNESS_SWEEP_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlim/error.hpp"
#include "hlim/harness/config.hpp"
#include "hlim/kinetic.hpp"
#include "hlim/numerics.hpp"
#include "hlim/profiles.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

struct SweepConfig {
    GasState left{1.0, 0.0, 0.0, 0.0, 1.0};
    GasState right{1.0 + 0.2 / std::sqrt(2.0), 0.0, 0.0, 0.0, 1.0 - 0.2 / std::sqrt(2.0)};
    std::vector<double> eps_list{1.0 / 50, 1.0 / 100, 1.0 / 200, 1.0 / 400};
    double h = 0.1;
    double T = 0.5;
    std::size_t n_x = 2000;
    std::size_t n_xi = 128;
    double x_lo = -3.5;
    double x_hi = 1.5;
    std::size_t snapshots = 5;  ///< equally spaced times in [h, T], both ends included
    InitMode init_mode = InitMode::composite;
    double cfl = max_cfl;
    double mu0 = 1.0;
    double prandtl = 1.0;
    double star_theta_factor = 0.75;  ///< theta_star = factor * theta of mid_star, in (1/2, 1)
    bool wave_I = true;
    bool wave_II = true;
    bool refinement_check = true;
    double refinement_tolerance = 0.05;

    std::vector<double> snapshot_times() const {
        std::vector<double> t(snapshots);
        for (std::size_t i = 0; i < snapshots; ++i)
            t[i] = snapshots == 1 ? T : h + (T - h) * static_cast<double>(i) / static_cast<double>(snapshots - 1);
        return t;
    }

    GasState star(const WavePattern& w) const {
        GasState s = w.mid_star;
        s.theta *= star_theta_factor;
        return s;
    }

    void validate() const {
        if (eps_list.empty()) fail(Errc::invalid_config, "eps_list is empty");
        for (std::size_t i = 0; i < eps_list.size(); ++i) {
            if (!(eps_list[i] > 0.0)) fail(Errc::invalid_config, "eps_list entries must be positive");
            if (i > 0 && !(eps_list[i] < eps_list[i - 1])) fail(Errc::invalid_config, "eps_list must be strictly decreasing");
        }
        if (!(h > 0.0) || !(T > h)) fail(Errc::invalid_config, "need 0 < h < T");
        if (!(x_hi > x_lo)) fail(Errc::invalid_config, "x_span must be increasing");
        if (n_x < 16 || n_xi < 16) fail(Errc::invalid_config, "n_x and n_xi must be at least 16");
        if (snapshots < 1) fail(Errc::invalid_config, "need at least one snapshot");
        if (!(cfl > 0.0) || cfl > max_cfl) fail(Errc::invalid_config, "cfl must lie in (0, 0.9]");
        if (!(star_theta_factor > 0.5) || !(star_theta_factor < 1.0))
            fail(Errc::invalid_config, "star_theta_factor must lie in (1/2, 1)");
        const double e = eps_list.back();
        const double dx = (x_hi - x_lo) / static_cast<double>(n_x);
        if (dx > std::min(default_sigma(e), std::sqrt(e)) / 10.0)
            fail(Errc::invalid_config, "kinetic grid does not resolve min(sigma, sqrt(eps)) / 10 at the smallest eps");
    }

    static SweepConfig from(const KeyValueConfig& c) {
        SweepConfig s;
        if (c.has("left")) s.left = c.state("left");
        if (c.has("right")) s.right = c.state("right");
        s.eps_list = c.list("eps_list", s.eps_list);
        if (c.has("eps") && !c.has("eps_list")) s.eps_list = {c.number("eps")};
        s.h = c.number("h", s.h);
        s.T = c.number("T", c.number("t_end", s.T));
        s.n_x = c.count("n_x", s.n_x);
        s.n_xi = c.count("n_xi", s.n_xi);
        if (c.has("x_span")) {
            const auto span = c.list("x_span");
            if (span.size() == 1) {
                s.x_lo = -span[0];
                s.x_hi = span[0];
            } else if (span.size() == 2) {
                s.x_lo = span[0];
                s.x_hi = span[1];
            } else {
                fail(Errc::invalid_config, "x_span must be L or lo,hi");
            }
        }
        s.snapshots = c.count("snapshots", s.snapshots);
        if (c.has("init_mode")) s.init_mode = parse_init_mode(c.str("init_mode"));
        s.cfl = c.number("cfl", s.cfl);
        s.mu0 = c.number("mu0", s.mu0);
        s.prandtl = c.number("prandtl", s.prandtl);
        s.star_theta_factor = c.number("star_theta_factor", s.star_theta_factor);
        s.wave_I = c.flag("wave_I", s.wave_I);
        s.wave_II = c.flag("wave_II", s.wave_II);
        s.refinement_check = c.flag("refinement_check", s.refinement_check);
        s.refinement_tolerance = c.number("refinement_tolerance", s.refinement_tolerance);
        s.validate();
        return s;
    }
};

struct SweepRow {
    double eps = 0.0;
    double sup_error = 0.0;            ///< sup over Sigma_{h,T} of the distance to the inviscid solution
    double l2_error = 0.0;             ///< max over snapshots of the L2 norm over Sigma_{h,T}
    double sup_error_composite = 0.0;  ///< same sup with the composite profile as reference
    double envelope_ratio = 0.0;       ///< sup_error / (eps^(1/5) |ln eps|)
    double runtime_s = 0.0;
    std::size_t n_x = 0;
    std::size_t n_xi = 0;
    std::size_t sigma_points = 0;  ///< space-time points inside Sigma_{h,T}

    bool operator==(const SweepRow&) const = default;
};

struct RefinementCheck {
    bool performed = false;
    double eps = 0.0;
    std::size_t n_x_fine = 0;
    double sup_coarse = 0.0;
    double sup_fine = 0.0;
    double relative_change = 0.0;
    bool passed = false;

    bool operator==(const RefinementCheck&) const = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double fitted_order = 0.0;  ///< OLS slope of ln(sup_error) against ln(eps)
    double fit_intercept = 0.0;
    double fit_residual = 0.0;
    double fit_r_squared = 0.0;
    RefinementCheck refinement;
    bool accepted = false;  ///< fit available and refinement self-check passed (or skipped)

    bool operator==(const SweepResult&) const = default;
};

inline void to_json(nlohmann::json& j, const SweepRow& r) {
    j = {{"eps", r.eps},
         {"sup_error", r.sup_error},
         {"l2_error", r.l2_error},
         {"sup_error_composite", r.sup_error_composite},
         {"envelope_ratio", r.envelope_ratio},
         {"runtime_s", r.runtime_s},
         {"n_x", r.n_x},
         {"n_xi", r.n_xi},
         {"sigma_points", r.sigma_points}};
}

inline void from_json(const nlohmann::json& j, SweepRow& r) {
    j.at("eps").get_to(r.eps);
    j.at("sup_error").get_to(r.sup_error);
    j.at("l2_error").get_to(r.l2_error);
    j.at("sup_error_composite").get_to(r.sup_error_composite);
    j.at("envelope_ratio").get_to(r.envelope_ratio);
    j.at("runtime_s").get_to(r.runtime_s);
    j.at("n_x").get_to(r.n_x);
    j.at("n_xi").get_to(r.n_xi);
    j.at("sigma_points").get_to(r.sigma_points);
}

inline void to_json(nlohmann::json& j, const RefinementCheck& r) {
    j = {{"performed", r.performed},   {"eps", r.eps},
         {"n_x_fine", r.n_x_fine},     {"sup_coarse", r.sup_coarse},
         {"sup_fine", r.sup_fine},     {"relative_change", r.relative_change},
         {"passed", r.passed}};
}

inline void from_json(const nlohmann::json& j, RefinementCheck& r) {
    j.at("performed").get_to(r.performed);
    j.at("eps").get_to(r.eps);
    j.at("n_x_fine").get_to(r.n_x_fine);
    j.at("sup_coarse").get_to(r.sup_coarse);
    j.at("sup_fine").get_to(r.sup_fine);
    j.at("relative_change").get_to(r.relative_change);
    j.at("passed").get_to(r.passed);
}

inline void to_json(nlohmann::json& j, const SweepResult& r) {
    j = {{"rows", r.rows},
         {"fitted_order", r.fitted_order},
         {"fit_intercept", r.fit_intercept},
         {"fit_residual", r.fit_residual},
         {"fit_r_squared", r.fit_r_squared},
         {"refinement", r.refinement},
         {"accepted", r.accepted}};
}

inline void from_json(const nlohmann::json& j, SweepResult& r) {
    j.at("rows").get_to(r.rows);
    j.at("fitted_order").get_to(r.fitted_order);
    j.at("fit_intercept").get_to(r.fit_intercept);
    j.at("fit_residual").get_to(r.fit_residual);
    j.at("fit_r_squared").get_to(r.fit_r_squared);
    j.at("refinement").get_to(r.refinement);
    j.at("accepted").get_to(r.accepted);
}

inline double envelope(double eps) { return std::pow(eps, 0.2) * std::abs(std::log(eps)); }

/// Per-snapshot diagnostics handed to observers of a sweep.
struct SnapshotView {
    double eps;
    const ReducedKineticState& state;
    const MacroFields& macro;
    const MacroFields& inviscid;
    const MacroFields& composite;
    const std::vector<double>& distance;      ///< to the inviscid reference
    const std::vector<double>& micro_norm;    ///< to the state's own local Maxwellian
    const std::vector<unsigned char>& in_sigma;
};

using SnapshotObserver = std::function<void(const SnapshotView&)>;

namespace detail {

inline MacroFields macro_from_states(const std::vector<GasState>& cells) {
    MacroFields m;
    for (const GasState& s : cells) {
        m.rho.push_back(s.rho());
        m.u1.push_back(s.u1);
        m.theta.push_back(s.theta);
        m.E.push_back(s.theta + 0.5 * s.u1 * s.u1);
    }
    return m;
}

/// Mass coordinate of X under the inviscid flow, used to test membership of Sigma_{h,T}.
inline bool in_sigma(const WavePattern& w, double h, double T, double t, double X) {
    if (t < h || t > T) return false;
    const double x = lagrangian_coordinate(w, t, X);
    return std::abs(x) >= h && std::abs(x - w.s3 * t) >= h;
}

struct RunMeasure {
    double sup = 0.0, l2 = 0.0, sup_composite = 0.0;
    std::size_t points = 0;
};

inline RunMeasure measure_run(const SweepConfig& cfg, double eps, std::size_t n_x, const SnapshotObserver* observer) {
    const WavePattern w = solve_riemann(cfg.left, cfg.right);
    const GasState star = cfg.star(w);
    const UniformGrid x = UniformGrid::cells(cfg.x_lo, cfg.x_hi, n_x);
    const VelocityGrid vg = make_velocity_grid({w.left, w.mid_star, w.mid_upper, w.right}, cfg.n_xi);
    const TransportModel tm = TransportModel::power_law(cfg.mu0, cfg.prandtl);

    // waves must stay clear of the outflow boundaries up to T
    const double sigma = default_sigma(eps);
    const double head = eulerian_position(w, cfg.T, w.fan_left * cfg.T) - 5.0 * sigma * w.left.v;
    const double front = eulerian_position(w, cfg.T, w.s3 * cfg.T) + 40.0 * eps * w.right.v;
    if (head <= cfg.x_lo || front >= cfg.x_hi) fail(Errc::invalid_config, "x_span too small: waves reach the boundary");

    CompositeOptions co;
    co.h = cfg.h;
    co.T = cfg.T;
    co.wave_I = cfg.wave_I;
    co.wave_II = cfg.wave_II;
    co.transport = tm;
    const CompositeProfile cp(w, eps, composite_lagrangian_grid(w, x, eps, cfg.h, cfg.T), co);

    ReducedKineticState s0 = cfg.init_mode == InitMode::composite
                                 ? initial_state(cp, x, vg)
                                 : initial_state(w, x, vg, eps, InitOptions{InitMode::riemann, cfg.h, cfg.T, co});
    std::vector<ReducedKineticState> snaps;
    const std::vector<double> times = cfg.snapshot_times();
    RunOptions ro;
    ro.cfl = cfg.cfl;
    ro.transport = tm;
    if (s0.time == times.front()) snaps.push_back(s0);
    for (auto& s : run(std::move(s0), cfg.T, times, ro)) snaps.push_back(std::move(s));

    RunMeasure r;
    for (const ReducedKineticState& s : snaps) {
        const double t = s.time;
        if (t < cfg.h - 1e-12) continue;
        const MacroFields macro = moments(s);
        std::vector<GasState> inv(x.n);
        for (std::size_t i = 0; i < x.n; ++i) inv[i] = euler_solution_eulerian(w, t, x.at(i));
        const MacroFields ref = macro_from_states(inv);
        const MacroFields comp = macro_from_states(composite_cells(cp, t, x));
        const std::vector<double> d = micro_distance(s, ref, star);
        const std::vector<double> dc = micro_distance(s, comp, star);
        std::vector<unsigned char> mask(x.n);
        double l2 = 0.0;
        for (std::size_t i = 0; i < x.n; ++i) {
            mask[i] = in_sigma(w, cfg.h, cfg.T, t, x.at(i)) ? 1 : 0;
            if (!mask[i]) continue;
            const double xl = lagrangian_coordinate(w, t, x.at(i));
            if (!(std::abs(xl) >= cfg.h && std::abs(xl - w.s3 * t) >= cfg.h && t >= cfg.h && t <= cfg.T))
                fail(Errc::corrupted_state, "point outside Sigma_{h,T} entered the sup");
            r.sup = std::max(r.sup, d[i]);
            r.sup_composite = std::max(r.sup_composite, dc[i]);
            l2 += d[i] * d[i] * x.dx;
            ++r.points;
        }
        r.l2 = std::max(r.l2, std::sqrt(l2));
        if (observer && *observer) {
            const std::vector<double> own = micro_distance(s, macro, star);
            (*observer)(SnapshotView{eps, s, macro, ref, comp, d, own, mask});
        }
    }
    return r;
}

}

/// Knudsen-number sweep of the distance to the inviscid solution over Sigma_{h,T}.
inline SweepResult run_convergence_sweep(const SweepConfig& cfg, const SnapshotObserver& observer = {}) {
    cfg.validate();
    if (cfg.eps_list.size() < 3) fail(Errc::insufficient_data, "order fit needs at least 3 eps values");
    SweepResult res;
    for (double eps : cfg.eps_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const detail::RunMeasure m = detail::measure_run(cfg, eps, cfg.n_x, &observer);
        SweepRow row;
        row.eps = eps;
        row.sup_error = m.sup;
        row.l2_error = m.l2;
        row.sup_error_composite = m.sup_composite;
        row.envelope_ratio = m.sup / envelope(eps);
        row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.n_x = cfg.n_x;
        row.n_xi = cfg.n_xi;
        row.sigma_points = m.points;
        res.rows.push_back(row);
    }
    std::vector<double> e, err;
    for (const auto& r : res.rows) {
        e.push_back(r.eps);
        err.push_back(std::max(r.sup_error, std::numeric_limits<double>::min()));
    }
    const LinearFit fit = loglog_fit(e, err);
    res.fitted_order = fit.slope;
    res.fit_intercept = fit.intercept;
    res.fit_residual = fit.residual;
    res.fit_r_squared = fit.r_squared;
    if (cfg.refinement_check) {
        // doubling n_x at the smallest eps, where the layers are thinnest
        RefinementCheck& rc = res.refinement;
        rc.performed = true;
        rc.eps = cfg.eps_list.back();
        rc.n_x_fine = 2 * cfg.n_x;
        rc.sup_coarse = res.rows.back().sup_error;
        rc.sup_fine = detail::measure_run(cfg, rc.eps, rc.n_x_fine, nullptr).sup;
        rc.relative_change = std::abs(rc.sup_fine - rc.sup_coarse) / std::max(rc.sup_fine, 1e-300);
        rc.passed = rc.relative_change < cfg.refinement_tolerance;
    }
    res.accepted = std::isfinite(res.fitted_order) && (!res.refinement.performed || res.refinement.passed);
    return res;
}

enum class ReportFormat { csv, json };

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV columns eps, sup_error, l2_error, fitted_order (last row only), envelope_ratio.
inline std::string sweep_csv(const SweepResult& r) {
    std::string out = "eps,sup_error,l2_error,fitted_order,envelope_ratio\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const SweepRow& row = r.rows[i];
        out += format_number(row.eps) + "," + format_number(row.sup_error) + "," + format_number(row.l2_error) + ",";
        if (i + 1 == r.rows.size()) out += format_number(r.fitted_order);
        out += "," + format_number(row.envelope_ratio) + "\n";
    }
    return out;
}

inline void emit_report(const SweepResult& r, const std::string& path, ReportFormat format) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(Errc::io_error, "cannot write report '" + path + "'");
    if (format == ReportFormat::csv) f << sweep_csv(r);
    else f << nlohmann::json(r).dump(2) << "\n";
    if (!f) fail(Errc::io_error, "write failed for '" + path + "'");
}

inline SweepResult load_sweep_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(Errc::io_error, "cannot read report '" + path + "'");
    try {
        return nlohmann::json::parse(f).get<SweepResult>();
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::io_error, "malformed report '" + path + "': " + e.what());
    }
}

}

#endif
