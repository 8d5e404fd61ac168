#ifndef HLIM_HARNESS_KINETIC_RUN_HPP
#define HLIM_HARNESS_KINETIC_RUN_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/harness/config.hpp"
#include "hlim/harness/io.hpp"
#include "hlim/kinetic.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

/// Single kinetic run configured from the shared key-value format.
struct KineticConfig {
    GasState left{1.0, 0.0, 0.0, 0.0, 1.5};
    GasState right{8.0, 0.0, 0.0, 0.0, 1.2};
    double eps = 1e-3;
    std::size_t n_x = 2000;
    std::size_t n_xi = 128;
    double x_lo = -6.0;
    double x_hi = 6.0;
    double t_end = 2.0;
    std::vector<double> snapshots;  ///< explicit times; empty selects t_end only
    std::size_t snapshot_count = 0;  ///< equally spaced times ending at t_end, used when snapshots is empty
    InitMode init_mode = InitMode::riemann;
    double h = 0.1;  ///< start time of the composite initialization
    double cfl = max_cfl;
    double mu0 = 1.0;
    double prandtl = 1.0;
    double star_theta_factor = 0.75;

    /// `snapshots` is a count when it is a single integer, otherwise a list of times.
    static KineticConfig from(const KeyValueConfig& c) {
        KineticConfig k;
        if (c.has("left")) k.left = c.state("left");
        if (c.has("right")) k.right = c.state("right");
        k.eps = c.number("eps", k.eps);
        k.n_x = c.count("n_x", k.n_x);
        k.n_xi = c.count("n_xi", k.n_xi);
        if (c.has("x_span")) {
            const auto span = c.list("x_span");
            if (span.size() == 1) {
                k.x_lo = -span[0];
                k.x_hi = span[0];
            } else if (span.size() == 2) {
                k.x_lo = span[0];
                k.x_hi = span[1];
            } else {
                fail(Errc::invalid_config, "x_span must be L or lo,hi");
            }
        }
        k.t_end = c.number("t_end", k.t_end);
        if (c.has("snapshots")) {
            const std::string& s = c.str("snapshots");
            if (s.find_first_of(",.eE") == std::string::npos) k.snapshot_count = c.count("snapshots");
            else k.snapshots = c.list("snapshots");
        }
        if (c.has("init_mode")) k.init_mode = parse_init_mode(c.str("init_mode"));
        k.h = c.number("h", k.h);
        k.cfl = c.number("cfl", k.cfl);
        k.mu0 = c.number("mu0", k.mu0);
        k.prandtl = c.number("prandtl", k.prandtl);
        k.star_theta_factor = c.number("star_theta_factor", k.star_theta_factor);
        k.validate();
        return k;
    }

    void validate() const {
        if (!(eps > 0.0)) fail(Errc::invalid_config, "eps must be positive");
        if (!(x_hi > x_lo)) fail(Errc::invalid_config, "x_span must be increasing");
        if (n_x < 16 || n_xi < 16) fail(Errc::invalid_config, "n_x and n_xi must be at least 16");
        if (!(cfl > 0.0) || cfl > max_cfl) fail(Errc::invalid_config, "cfl must lie in (0, 0.9]");
        if (!(star_theta_factor > 0.5) || !(star_theta_factor < 1.0))
            fail(Errc::invalid_config, "star_theta_factor must lie in (1/2, 1)");
        const double t0 = init_mode == InitMode::composite ? h : 0.0;
        if (!(t_end >= t0)) fail(Errc::invalid_config, "t_end precedes the start time");
        if (init_mode == InitMode::composite && !(t_end > h)) fail(Errc::invalid_config, "composite start needs t_end > h");
    }

    std::vector<double> snapshot_times() const {
        if (!snapshots.empty()) return snapshots;
        const double t0 = init_mode == InitMode::composite ? h : 0.0;
        std::vector<double> t;
        for (std::size_t i = 1; i <= snapshot_count; ++i)
            t.push_back(t0 + (t_end - t0) * static_cast<double>(i) / static_cast<double>(snapshot_count));
        if (t.empty()) t.push_back(t_end);
        return t;
    }
};

struct KineticRun {
    WavePattern pattern;
    GasState star;
    std::vector<ReducedKineticState> snapshots;
};

inline KineticRun run_kinetic(const KineticConfig& k) {
    k.validate();
    KineticRun r;
    r.pattern = solve_riemann(k.left, k.right);
    r.star = r.pattern.mid_star;
    r.star.theta *= k.star_theta_factor;
    const UniformGrid x = UniformGrid::cells(k.x_lo, k.x_hi, k.n_x);
    const VelocityGrid vg =
        make_velocity_grid({r.pattern.left, r.pattern.mid_star, r.pattern.mid_upper, r.pattern.right}, k.n_xi);
    InitOptions io;
    io.mode = k.init_mode;
    io.h = k.h;
    io.T = k.t_end;
    io.composite.transport = TransportModel::power_law(k.mu0, k.prandtl);
    ReducedKineticState s0 = initial_state(r.pattern, x, vg, k.eps, io);
    RunOptions ro;
    ro.cfl = k.cfl;
    ro.transport = io.composite.transport;
    r.snapshots = run(std::move(s0), k.t_end, k.snapshot_times(), ro);
    return r;
}

/// Columns x, rho, u1, theta, E, micro_norm; micro_norm is the distance to the local Maxwellian.
inline CsvTable kinetic_snapshot_table(const ReducedKineticState& s, const GasState& star) {
    const MacroFields m = moments(s);
    CsvTable t;
    t.add("x", s.x_grid.points());
    t.add("rho", m.rho);
    t.add("u1", m.u1);
    t.add("theta", m.theta);
    t.add("E", m.E);
    t.add("micro_norm", micro_distance(s, m, star));
    return t;
}

}

#endif
