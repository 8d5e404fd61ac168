#ifndef HLIM_KINETIC_SOLVER_HPP
#define HLIM_KINETIC_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"
#include "hlim/kinetic/velocity_grid.hpp"
#include "hlim/numerics.hpp"
#include "hlim/transport.hpp"

namespace hlim {

enum class Boundary { outflow, periodic };

/// Reduced distributions g = int f dxi_2 dxi_3 and h = int (xi_2^2 + xi_3^2) f dxi_2 dxi_3,
/// stored x-major: index i * n_xi + k.
struct ReducedKineticState {
    UniformGrid x_grid;  ///< cell centres
    VelocityGrid vgrid;
    std::vector<double> g, h;
    double eps = 1.0;
    double time = 0.0;
    Boundary boundary = Boundary::outflow;

    std::size_t nx() const { return x_grid.n; }
    std::size_t nxi() const { return vgrid.size(); }
    double* g_row(std::size_t i) { return g.data() + i * nxi(); }
    double* h_row(std::size_t i) { return h.data() + i * nxi(); }
    const double* g_row(std::size_t i) const { return g.data() + i * nxi(); }
    const double* h_row(std::size_t i) const { return h.data() + i * nxi(); }
};

/// Macroscopic fields; E = theta + u1^2 / 2.
struct MacroFields {
    std::vector<double> rho, u1, theta, E;

    std::size_t size() const { return rho.size(); }
    GasState state(std::size_t i) const { return GasState{1.0 / rho[i], u1[i], 0.0, 0.0, theta[i]}; }
};

inline MacroFields moments(const ReducedKineticState& s) {
    MacroFields m;
    const std::size_t n = s.nx();
    for (auto* v : {&m.rho, &m.u1, &m.theta, &m.E}) v->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Moments q = reduced_moments(s.g_row(i), s.h_row(i), s.vgrid);
        if (!(q.rho > 0.0)) fail(Errc::corrupted_state, "non-positive density at cell " + std::to_string(i));
        m.rho[i] = q.rho;
        m.u1[i] = q.u();
        m.E[i] = q.E();
        m.theta[i] = q.theta();
        if (!(m.theta[i] > 0.0)) fail(Errc::corrupted_state, "non-positive temperature at cell " + std::to_string(i));
    }
    return m;
}

/// Totals int int (g, xi g, (xi^2 g + h) / 2) dxi dx.
inline std::array<double, 3> conserved_totals(const ReducedKineticState& s) {
    std::array<double, 3> t{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < s.nx(); ++i) {
        const Moments q = reduced_moments(s.g_row(i), s.h_row(i), s.vgrid);
        t[0] += q.rho * s.x_grid.dx;
        t[1] += q.momentum * s.x_grid.dx;
        t[2] += q.energy * s.x_grid.dx;
    }
    return t;
}

/// Largest stable step dt = cfl dx / max|xi|.
inline double max_time_step(const ReducedKineticState& s, double cfl = 0.9) {
    return cfl * s.x_grid.dx / s.vgrid.max_abs();
}

inline constexpr double max_cfl = 0.9;

namespace detail {

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

/// Row index with ghost handling; i may range over [-2, n + 1].
inline std::size_t ghost_index(long i, std::size_t n, Boundary b) {
    const long ln = static_cast<long>(n);
    if (b == Boundary::periodic) return static_cast<std::size_t>(((i % ln) + ln) % ln);
    return static_cast<std::size_t>(std::clamp(i, 0L, ln - 1));
}

/// MUSCL-Hancock upwind transport of one distribution over time dt.
inline void transport(std::vector<double>& f, const UniformGrid& xg, const VelocityGrid& vg, Boundary b, double dt,
                      std::vector<double>& slope, std::vector<double>& flux) {
    const std::size_t n = xg.n, m = vg.size();
    const double r = dt / xg.dx;
    // slope rows for cells -1..n, stored at offset +1
    slope.resize((n + 2) * m);
    for (long i = -1; i <= static_cast<long>(n); ++i) {
        const double* fm = f.data() + ghost_index(i - 1, n, b) * m;
        const double* f0 = f.data() + ghost_index(i, n, b) * m;
        const double* fp = f.data() + ghost_index(i + 1, n, b) * m;
        double* s = slope.data() + static_cast<std::size_t>(i + 1) * m;
        for (std::size_t k = 0; k < m; ++k) s[k] = minmod(f0[k] - fm[k], fp[k] - f0[k]);
    }
    // flux at interface i + 1/2 for i = -1..n-1, stored at offset +1
    flux.resize((n + 1) * m);
    for (long i = -1; i < static_cast<long>(n); ++i) {
        const double* fl = f.data() + ghost_index(i, n, b) * m;
        const double* fr = f.data() + ghost_index(i + 1, n, b) * m;
        const double* sl = slope.data() + static_cast<std::size_t>(i + 1) * m;
        const double* sr = slope.data() + static_cast<std::size_t>(i + 2) * m;
        double* F = flux.data() + static_cast<std::size_t>(i + 1) * m;
        for (std::size_t k = 0; k < m; ++k) {
            const double xi = vg.xi[k];
            const double nu = xi * r;
            F[k] = xi >= 0.0 ? xi * (fl[k] + 0.5 * (1.0 - nu) * sl[k]) : xi * (fr[k] - 0.5 * (1.0 + nu) * sr[k]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double* fi = f.data() + i * m;
        const double* Fm = flux.data() + i * m;
        const double* Fp = flux.data() + (i + 1) * m;
        for (std::size_t k = 0; k < m; ++k) fi[k] -= r * (Fp[k] - Fm[k]);
    }
}

/// Maxwellian rescaled so its discrete moments equal (rho, rho u, rho E) exactly:
/// g <- g (alpha + beta (xi - u)), h <- gamma h.
inline void conservative_maxwellian(const Moments& q, const VelocityGrid& vg, double* g, double* h) {
    const double u = q.u();
    reduced_maxwellian(q.rho, u, q.theta(), vg, g, h);
    double A0 = 0, A1 = 0, B0 = 0, B1 = 0, C0 = 0, C1 = 0, H0 = 0;
    for (std::size_t k = 0; k < vg.size(); ++k) {
        const double w = vg.weight[k] * g[k];
        const double xi = vg.xi[k], d = xi - u;
        A0 += w;
        A1 += w * d;
        B0 += w * xi;
        B1 += w * xi * d;
        C0 += w * xi * xi;
        C1 += w * xi * xi * d;
        H0 += vg.weight[k] * h[k];
    }
    const double det = A0 * B1 - A1 * B0;
    const double alpha = (q.rho * B1 - A1 * q.momentum) / det;
    const double beta = (A0 * q.momentum - B0 * q.rho) / det;
    const double gamma = (2.0 * q.energy - alpha * C0 - beta * C1) / H0;
    for (std::size_t k = 0; k < vg.size(); ++k) {
        g[k] *= alpha + beta * (vg.xi[k] - u);
        h[k] *= gamma;
    }
}

}

/// Cell state with each cell at the discrete-moment-exact Maxwellian of the given macro state.
inline ReducedKineticState maxwellian_state(const UniformGrid& x, const VelocityGrid& vg, double eps,
                                            const std::vector<GasState>& cells) {
    if (cells.size() != x.n) fail(Errc::domain_error, "one macro state per cell required");
    if (!(eps > 0.0)) fail(Errc::domain_error, "Knudsen number must be positive");
    ReducedKineticState s;
    s.x_grid = x;
    s.vgrid = vg;
    s.eps = eps;
    s.g.resize(x.n * vg.size());
    s.h.resize(x.n * vg.size());
    for (std::size_t i = 0; i < x.n; ++i) {
        validate(cells[i]);
        const double rho = cells[i].rho();
        const Moments q{rho, rho * cells[i].u1, rho * (cells[i].theta + 0.5 * cells[i].u1 * cells[i].u1)};
        detail::conservative_maxwellian(q, vg, s.g_row(i), s.h_row(i));
    }
    return s;
}

/// Exact BGK relaxation over dt with tau = eps mu(theta) / p from the pre-relaxation moments.
inline void relax(ReducedKineticState& s, double dt, const TransportModel& tm) {
    if (std::isinf(s.eps)) return;
    const std::size_t m = s.nxi();
    std::vector<double> gM(m), hM(m);
    for (std::size_t i = 0; i < s.nx(); ++i) {
        double* g = s.g_row(i);
        double* h = s.h_row(i);
        const Moments q = reduced_moments(g, h, s.vgrid);
        const double theta = q.theta();
        if (!(q.rho > 0.0) || !(theta > 0.0) || !std::isfinite(theta))
            fail(Errc::corrupted_state, "invalid moments at x = " + std::to_string(s.x_grid.at(i)));
        const double p = q.rho * R_gas * theta;
        const double tau = s.eps * tm.mu(theta) / p;
        const double decay = std::exp(-dt / tau);
        detail::conservative_maxwellian(q, s.vgrid, gM.data(), hM.data());
        for (std::size_t k = 0; k < m; ++k) {
            g[k] = gM[k] + (g[k] - gM[k]) * decay;
            h[k] = hM[k] + (h[k] - hM[k]) * decay;
        }
    }
}

/// Strang step: half transport, exact relaxation, half transport.
inline void step(ReducedKineticState& s, double dt, const TransportModel& tm = TransportModel::power_law()) {
    if (!(s.eps > 0.0)) fail(Errc::domain_error, "Knudsen number must be positive");
    if (!(dt > 0.0) || dt > max_time_step(s, max_cfl) * (1.0 + 1e-12))
        fail(Errc::cfl_violation, "dt = " + std::to_string(dt) + " exceeds the transport bound " +
                                      std::to_string(max_time_step(s, max_cfl)));
    std::vector<double> slope, flux;
    detail::transport(s.g, s.x_grid, s.vgrid, s.boundary, 0.5 * dt, slope, flux);
    detail::transport(s.h, s.x_grid, s.vgrid, s.boundary, 0.5 * dt, slope, flux);
    relax(s, dt, tm);
    detail::transport(s.g, s.x_grid, s.vgrid, s.boundary, 0.5 * dt, slope, flux);
    detail::transport(s.h, s.x_grid, s.vgrid, s.boundary, 0.5 * dt, slope, flux);
    s.time += dt;
    const std::size_t m = s.nxi();
    for (std::size_t j = 0; j < s.g.size(); ++j) {
        if (!(s.g[j] >= 0.0) || !(s.h[j] >= 0.0)) {
            const std::size_t i = j / m, k = j % m;
            fail(Errc::positivity_loss, "negative or invalid distribution at x = " + std::to_string(s.x_grid.at(i)) +
                                            ", xi = " + std::to_string(s.vgrid.xi[k]) +
                                            ", t = " + std::to_string(s.time));
        }
    }
}

struct RunOptions {
    double cfl = max_cfl;
    TransportModel transport = TransportModel::power_law();
};

/// Steps at the CFL bound, shortening steps to land on each snapshot time.
/// Snapshot times are clipped to (time, t_end]; t_end itself is always the last snapshot.
inline std::vector<ReducedKineticState> run(ReducedKineticState state, double t_end, std::vector<double> snapshot_times,
                                            const RunOptions& opt = {}) {
    if (t_end < state.time) fail(Errc::domain_error, "t_end precedes the state time");
    if (!(opt.cfl > 0.0) || opt.cfl > max_cfl) fail(Errc::cfl_violation, "cfl must lie in (0, 0.9]");
    std::vector<ReducedKineticState> out;
    if (t_end == state.time) {
        out.push_back(std::move(state));
        return out;
    }
    std::sort(snapshot_times.begin(), snapshot_times.end());
    std::vector<double> targets;
    for (double t : snapshot_times)
        if (t > state.time && t < t_end) targets.push_back(t);
    targets.push_back(t_end);
    const double dt_max = max_time_step(state, opt.cfl);
    for (double target : targets) {
        while (state.time < target) {
            const double remaining = target - state.time;
            // merge a tiny final fragment into the previous step
            const double dt = remaining <= dt_max * (1.0 + 1e-9) ? remaining : dt_max;
            step(state, dt, opt.transport);
            if (dt == remaining) state.time = target;
        }
        out.push_back(state);
    }
    return out;
}

/// d(x)^2 = int [(g - g_ref)^2 + (h - h_ref)^2 / (2 R theta_star)^2] / g_star dxi, with g_star < 1e-300 dropped.
inline std::vector<double> micro_distance(const ReducedKineticState& s, const MacroFields& ref, const GasState& star) {
    if (ref.size() != s.nx()) fail(Errc::domain_error, "reference fields do not match the state grid");
    validate(star);
    const std::size_t m = s.nxi();
    std::vector<double> gs(m), hs(m), gr(m), hr(m);
    reduced_maxwellian(star.rho(), star.u1, star.theta, s.vgrid, gs.data(), hs.data());
    const double hscale = 1.0 / std::pow(2.0 * R_gas * star.theta, 2);
    std::vector<double> d(s.nx());
    for (std::size_t i = 0; i < s.nx(); ++i) {
        reduced_maxwellian(ref.rho[i], ref.u1[i], ref.theta[i], s.vgrid, gr.data(), hr.data());
        const double* g = s.g_row(i);
        const double* h = s.h_row(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (gs[k] < 1e-300) continue;
            const double dg = g[k] - gr[k], dh = h[k] - hr[k];
            acc += s.vgrid.weight[k] * (dg * dg + dh * dh * hscale) / gs[k];
        }
        d[i] = std::sqrt(acc);
    }
    return d;
}

/// Entropy of the transverse-Gaussian lift of (g, h), up to a multiple of the mass:
/// int int (2 g ln g - g ln h) dxi dx. Non-increasing under relaxation.
inline double reduced_entropy(const ReducedKineticState& s) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.nx(); ++i) {
        const double* g = s.g_row(i);
        const double* h = s.h_row(i);
        double acc = 0.0;
        for (std::size_t k = 0; k < s.nxi(); ++k) {
            if (g[k] <= 0.0) continue;
            if (!(h[k] > 0.0)) return std::numeric_limits<double>::infinity();
            acc += s.vgrid.weight[k] * g[k] * (2.0 * std::log(g[k]) - std::log(h[k]));
        }
        total += acc * s.x_grid.dx;
    }
    return total;
}

}

#endif
