#ifndef HLIM_KINETIC_INITIAL_HPP
#define HLIM_KINETIC_INITIAL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/kinetic/solver.hpp"
#include "hlim/profiles/coordinates.hpp"
#include "hlim/profiles/superpose.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

enum class InitMode {
    riemann,    ///< Maxwellian of the sharp Riemann data at t = 0
    composite,  ///< Maxwellian of the composite profile at t = h
};

inline InitMode parse_init_mode(const std::string& s) {
    if (s == "A" || s == "a" || s == "riemann") return InitMode::riemann;
    if (s == "B" || s == "b" || s == "composite") return InitMode::composite;
    fail(Errc::invalid_config, "unknown init_mode '" + s + "'");
}

struct InitOptions {
    InitMode mode = InitMode::composite;
    double h = 0.1;
    double T = 0.5;
    CompositeOptions composite;
};

/// Lagrangian grid covering the Eulerian interval of `x` for every t in [h, T], resolved per
/// the composite rule dx <= min(sigma, sqrt(eps)) / 10.
inline UniformGrid composite_lagrangian_grid(const WavePattern& w, const UniformGrid& x, double eps, double h, double T,
                                             double sigma = 0.0) {
    if (!(sigma > 0.0)) sigma = default_sigma(eps);
    const double dxl = std::min(sigma, std::sqrt(eps)) / 10.0;
    double xl = 1e300, xr = -1e300;
    for (double t : {h, 0.5 * (h + T), T}) {
        xl = std::min(xl, lagrangian_coordinate(w, t, x.front()));
        xr = std::max(xr, lagrangian_coordinate(w, t, x.back()));
    }
    xl -= 1.0;
    xr += 1.0;
    const auto n = static_cast<std::size_t>(std::ceil((xr - xl) / dxl)) + 1;
    return UniformGrid::span(xl, xr, n);
}

/// Composite macro states at time t sampled at Eulerian cell centres; the contact particle sits at u1* t.
/// Cells beyond the mapped window take the inviscid solution, which is constant there.
inline std::vector<GasState> composite_cells(const CompositeProfile& cp, double t, const UniformGrid& x) {
    const WavePattern& w = cp.pattern();
    const EulerianProfile e = lagrangian_to_eulerian(cp.full(t), cp.grid(), t * w.mid_star.u1);
    const std::vector<double> X = e.grid.points();
    const MonotoneCubic irho(X, e.rho), iu(X, e.u1), ith(X, e.theta);
    std::vector<GasState> cells(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        const double Xi = x.at(i);
        if (Xi <= X.front() || Xi >= X.back()) {
            cells[i] = euler_solution_eulerian(w, t, Xi);
        } else {
            cells[i] = GasState{1.0 / irho(Xi), iu(Xi), 0.0, 0.0, ith(Xi)};
        }
    }
    return cells;
}

/// Maxwellian of the composite profile at its initial time h.
inline ReducedKineticState initial_state(const CompositeProfile& cp, const UniformGrid& x, const VelocityGrid& vg) {
    const double h = cp.times().front();
    ReducedKineticState s = maxwellian_state(x, vg, cp.eps(), composite_cells(cp, h, x));
    s.time = h;
    return s;
}

inline ReducedKineticState initial_state(const WavePattern& w, const UniformGrid& x, const VelocityGrid& vg, double eps,
                                         const InitOptions& opt = {}) {
    if (opt.mode == InitMode::riemann) {
        std::vector<GasState> cells(x.n);
        for (std::size_t i = 0; i < x.n; ++i) cells[i] = x.at(i) < 0.0 ? w.left : w.right;
        return maxwellian_state(x, vg, eps, cells);
    }
    CompositeOptions co = opt.composite;
    co.h = opt.h;
    co.T = opt.T;
    const CompositeProfile cp(w, eps, composite_lagrangian_grid(w, x, eps, opt.h, opt.T, co.sigma), co);
    return initial_state(cp, x, vg);
}

}

#endif
