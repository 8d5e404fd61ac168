#ifndef HLIM_KINETIC_VELOCITY_GRID_HPP
#define HLIM_KINETIC_VELOCITY_GRID_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"

namespace hlim {

/// Uniform xi_1 grid with trapezoid weights.
struct VelocityGrid {
    std::vector<double> xi;
    std::vector<double> weight;

    std::size_t size() const { return xi.size(); }
    double max_abs() const { return std::max(std::abs(xi.front()), std::abs(xi.back())); }
    double spacing() const { return xi[1] - xi[0]; }

    static VelocityGrid uniform(double lo, double hi, std::size_t n) {
        if (n < 3 || !(hi > lo)) fail(Errc::domain_error, "velocity grid needs hi > lo and n >= 3");
        VelocityGrid g;
        g.xi.resize(n);
        g.weight.resize(n);
        const double d = (hi - lo) / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            g.xi[k] = lo + d * static_cast<double>(k);
            g.weight[k] = d;
        }
        g.weight.front() *= 0.5;
        g.weight.back() *= 0.5;
        return g;
    }
};

/// Reduced Maxwellian pair: g = rho (2 pi R theta)^(-1/2) exp(-(xi - u)^2 / (2 R theta)), h = 2 R theta g.
inline void reduced_maxwellian(double rho, double u, double theta, const VelocityGrid& vg, double* g, double* h) {
    const double rt = R_gas * theta;
    const double c = rho / std::sqrt(2.0 * M_PI * rt);
    const double inv = 1.0 / (2.0 * rt);
    for (std::size_t k = 0; k < vg.size(); ++k) {
        const double d = vg.xi[k] - u;
        g[k] = c * std::exp(-d * d * inv);
        h[k] = 2.0 * rt * g[k];
    }
}

struct Moments {
    double rho = 0.0;
    double momentum = 0.0;
    double energy = 0.0;  ///< rho E

    double u() const { return momentum / rho; }
    double E() const { return energy / rho; }
    double theta() const { return E() - 0.5 * u() * u(); }
};

/// rho = int g, rho u = int xi g, rho E = (1/2) int (xi^2 g + h).
inline Moments reduced_moments(const double* g, const double* h, const VelocityGrid& vg) {
    Moments m;
    for (std::size_t k = 0; k < vg.size(); ++k) {
        const double wg = vg.weight[k] * g[k];
        m.rho += wg;
        m.momentum += vg.xi[k] * wg;
        m.energy += 0.5 * (vg.xi[k] * vg.xi[k] * wg + vg.weight[k] * h[k]);
    }
    return m;
}

/// Bounds cover u +- width sqrt(R theta) for every state; moments of each state's Maxwellian
/// must be reproduced to `tol`.
inline VelocityGrid make_velocity_grid(const std::vector<GasState>& states, std::size_t n = 128, double width = 8.0,
                                       double tol = 1e-8) {
    if (states.empty()) fail(Errc::domain_error, "velocity grid needs at least one state");
    double lo = 1e300, hi = -1e300;
    for (const auto& s : states) {
        validate(s);
        const double c = width * std::sqrt(R_gas * s.theta);
        lo = std::min(lo, s.u1 - c);
        hi = std::max(hi, s.u1 + c);
    }
    VelocityGrid vg = VelocityGrid::uniform(lo, hi, n);
    std::vector<double> g(n), h(n);
    for (const auto& s : states) {
        reduced_maxwellian(s.rho(), s.u1, s.theta, vg, g.data(), h.data());
        const Moments m = reduced_moments(g.data(), h.data(), vg);
        const double err = std::max({std::abs(m.rho - s.rho()) / s.rho(), std::abs(m.u() - s.u1),
                                     std::abs(m.theta() - s.theta) / s.theta});
        if (!(err <= tol)) fail(Errc::grid_insufficient, "velocity grid does not resolve the Maxwellian moments");
    }
    return vg;
}

}

#endif
