#ifndef HLIM_PROFILES_COORDINATES_HPP
#define HLIM_PROFILES_COORDINATES_HPP

#include <cmath>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/numerics.hpp"
#include "hlim/profiles/field.hpp"

namespace hlim {

/// Fields on a uniform Eulerian grid; `x_lagrangian` is the mass coordinate of each point.
struct EulerianProfile {
    UniformGrid grid;
    std::vector<double> rho, u1, u2, u3, theta, x_lagrangian;
};

namespace detail {

/// Value at x = 0 of a cumulative integral sampled on a grid, extrapolated linearly if needed.
inline double value_at_zero(const std::vector<double>& x, const std::vector<double>& I, const std::vector<double>& f) {
    if (0.0 <= x.front()) return I.front() - f.front() * x.front();
    if (0.0 >= x.back()) return I.back() - f.back() * x.back();
    std::size_t i = 0;
    while (x[i + 1] < 0.0) ++i;
    // trapezoid on the partial cell with the linearly interpolated integrand
    const double w = (0.0 - x[i]) / (x[i + 1] - x[i]);
    const double f0 = (1.0 - w) * f[i] + w * f[i + 1];
    return I[i] + 0.5 * (0.0 - x[i]) * (f[i] + f0);
}

}

/// X(x) = anchor + int_0^x V dy by the cumulative trapezoid rule, then monotone resampling
/// onto a uniform Eulerian grid with n_out points (default: same count).
inline EulerianProfile lagrangian_to_eulerian(const FieldSlice& f, const UniformGrid& xg, double anchor = 0.0,
                                              std::size_t n_out = 0) {
    if (f.size() != xg.n) fail(Errc::domain_error, "field and grid sizes differ");
    for (double v : f.V)
        if (!(v > 0.0)) fail(Errc::domain_error, "specific volume must be positive");
    const std::vector<double> x = xg.points();
    std::vector<double> X = cumulative_trapezoid(x, f.V);
    const double X0 = detail::value_at_zero(x, X, f.V);
    for (double& v : X) v += anchor - X0;
    if (n_out == 0) n_out = xg.n;
    EulerianProfile e;
    e.grid = UniformGrid::span(X.front(), X.back(), n_out);
    const MonotoneCubic iV(X, f.V), iU1(X, f.U1), iU2(X, f.U2), iU3(X, f.U3), iT(X, f.Theta), ix(X, x);
    for (auto* v : {&e.rho, &e.u1, &e.u2, &e.u3, &e.theta, &e.x_lagrangian}) v->resize(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double Xi = e.grid.at(i);
        e.rho[i] = 1.0 / iV(Xi);
        e.u1[i] = iU1(Xi);
        e.u2[i] = iU2(Xi);
        e.u3[i] = iU3(Xi);
        e.theta[i] = iT(Xi);
        e.x_lagrangian[i] = ix(Xi);
    }
    return e;
}

/// Inverse map: x(X) = int_{X(0)}^X rho dX', resampled onto the Lagrangian grid xg.
inline FieldSlice eulerian_to_lagrangian(const EulerianProfile& e, const UniformGrid& xg, double anchor = 0.0) {
    const std::vector<double> X = e.grid.points();
    std::vector<double> shifted(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) shifted[i] = X[i] - anchor;
    std::vector<double> m = cumulative_trapezoid(shifted, e.rho);
    const double m0 = detail::value_at_zero(shifted, m, e.rho);
    for (double& v : m) v -= m0;
    std::vector<double> V(e.rho.size());
    for (std::size_t i = 0; i < V.size(); ++i) V[i] = 1.0 / e.rho[i];
    const MonotoneCubic iV(m, V), iU1(m, e.u1), iU2(m, e.u2), iU3(m, e.u3), iT(m, e.theta);
    FieldSlice f(xg.n);
    for (std::size_t i = 0; i < xg.n; ++i) {
        const double x = xg.at(i);
        f.V[i] = iV(x);
        f.U1[i] = iU1(x);
        f.U2[i] = iU2(x);
        f.U3[i] = iU3(x);
        f.Theta[i] = iT(x);
    }
    f.fill_energy();
    f.fill_derivatives(xg.dx);
    return f;
}

}

#endif
