#ifndef HLIM_KINETIC_MACRO_MICRO_HPP
#define HLIM_KINETIC_MACRO_MICRO_HPP

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"
#include "hlim/kinetic/velocity_grid.hpp"

namespace hlim {

/// Tensor product of three per-axis rules centred on the state's velocity.
struct TensorQuadrature {
    std::array<VelocityGrid, 3> axis;

    std::size_t size() const { return axis[0].size() * axis[1].size() * axis[2].size(); }

    template <class F>
    void for_each(F&& f) const {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < axis[0].size(); ++a)
            for (std::size_t b = 0; b < axis[1].size(); ++b)
                for (std::size_t c = 0; c < axis[2].size(); ++c, ++idx) {
                    const std::array<double, 3> xi{axis[0].xi[a], axis[1].xi[b], axis[2].xi[c]};
                    f(idx, xi, axis[0].weight[a] * axis[1].weight[b] * axis[2].weight[c]);
                }
    }
};

inline TensorQuadrature tensor_quadrature(const GasState& s, std::size_t n_axis = 48, double width = 8.0) {
    validate(s);
    const double c = width * std::sqrt(R_gas * s.theta);
    const std::array<double, 3> u{s.u1, s.u2, s.u3};
    TensorQuadrature q;
    for (int i = 0; i < 3; ++i) q.axis[i] = VelocityGrid::uniform(u[i] - c, u[i] + c, n_axis);
    return q;
}

inline double maxwellian3(const GasState& s, const std::array<double, 3>& xi) {
    const double rt = R_gas * s.theta;
    const double d2 = std::pow(xi[0] - s.u1, 2) + std::pow(xi[1] - s.u2, 2) + std::pow(xi[2] - s.u3, 2);
    return s.rho() / std::pow(2.0 * M_PI * rt, 1.5) * std::exp(-d2 / (2.0 * rt));
}

/// The five orthonormal macroscopic directions chi_0..chi_4 at xi.
inline std::array<double, 5> macro_basis(const GasState& s, const std::array<double, 3>& xi) {
    const double M = maxwellian3(s, xi);
    const double rho = s.rho(), rt = R_gas * s.theta;
    const std::array<double, 3> d{xi[0] - s.u1, xi[1] - s.u2, xi[2] - s.u3};
    const double d2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const double cv = 1.0 / std::sqrt(rt * rho);
    return {M / std::sqrt(rho), d[0] * cv * M, d[1] * cv * M, d[2] * cv * M,
            (d2 / rt - 3.0) * M / std::sqrt(6.0 * rho)};
}

/// Collision invariants 1, xi_1, xi_2, xi_3, |xi|^2 / 2.
inline std::array<double, 5> collision_invariants(const std::array<double, 3>& xi) {
    return {1.0, xi[0], xi[1], xi[2], 0.5 * (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])};
}

struct MacroMicroProjection {
    TensorQuadrature quadrature;
    std::vector<double> f, P0, P1;
    std::array<double, 5> coefficients{};        ///< <f, chi_j>
    std::array<std::array<double, 5>, 5> gram{};  ///< <chi_i, chi_j>

    /// int phi_i g dxi for the collision invariants.
    std::array<double, 5> invariant_moments(const std::vector<double>& g) const {
        std::array<double, 5> m{};
        quadrature.for_each([&](std::size_t idx, const std::array<double, 3>& xi, double w) {
            const auto phi = collision_invariants(xi);
            for (int i = 0; i < 5; ++i) m[i] += w * phi[i] * g[idx];
        });
        return m;
    }
};

/// P0 f = sum_j <f, chi_j> chi_j with <a, b> = int a b / M dxi; P1 f = f - P0 f.
/// Fails if the quadrature does not reproduce the orthonormality of the basis to `tol`.
inline MacroMicroProjection macro_micro_project(const std::function<double(const std::array<double, 3>&)>& f,
                                                const GasState& s, std::size_t n_axis = 48, double tol = 1e-8) {
    MacroMicroProjection r;
    r.quadrature = tensor_quadrature(s, n_axis);
    const std::size_t n = r.quadrature.size();
    r.f.resize(n);
    std::vector<std::array<double, 5>> chi(n);
    std::vector<double> invM(n);
    r.quadrature.for_each([&](std::size_t idx, const std::array<double, 3>& xi, double w) {
        r.f[idx] = f(xi);
        chi[idx] = macro_basis(s, xi);
        const double M = maxwellian3(s, xi);
        invM[idx] = M > 0.0 ? 1.0 / M : 0.0;
        for (int i = 0; i < 5; ++i) {
            r.coefficients[i] += w * r.f[idx] * chi[idx][i] * invM[idx];
            for (int j = 0; j < 5; ++j) r.gram[i][j] += w * chi[idx][i] * chi[idx][j] * invM[idx];
        }
    });
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (std::abs(r.gram[i][j] - (i == j ? 1.0 : 0.0)) > tol)
                fail(Errc::grid_insufficient, "quadrature does not resolve the Maxwellian weight");
    r.P0.assign(n, 0.0);
    r.P1.resize(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        for (int j = 0; j < 5; ++j) r.P0[idx] += r.coefficients[j] * chi[idx][j];
        r.P1[idx] = r.f[idx] - r.P0[idx];
    }
    return r;
}

}

#endif
