#ifndef HLIM_PROFILES_HYPERBOLIC_WAVE_HPP
#define HLIM_PROFILES_HYPERBOLIC_WAVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/profiles/rarefaction.hpp"
#include "hlim/riemann.hpp"
#include "hlim/transport.hpp"

namespace hlim {

/// Solution of a linear hyperbolic correction system on uniform time levels.
/// `phys` holds the conserved-variable components, `chars` the characteristic ones.
template <int N>
struct HyperbolicField {
    UniformGrid grid;
    std::vector<double> times;
    std::vector<std::array<std::vector<double>, N>> phys;
    std::vector<std::array<std::vector<double>, N>> chars;

    double norm_squared(std::size_t level) const {
        double s = 0.0;
        for (int k = 0; k < N; ++k)
            for (double v : phys[level][k]) s += v * v;
        return s * grid.dx;
    }

    double sup_norm_squared() const {
        double m = 0.0;
        for (std::size_t n = 0; n < times.size(); ++n) m = std::max(m, norm_squared(n));
        return m;
    }

    /// Linear interpolation in time of the conserved components.
    std::array<std::vector<double>, N> at(double t) const {
        if (times.empty()) fail(Errc::domain_error, "empty hyperbolic field");
        if (t <= times.front()) return phys.front();
        if (t >= times.back()) return phys.back();
        const double dt = times[1] - times[0];
        std::size_t n = static_cast<std::size_t>((t - times.front()) / dt);
        if (n >= times.size() - 1) n = times.size() - 2;
        const double w = (t - times[n]) / dt;
        std::array<std::vector<double>, N> out;
        for (int k = 0; k < N; ++k) {
            out[k].resize(grid.n);
            for (std::size_t i = 0; i < grid.n; ++i)
                out[k][i] = (1.0 - w) * phys[n][k][i] + w * phys[n + 1][k][i];
        }
        return out;
    }
};

/// Uniform time levels from h to T with dt <= cfl dx / max_speed.
inline std::vector<double> time_levels(double h, double T, double dx, double max_speed, double cfl) {
    if (!(T > h) || !(h >= 0.0)) fail(Errc::domain_error, "time window needs 0 <= h < T");
    if (!(cfl > 0.0 && cfl <= 1.0)) fail(Errc::cfl_violation, "CFL number must lie in (0, 1]");
    const double dt_max = cfl * dx / max_speed;
    const std::size_t n = static_cast<std::size_t>(std::ceil((T - h) / dt_max - 1e-12));
    std::vector<double> t(n + 1);
    for (std::size_t k = 0; k <= n; ++k) t[k] = h + (T - h) * static_cast<double>(k) / static_cast<double>(n);
    return t;
}

namespace detail {

/// Coefficients of D_t + lambda D_x = S + M D - lambda_x D at one time level.
template <int N>
struct CharLevel {
    std::vector<Eigen::Matrix<double, N, 1>> lambda, lambda_x, source;
    std::vector<Eigen::Matrix<double, N, N>> coupling, R;
};

template <int N>
void resize_level(CharLevel<N>& c, std::size_t n) {
    c.lambda.resize(n);
    c.lambda_x.resize(n);
    c.source.resize(n);
    c.coupling.resize(n);
    c.R.resize(n);
}

/// x-derivatives by centred differences of a field of fixed-size matrices.
template <typename M>
std::vector<M> x_derivative(const std::vector<M>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<M> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

/// One semi-Lagrangian step of component k: out(x) = g(x - c dt), zero off-grid.
inline void advect(const UniformGrid& g, const std::vector<double>& src, const std::vector<double>& speed, double c_dt,
                   std::vector<double>& out) {
    out.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) out[i] = pchip_uniform(g, src, g.at(i) - speed[i] * c_dt, 0.0);
}

}

struct HyperbolicOptions {
    double cfl = 0.9;
};

/// First hyperbolic wave around the smoothed rarefaction: D1 from zero data at h,
/// D2 and D3 from zero data at T.
inline HyperbolicField<3> build_hyperbolic_wave_I(const WavePattern& w, double eps, double sigma, const UniformGrid& grid,
                                                  const std::vector<double>& times, const TransportModel& tm) {
    if (!(eps > 0.0) || !(sigma > 0.0)) fail(Errc::domain_error, "eps and sigma must be positive");
    if (grid.dx > std::min(sigma, std::sqrt(eps)) / 10.0 * (1.0 + 1e-9))
        fail(Errc::grid_insufficient, "dx must not exceed min(sigma, sqrt(eps)) / 10");
    if (times.size() < 2) fail(Errc::domain_error, "need at least two time levels");
    const RarefactionWave rw = rarefaction_wave(w, sigma);
    const std::size_t n = grid.n;
    const std::size_t nt = times.size();
    const double dt = times[1] - times[0];

    std::vector<detail::CharLevel<3>> lev(nt);
    double max_speed = 0.0;
    for (std::size_t m = 0; m < nt; ++m) {
        auto& c = lev[m];
        detail::resize_level(c, n);
        std::vector<Eigen::Matrix3d> L(n);
        std::vector<double> lam1(n);
        for (std::size_t i = 0; i < n; ++i) {
            const ProfilePoint p = rw.eval(times[m], grid.at(i));
            const GasState st{p.V, p.U1, 0.0, 0.0, p.Theta};
            const auto es = flux_jacobian_eigensystem<3>(st);
            L[i] = es.L;
            c.R[i] = es.R;
            c.lambda[i] = es.lambda;
            lam1[i] = es.lambda(0);
            max_speed = std::max(max_speed, std::abs(es.lambda(0)));
            const double V = p.V, U = p.U1;
            const double mu = tm.mu(p.Theta), ka = tm.kappa(p.Theta);
            const double dmu = tm.dmu(p.Theta), dka = tm.dkappa(p.Theta);
            const double g1 = mu * p.U1x / V;
            const double g1x = dmu * p.Thetax * p.U1x / V + mu * p.U1xx / V - mu * p.U1x * p.Vx / (V * V);
            const double g2x = dka * p.Thetax * p.Thetax / V + ka * p.Thetaxx / V - ka * p.Thetax * p.Vx / (V * V);
            const double g3x = p.U1x * g1 + U * g1x;
            const Eigen::Vector3d H(0.0, (4.0 / 3.0) * eps * g1x, eps * g2x + (4.0 / 3.0) * eps * g3x);
            c.source[i] = es.L * H;
        }
        const auto Lx = detail::x_derivative(L, grid.dx);
        c.lambda_x = detail::x_derivative(c.lambda, grid.dx);
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::Matrix3d LxR = Lx[i] * c.R[i];
            for (int j = 0; j < 3; ++j) LxR.col(j) *= (c.lambda[i](j) - lam1[i]);
            c.coupling[i] = LxR;
        }
    }
    if (dt * max_speed > grid.dx * (1.0 + 1e-9)) fail(Errc::cfl_violation, "time step violates the CFL bound");

    HyperbolicField<3> f;
    f.grid = grid;
    f.times = times;
    f.chars.assign(nt, {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});

    std::vector<double> spd(n);
    for (std::size_t m = nt - 1; m-- > 0;) {
        const auto& c = lev[m + 1];
        const auto& D = f.chars[m + 1];
        std::vector<double> g2(n), g3(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double F2 = c.source[i](1) + c.coupling[i](1, 1) * D[1][i] + c.coupling[i](1, 2) * D[2][i];
            const double F3 = c.source[i](2) + c.coupling[i](2, 1) * D[1][i] + c.coupling[i](2, 2) * D[2][i] -
                              c.lambda_x[i](2) * D[2][i];
            g2[i] = D[1][i] - dt * F2;
            g3[i] = D[2][i] - dt * F3;
            spd[i] = c.lambda[i](2);
        }
        f.chars[m][1] = g2;
        detail::advect(grid, g3, spd, -dt, f.chars[m][2]);
    }
    for (std::size_t m = 0; m + 1 < nt; ++m) {
        const auto& c = lev[m];
        const auto& D = f.chars[m];
        std::vector<double> g1(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double F1 = c.source[i](0) + c.coupling[i](0, 1) * D[1][i] + c.coupling[i](0, 2) * D[2][i] -
                              c.lambda_x[i](0) * D[0][i];
            g1[i] = D[0][i] + dt * F1;
            spd[i] = lev[m + 1].lambda[i](0);
        }
        detail::advect(grid, g1, spd, dt, f.chars[m + 1][0]);
    }
    f.phys.resize(nt);
    for (std::size_t m = 0; m < nt; ++m) {
        for (int k = 0; k < 3; ++k) f.phys[m][k].assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::Vector3d Dv(f.chars[m][0][i], f.chars[m][1][i], f.chars[m][2][i]);
            const Eigen::Vector3d d = lev[m].R[i] * Dv;
            for (int k = 0; k < 3; ++k) f.phys[m][k][i] = d(k);
        }
    }
    return f;
}

/// Right-hand sides (Q1, Q2, Q3, Q4) of the second hyperbolic wave at (t, x).
using WaveIISources = std::function<std::array<double, 4>(double, double)>;

/// Gaussian model of the contact-generated error terms.
struct ContactSourceModel {
    double strength = 0.0;  ///< contact strength
    double eps = 0.0;
    double c = 0.25;        ///< Gaussian rate in x^2 / (eps (1 + t))
    std::array<double, 4> amplitude{1.0, 1.0, 1.0, 1.0};

    std::array<double, 4> operator()(double t, double x) const {
        const double g = strength * eps * std::pow(1.0 + t, -2.0) * std::exp(-c * x * x / (eps * (1.0 + t)));
        return {amplitude[0] * g, amplitude[1] * g, amplitude[2] * g, amplitude[3] * g};
    }
};

/// Second hyperbolic wave around the composite background, solved backward from zero data at T.
/// `bar` must be sampled on uniform time levels.
inline HyperbolicField<5> build_hyperbolic_wave_II(const SpaceTimeField& bar, const WaveIISources& sources) {
    const UniformGrid& grid = bar.grid;
    const std::size_t n = grid.n;
    const std::size_t nt = bar.times.size();
    if (nt < 3) fail(Errc::domain_error, "need at least three time levels");
    const double dt = bar.times[1] - bar.times[0];
    for (std::size_t m = 1; m < nt; ++m)
        if (std::abs(bar.times[m] - bar.times[m - 1] - dt) > 1e-9 * dt)
            fail(Errc::domain_error, "background time levels must be uniform");

    auto eigs = [&](std::size_t m) {
        std::vector<Eigensystem<5>> e(n);
        const FieldSlice& s = bar.slices[m];
        for (std::size_t i = 0; i < n; ++i) e[i] = flux_jacobian_eigensystem<5>(GasState{s.V[i], s.U1[i], 0.0, 0.0, s.Theta[i]});
        return e;
    };

    HyperbolicField<5> f;
    f.grid = grid;
    f.times = bar.times;
    f.chars.resize(nt);
    f.phys.resize(nt);
    for (std::size_t m = 0; m < nt; ++m)
        for (int k = 0; k < 5; ++k) {
            f.chars[m][k].assign(n, 0.0);
            f.phys[m][k].assign(n, 0.0);
        }

    // eigensystems of levels m-1, m, m+1 are kept while marching backward
    std::map<std::size_t, std::vector<Eigensystem<5>>> cache;
    auto get = [&](std::size_t m) -> const std::vector<Eigensystem<5>>& {
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, eigs(m)).first;
        return it->second;
    };
    std::vector<double> spd(n);
    double max_speed = 0.0;
    for (std::size_t m = nt - 1; m > 0; --m) {
        const std::size_t up = std::min(m + 1, nt - 1);
        const auto& e_mid = get(m);
        const auto& e_lo = get(m - 1);
        const auto& ehi = get(up);
        const double tdt = static_cast<double>(up - (m - 1)) * dt;
        std::vector<Eigen::Matrix<double, 5, 5>> L(n);
        std::vector<Eigen::Matrix<double, 5, 1>> lam(n);
        for (std::size_t i = 0; i < n; ++i) {
            L[i] = e_mid[i].L;
            lam[i] = e_mid[i].lambda;
            max_speed = std::max(max_speed, lam[i].cwiseAbs().maxCoeff());
        }
        const auto Lx = detail::x_derivative(L, grid.dx);
        const auto lamx = detail::x_derivative(lam, grid.dx);
        const auto& B = f.chars[m];
        const double t = bar.times[m];
        std::array<std::vector<double>, 5> G;
        for (int k = 0; k < 5; ++k) G[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::Matrix<double, 5, 5> Lt = (ehi[i].L - e_lo[i].L) / tdt;
            const Eigen::Matrix<double, 5, 5>& R = e_mid[i].R;
            const Eigen::Matrix<double, 5, 5> M = Lt * R + Lx[i] * R * lam[i].asDiagonal();
            const auto q = sources(t, grid.at(i));
            const Eigen::Matrix<double, 5, 1> Q(0.0, -q[0], -q[1], -q[2], -q[3]);
            Eigen::Matrix<double, 5, 1> Bv;
            for (int k = 0; k < 5; ++k) Bv(k) = B[k][i];
            Eigen::Matrix<double, 5, 1> F = L[i] * Q + M * Bv;
            for (int k = 0; k < 5; ++k) G[k][i] = Bv(k) - dt * (F(k) - lamx[i](k) * Bv(k));
        }
        for (int k = 0; k < 5; ++k) {
            if (k == 0 || k == 4) {
                for (std::size_t i = 0; i < n; ++i) spd[i] = lam[i](k);
                detail::advect(grid, G[k], spd, -dt, f.chars[m - 1][k]);
            } else {
                f.chars[m - 1][k] = G[k];
            }
        }
        cache.erase(cache.upper_bound(m), cache.end());
    }
    if (dt * max_speed > grid.dx * (1.0 + 1e-9)) fail(Errc::cfl_violation, "time step violates the CFL bound");
    for (std::size_t m = 0; m < nt; ++m) {
        const std::vector<Eigensystem<5>> e = eigs(m);
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::Matrix<double, 5, 1> Bv;
            for (int k = 0; k < 5; ++k) Bv(k) = f.chars[m][k][i];
            const Eigen::Matrix<double, 5, 1> b = e[i].R * Bv;
            for (int k = 0; k < 5; ++k) f.phys[m][k][i] = b(k);
        }
    }
    return f;
}

}

#endif
