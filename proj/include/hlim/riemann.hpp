#ifndef HLIM_RIEMANN_HPP
#define HLIM_RIEMANN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"
#include "hlim/numerics.hpp"

namespace hlim {

struct WaveStrengths {
    double r1 = 0.0;
    double cd = 0.0;
    double s3 = 0.0;
    double total = 0.0;
};

/// Rarefaction(1) - contact - shock(3) pattern; speeds are Lagrangian.
struct WavePattern {
    GasState left;
    GasState mid_star;   ///< between rarefaction and contact
    GasState mid_upper;  ///< between contact and shock
    GasState right;
    double s3 = 0.0;
    double fan_left = 0.0;
    double fan_right = 0.0;
    WaveStrengths strengths;
};

inline double state_distance(const GasState& a, const GasState& b) {
    const double dv = a.v - b.v, du = a.u1 - b.u1, dt = a.theta - b.theta;
    return std::sqrt(dv * dv + du * du + dt * dt);
}

namespace detail {

/// State on the isentrope through `ref` at volume v, moving along the 1-family.
inline GasState isentrope_state(const GasState& ref, double v) {
    const double K = ref.theta * std::pow(ref.v, 2.0 / 3.0);
    GasState s = ref;
    s.v = v;
    s.theta = K * std::pow(v, -2.0 / 3.0);
    s.u1 = ref.u1 + std::sqrt(10.0 * K) * (std::pow(ref.v, -1.0 / 3.0) - std::pow(v, -1.0 / 3.0));
    return s;
}

/// State on the 3-Hugoniot locus of `right` at volume v; valid for right.v/4 < v < 4 right.v.
inline std::pair<GasState, double> hugoniot_state(const GasState& right, double v) {
    const double pp = right.pressure();
    GasState s = right;
    s.v = v;
    s.theta = 3.0 * v * (right.theta + 0.5 * pp * (right.v - v)) / (4.0 * v - right.v);
    const double p = s.pressure();
    const double dv = right.v - v;
    if (dv == 0.0) return {right, lagrangian_sound_speed(right.v, right.theta)};
    const double speed = std::sqrt(std::max(0.0, (p - pp) / dv));
    s.u1 = right.u1 + speed * dv;
    return {s, speed};
}

inline double hugoniot_volume(const GasState& right, double p) {
    const double pp = right.pressure();
    return right.v * (4.0 * pp + p) / (4.0 * p + pp);
}

}

/// Left state on the 1-rarefaction curve ending at `right`; requires 0 < v <= right.v.
inline GasState rarefaction_connect(const GasState& right, double v) {
    validate(right);
    if (!(v > 0.0) || v > right.v) fail(Errc::domain_error, "rarefaction curve needs 0 < v <= v_right");
    const double K = right.theta * std::pow(right.v, 2.0 / 3.0);
    GasState s = right;
    s.v = v;
    s.theta = K * std::pow(v, -2.0 / 3.0);
    s.u1 = right.u1 - std::sqrt(10.0 * K) * (std::pow(v, -1.0 / 3.0) - std::pow(right.v, -1.0 / 3.0));
    return s;
}

/// Left state and speed of the 3-shock ending at `right`; requires right.v/4 < v <= right.v.
inline std::pair<GasState, double> shock_connect(const GasState& right, double v) {
    validate(right);
    if (!(v > 0.25 * right.v) || v > right.v) fail(Errc::domain_error, "shock curve needs v_right/4 < v <= v_right");
    auto [left, s] = detail::hugoniot_state(right, v);
    if (v < right.v) {
        const double lr = lagrangian_sound_speed(right.v, right.theta);
        const double ll = lagrangian_sound_speed(left.v, left.theta);
        if (!(lr < s && s < ll)) fail(Errc::inadmissible_shock, "Lax entropy condition violated");
    }
    return {left, s};
}

/// Left state on the contact through `right` at volume v (equal u1 and pressure).
inline GasState contact_connect(const GasState& right, double v) {
    validate(right);
    if (!(v > 0.0)) fail(Errc::domain_error, "contact curve needs v > 0");
    GasState s = right;
    s.v = v;
    s.theta = 1.5 * right.pressure() * v;
    return s;
}

struct RiemannOptions {
    double tol = 1e-12;
    int max_iter = 200;
};

namespace detail {

inline std::array<double, 2> riemann_residual(const GasState& left, const GasState& right, double vs, double vu) {
    const GasState a = isentrope_state(left, vs);
    const GasState b = hugoniot_state(right, vu).first;
    return {a.u1 - b.u1, a.pressure() - b.pressure()};
}

inline bool riemann_newton(const GasState& left, const GasState& right, const RiemannOptions& opt, double& vs,
                           double& vu) {
    const double lo_u = 0.25 * right.v * (1.0 + 1e-9);
    const double hi_u = 4.0 * right.v * (1.0 - 1e-9);
    auto norm = [](const std::array<double, 2>& r) { return std::max(std::abs(r[0]), std::abs(r[1])); };
    auto res = riemann_residual(left, right, vs, vu);
    for (int it = 0; it < opt.max_iter; ++it) {
        if (norm(res) < opt.tol) return true;
        const double hs = 1e-7 * vs, hu = 1e-7 * vu;
        const auto rsp = riemann_residual(left, right, vs + hs, vu);
        const auto rsm = riemann_residual(left, right, vs - hs, vu);
        const auto rup = riemann_residual(left, right, vs, vu + hu);
        const auto rum = riemann_residual(left, right, vs, vu - hu);
        const double j00 = (rsp[0] - rsm[0]) / (2 * hs), j10 = (rsp[1] - rsm[1]) / (2 * hs);
        const double j01 = (rup[0] - rum[0]) / (2 * hu), j11 = (rup[1] - rum[1]) / (2 * hu);
        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || det == 0.0) return false;
        const double ds = -(j11 * res[0] - j01 * res[1]) / det;
        const double du = -(-j10 * res[0] + j00 * res[1]) / det;
        double step = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            const double ns = vs + step * ds, nu = vu + step * du;
            if (ns > 0.0 && nu > lo_u && nu < hi_u) {
                const auto nr = riemann_residual(left, right, ns, nu);
                if (norm(nr) < norm(res) || norm(nr) < opt.tol) {
                    vs = ns;
                    vu = nu;
                    res = nr;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) return norm(res) < opt.tol;
    }
    return norm(res) < opt.tol;
}

/// Pressure bisection: u on the left isentrope minus u on the right Hugoniot is decreasing in p.
inline bool riemann_bisection(const GasState& left, const GasState& right, const RiemannOptions& opt, double& vs,
                              double& vu) {
    const double Kl = left.theta * std::pow(left.v, 2.0 / 3.0);
    auto vs_of_p = [&](double p) { return std::pow(2.0 * Kl / (3.0 * p), 0.6); };
    auto f = [&](double p) {
        return isentrope_state(left, vs_of_p(p)).u1 - hugoniot_state(right, hugoniot_volume(right, p)).first.u1;
    };
    const double vmin = std::min(left.v, right.v) / 10.0;
    const double vmax = 10.0 * std::max(left.v, right.v);
    double plo = std::min(left.pressure(), right.pressure());
    double phi = std::max(left.pressure(), right.pressure());
    // widen the bracket while staying inside the volume box
    for (int k = 0; k < 60 && f(plo) < 0.0; ++k) {
        plo *= 0.5;
        if (vs_of_p(plo) > vmax) return false;
    }
    for (int k = 0; k < 60 && f(phi) > 0.0; ++k) {
        phi *= 2.0;
        if (vs_of_p(phi) < vmin) return false;
    }
    if (f(plo) < 0.0 || f(phi) > 0.0) return false;
    for (int it = 0; it < 4 * opt.max_iter; ++it) {
        const double pm = 0.5 * (plo + phi);
        if (f(pm) > 0.0) plo = pm;
        else phi = pm;
        if (phi - plo < 1e-16 * phi) break;
    }
    const double p = 0.5 * (plo + phi);
    vs = vs_of_p(p);
    vu = hugoniot_volume(right, p);
    const auto r = riemann_residual(left, right, vs, vu);
    return std::max(std::abs(r[0]), std::abs(r[1])) < 1e3 * opt.tol;
}

inline double fan_volume(const GasState& left, double xi) {
    const double K = left.theta * std::pow(left.v, 2.0 / 3.0);
    return std::pow(-3.0 * xi / std::sqrt(10.0 * K), -0.75);
}

}

/// Solves the Riemann problem when its solution has the rarefaction-contact-shock shape.
inline WavePattern solve_riemann(const GasState& left, const GasState& right, const RiemannOptions& opt = {}) {
    validate(left);
    validate(right);
    if (left.u2 != 0.0 || left.u3 != 0.0 || right.u2 != 0.0 || right.u3 != 0.0)
        fail(Errc::domain_error, "Riemann data must have zero transverse velocity");
    const double pl = left.pressure(), pr = right.pressure();
    if (pl < pr) fail(Errc::configuration_mismatch, "left pressure below right pressure");

    const double pm = 0.5 * (pl + pr);
    double vs = left.v * std::pow(pl / pm, 0.6);
    double vu = detail::hugoniot_volume(right, pm);
    if (!detail::riemann_newton(left, right, opt, vs, vu)) {
        if (!detail::riemann_bisection(left, right, opt, vs, vu))
            fail(Errc::no_convergence, "Riemann solver did not converge");
    }
    const double slack = 1e-12;
    if (vs < left.v * (1.0 - slack) || vu > right.v * (1.0 + slack))
        fail(Errc::configuration_mismatch, "solution is not rarefaction-contact-shock");
    vs = std::max(vs, left.v);
    vu = std::min(vu, right.v);

    WavePattern w;
    w.left = left;
    w.right = right;
    w.mid_star = detail::isentrope_state(left, vs);
    auto [mu, s] = detail::hugoniot_state(right, vu);
    w.mid_upper = mu;
    w.s3 = s;
    w.fan_left = char_speed(left, Family::one);
    w.fan_right = char_speed(w.mid_star, Family::one);
    w.strengths.r1 = state_distance(left, w.mid_star);
    w.strengths.cd = std::abs(w.mid_upper.theta - w.mid_star.theta);
    w.strengths.s3 = state_distance(w.mid_upper, right);
    w.strengths.total = state_distance(left, right);
    return w;
}

/// Self-similar Lagrangian entropy solution; the contact sits at x = 0.
inline GasState euler_solution(const WavePattern& w, double t, double x) {
    if (t < 0.0) fail(Errc::domain_error, "euler_solution needs t >= 0");
    if (t == 0.0) return x < 0.0 ? w.left : w.right;
    const double xi = x / t;
    if (xi <= w.fan_left) return w.left;
    if (xi < w.fan_right) return detail::isentrope_state(w.left, detail::fan_volume(w.left, xi));
    if (xi < 0.0) return w.mid_star;
    if (xi <= w.s3) return w.mid_upper;
    return w.right;
}

namespace detail {

/// Integral of the self-similar specific volume from 0 to xi.
inline double volume_integral(const WavePattern& w, double xi) {
    if (xi >= 0.0) {
        return w.mid_upper.v * std::min(xi, w.s3) + w.right.v * std::max(xi - w.s3, 0.0);
    }
    const double a = w.fan_right, b = w.fan_left;
    if (xi >= a) return w.mid_star.v * xi;
    const double K = w.left.theta * std::pow(w.left.v, 2.0 / 3.0);
    const double A = std::pow(3.0 / std::sqrt(10.0 * K), -0.75);
    auto fan = [&](double y) { return 4.0 * A * (std::pow(-a, 0.25) - std::pow(-y, 0.25)); };
    if (xi >= b) return w.mid_star.v * a + fan(xi);
    return w.mid_star.v * a + fan(b) + w.left.v * (xi - b);
}

}

/// Eulerian position of the Lagrangian point x at time t; the contact particle moves with u1*.
inline double eulerian_position(const WavePattern& w, double t, double x) {
    if (!(t > 0.0)) return x < 0.0 ? w.left.v * x : w.right.v * x;
    return t * (w.mid_star.u1 + detail::volume_integral(w, x / t));
}

/// Inverse of eulerian_position.
inline double lagrangian_coordinate(const WavePattern& w, double t, double X) {
    if (!(t > 0.0)) return X < 0.0 ? X / w.left.v : X / w.right.v;
    const double y = X / t - w.mid_star.u1;
    const double vmin = std::min({w.left.v, w.mid_star.v, w.mid_upper.v, w.right.v});
    const double span = std::abs(y) / vmin + 1.0;
    const double xi = bisect([&](double q) { return detail::volume_integral(w, q) - y; }, -span, span, 1e-15);
    return xi * t;
}

inline GasState euler_solution_eulerian(const WavePattern& w, double t, double X) {
    return euler_solution(w, t, lagrangian_coordinate(w, t, X));
}

/// Eulerian speed of a discontinuity with Lagrangian speed s next to `side`.
inline double eulerian_shock_speed(double s_lagrangian, const GasState& side) {
    return side.u1 + side.v * s_lagrangian;
}

}

#endif
