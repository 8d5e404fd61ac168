#ifndef HLIM_PROFILES_CONTACT_HPP
#define HLIM_PROFILES_CONTACT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/riemann.hpp"
#include "hlim/transport.hpp"

namespace hlim {

/// Coefficients of the optional non-fluid temperature correction. Empty functions mean zero.
struct NonFluidCoefficients {
    std::function<double(double)> quadratic;  ///< multiplies (Theta_eta)^2
    std::function<double(double)> linear;     ///< multiplies Theta_eta_eta
    double xi_plus = 0.0;                     ///< limit of the integrated correction at +infinity

    bool active() const { return static_cast<bool>(quadratic) || static_cast<bool>(linear); }
};

struct ContactTailFit {
    LinearFit joint;
    LinearFit left;
    LinearFit right;
    double c = 0.0;  ///< Gaussian rate: |Theta_eta| ~ exp(-c eta^2)
};

/// Self-similar contact profile Theta(eta), eta = x / sqrt(eps (1 + t)), solving
/// -(eta/2) Theta' = (a(Theta) Theta')' with Theta(-inf) = theta*, Theta(+inf) = theta^*.
class ContactWave {
public:
    ContactWave(const WavePattern& w, const TransportModel& tm, double eps, NonFluidCoefficients nf = {})
        : tm_(tm), eps_(eps), nf_(std::move(nf)) {
        if (!(eps > 0.0)) fail(Errc::domain_error, "eps must be positive");
        p_ = w.mid_star.pressure();
        uc_ = w.mid_star.u1;
        th_minus_ = w.mid_star.theta;
        th_plus_ = w.mid_upper.theta;
        const double amax = std::max(a(th_minus_), a(th_plus_));
        const double amin = std::min(a(th_minus_), a(th_plus_));
        if (!(amin > 0.0)) fail(Errc::domain_error, "contact diffusivity must be positive");
        half_n_ = 7000;
        L_ = 14.0 * std::sqrt(amax);
        h_ = L_ / static_cast<double>(half_n_);
        solve();
        if (nf_.active()) solve_non_fluid();
    }

    /// a(theta) = 9 p kappa(theta) / (10 theta)
    double a(double th) const { return 0.9 * p_ * tm_.kappa(th) / th; }
    double da(double th) const {
        const double d = 1e-6 * th;
        return (a(th + d) - a(th - d)) / (2.0 * d);
    }

    double pressure() const { return p_; }
    double velocity() const { return uc_; }
    double eps() const { return eps_; }
    double eta_max() const { return L_; }
    double eta_step() const { return h_; }

    const std::vector<double>& eta() const { return eta_; }
    const std::vector<double>& theta_hat() const { return th_; }
    const std::vector<double>& theta_hat_d() const { return dth_; }

    /// max |q' + (eta/2) Theta'| with q = a(Theta) Theta', q' by fourth-order differences.
    double ode_residual() const {
        std::vector<double> q(eta_.size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = a(th_[i]) * dth_[i];
        const std::vector<double> dq = derivative4(q, h_);
        double r = 0.0;
        for (std::size_t i = 4; i + 4 < q.size(); ++i) r = std::max(r, std::abs(dq[i] + 0.5 * eta_[i] * dth_[i]));
        return r;
    }

    /// Linear fit of ln|Theta'| against eta^2 over the tails |eta| >= eta_min.
    ContactTailFit tail_fit(double eta_min = 1.0) const {
        double peak = 0.0;
        for (double d : dth_) peak = std::max(peak, std::abs(d));
        std::vector<double> xj, yj, xl, yl, xr, yr;
        for (std::size_t i = 0; i < eta_.size(); ++i) {
            const double e = eta_[i];
            const double d = std::abs(dth_[i]);
            if (std::abs(e) < eta_min || !(d > 1e-10 * peak)) continue;
            xj.push_back(e * e);
            yj.push_back(std::log(d));
            (e < 0 ? xl : xr).push_back(e * e);
            (e < 0 ? yl : yr).push_back(std::log(d));
        }
        ContactTailFit f;
        if (xj.size() < 3) fail(Errc::insufficient_data, "contact tail has too few resolved points");
        f.joint = linear_fit(xj, yj);
        if (xl.size() >= 3) f.left = linear_fit(xl, yl);
        if (xr.size() >= 3) f.right = linear_fit(xr, yr);
        f.c = -f.joint.slope;
        return f;
    }

    ProfilePoint eval(double t, double x) const {
        const double s = std::sqrt(eps_ * (1.0 + t));
        const double e = x / s;
        double th, d1, d2;
        interp(e, th, d1, d2);
        ProfilePoint p;
        const double k = 2.0 / (3.0 * p_);
        const double q = a(th) * d1;
        p.Theta = th;
        p.Thetax = d1 / s;
        p.Thetaxx = d2 / (s * s);
        p.U1 = uc_ + k * eps_ * q / s;
        p.U1x = k * eps_ * (-0.5 * e * d1) / (s * s);
        p.U1xx = k * eps_ * (-0.5 * (d1 + e * d2)) / (s * s * s);
        if (nf_.active()) {
            double z1, z2, z3;
            interp_nf(e, z1, z2, z3);
            p.Theta += eps_ * z1 / s;
            p.Thetax += eps_ * z2 / (s * s);
            p.Thetaxx += eps_ * z3 / (s * s * s);
            const double c = -eps_ / (3.0 * p_ * (1.0 + t));
            p.U1 += c * e * z1;
            p.U1x += c * (z1 + e * z2) / s;
            p.U1xx += c * (2.0 * z2 + e * z3) / (s * s);
        }
        p.V = k * p.Theta;
        p.Vx = k * p.Thetax;
        p.Vxx = k * p.Thetaxx;
        return p;
    }

    /// Non-fluid temperature correction at (t, x); zero unless coefficients are given.
    double non_fluid_theta(double t, double x) const {
        if (!nf_.active()) return 0.0;
        const double s = std::sqrt(eps_ * (1.0 + t));
        double z1, z2, z3;
        interp_nf(x / s, z1, z2, z3);
        return eps_ * z1 / s;
    }

private:
    using Vec2 = std::array<double, 2>;

    Vec2 rhs(double e, const Vec2& y) const {
        const double av = a(y[0]);
        return {y[1] / av, -0.5 * e * y[1] / av};
    }

    /// RK4 from eta = 0 in direction dir; writes Theta and q at every step if out is non-null.
    Vec2 shoot(double th0, double q0, double dir, std::vector<Vec2>* out) const {
        Vec2 y{th0, q0};
        const double hh = dir * h_;
        if (out) out->assign(1, y);
        for (int i = 0; i < half_n_; ++i) {
            const double e = hh * i;
            const Vec2 k1 = rhs(e, y);
            const Vec2 k2 = rhs(e + 0.5 * hh, {y[0] + 0.5 * hh * k1[0], y[1] + 0.5 * hh * k1[1]});
            const Vec2 k3 = rhs(e + 0.5 * hh, {y[0] + 0.5 * hh * k2[0], y[1] + 0.5 * hh * k2[1]});
            const Vec2 k4 = rhs(e + hh, {y[0] + hh * k3[0], y[1] + hh * k3[1]});
            y[0] += hh / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
            y[1] += hh / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
            if (!std::isfinite(y[0]) || !(y[0] > 0.0)) fail(Errc::shooting_failure, "contact shooting left the domain");
            if (out) out->push_back(y);
        }
        return y;
    }

    Vec2 mismatch(double th0, double q0) const {
        const Vec2 r = shoot(th0, q0, 1.0, nullptr);
        const Vec2 l = shoot(th0, q0, -1.0, nullptr);
        return {r[0] - th_plus_, l[0] - th_minus_};
    }

    void solve() {
        const double dth = th_plus_ - th_minus_;
        double th0 = 0.5 * (th_plus_ + th_minus_);
        const double a0 = a(th0);
        double q0 = a0 * dth / (2.0 * std::sqrt(M_PI * a0));
        const double scale = std::max(std::abs(dth), 1e-300);
        if (dth != 0.0) {
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                const Vec2 r = mismatch(th0, q0);
                if (std::max(std::abs(r[0]), std::abs(r[1])) < 1e-14 * std::max(1.0, th0)) {
                    ok = true;
                    break;
                }
                const double ht = 1e-7 * th0, hq = 1e-7 * std::max(std::abs(q0), 1e-3 * scale);
                const Vec2 rt = mismatch(th0 + ht, q0);
                const Vec2 rq = mismatch(th0, q0 + hq);
                const double j00 = (rt[0] - r[0]) / ht, j10 = (rt[1] - r[1]) / ht;
                const double j01 = (rq[0] - r[0]) / hq, j11 = (rq[1] - r[1]) / hq;
                const double det = j00 * j11 - j01 * j10;
                if (!std::isfinite(det) || det == 0.0) break;
                th0 -= (j11 * r[0] - j01 * r[1]) / det;
                q0 -= (-j10 * r[0] + j00 * r[1]) / det;
            }
            if (!ok) {
                const Vec2 r = mismatch(th0, q0);
                if (std::max(std::abs(r[0]), std::abs(r[1])) > 1e-11 * std::max(1.0, th0))
                    fail(Errc::shooting_failure, "contact shooting did not converge");
            }
        } else {
            q0 = 0.0;
        }
        std::vector<Vec2> pos, neg;
        shoot(th0, q0, 1.0, &pos);
        shoot(th0, q0, -1.0, &neg);
        const std::size_t n = 2 * static_cast<std::size_t>(half_n_) + 1;
        eta_.resize(n);
        th_.resize(n);
        dth_.resize(n);
        d2th_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const long k = static_cast<long>(i) - half_n_;
            const Vec2& y = k >= 0 ? pos[static_cast<std::size_t>(k)] : neg[static_cast<std::size_t>(-k)];
            eta_[i] = h_ * static_cast<double>(k);
            th_[i] = y[0];
            const double av = a(y[0]);
            dth_[i] = y[1] / av;
            d2th_[i] = (-0.5 * eta_[i] * dth_[i] - da(y[0]) * dth_[i] * dth_[i]) / av;
        }
    }

    /// (a Xi')' + (eta/2) Xi' = -(3/5) A(eta), Xi(-L) = 0, Xi(L) = xi_plus / eps.
    void solve_non_fluid() {
        const std::size_t n = eta_.size();
        std::vector<double> src(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double A = 0.0;
            if (nf_.quadratic) A += nf_.quadratic(th_[i]) * dth_[i] * dth_[i];
            if (nf_.linear) A += nf_.linear(th_[i]) * d2th_[i];
            src[i] = -0.6 * A;
        }
        std::vector<double> lo(n, 0.0), di(n, 1.0), up(n, 0.0), rhs = src;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double am = a(0.5 * (th_[i] + th_[i - 1]));
            const double ap = a(0.5 * (th_[i] + th_[i + 1]));
            const double adv = 0.5 * eta_[i] / (2.0 * h_);
            lo[i] = am / (h_ * h_) - adv;
            up[i] = ap / (h_ * h_) + adv;
            di[i] = -(am + ap) / (h_ * h_);
        }
        rhs[0] = 0.0;
        rhs[n - 1] = nf_.xi_plus / eps_;
        up[0] = 0.0;
        lo[n - 1] = 0.0;
        const std::vector<double> xi = solve_tridiagonal(lo, di, up, rhs);
        z1_ = derivative4(xi, h_);
        z2_ = derivative4(z1_, h_);
        z3_ = derivative4(z2_, h_);
    }

    void interp(double e, double& th, double& d1, double& d2) const {
        if (e <= eta_.front()) {
            th = th_minus_;
            d1 = d2 = 0.0;
            return;
        }
        if (e >= eta_.back()) {
            th = th_plus_;
            d1 = d2 = 0.0;
            return;
        }
        std::size_t i = static_cast<std::size_t>((e - eta_.front()) / h_);
        if (i >= eta_.size() - 1) i = eta_.size() - 2;
        const double x0 = eta_[i], x1 = eta_[i + 1];
        th = hermite(x0, x1, th_[i], th_[i + 1], dth_[i], dth_[i + 1], e);
        d1 = hermite(x0, x1, dth_[i], dth_[i + 1], d2th_[i], d2th_[i + 1], e);
        const double w = (e - x0) / h_;
        d2 = (1.0 - w) * d2th_[i] + w * d2th_[i + 1];
    }

    void interp_nf(double e, double& z1, double& z2, double& z3) const {
        z1 = z2 = z3 = 0.0;
        if (e <= eta_.front() || e >= eta_.back()) return;
        std::size_t i = static_cast<std::size_t>((e - eta_.front()) / h_);
        if (i >= eta_.size() - 1) i = eta_.size() - 2;
        const double w = (e - eta_[i]) / h_;
        z1 = (1.0 - w) * z1_[i] + w * z1_[i + 1];
        z2 = (1.0 - w) * z2_[i] + w * z2_[i + 1];
        z3 = (1.0 - w) * z3_[i] + w * z3_[i + 1];
    }

    TransportModel tm_;
    double eps_;
    NonFluidCoefficients nf_;
    double p_ = 0, uc_ = 0, th_minus_ = 0, th_plus_ = 0;
    int half_n_ = 0;
    double L_ = 0, h_ = 0;
    std::vector<double> eta_, th_, dth_, d2th_;
    std::vector<double> z1_, z2_, z3_;
};

inline SpaceTimeField build_contact_profile(const WavePattern& w, double eps, const UniformGrid& grid,
                                            const std::vector<double>& times, const TransportModel& tm,
                                            const NonFluidCoefficients& nf = {}) {
    const ContactWave c(w, tm, eps, nf);
    SpaceTimeField f;
    f.grid = grid;
    f.times = times;
    for (double t : times) {
        FieldSlice s(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) store(s, i, c.eval(t, grid.at(i)));
        f.slices.push_back(std::move(s));
    }
    return f;
}

}

#endif
