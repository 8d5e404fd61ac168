#ifndef HLIM_PROFILES_SHOCK_HPP
#define HLIM_PROFILES_SHOCK_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hlim/error.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/riemann.hpp"
#include "hlim/transport.hpp"

namespace hlim {

/// Viscous 3-shock travelling wave in eta = x - s3 t connecting mid_upper to right.
/// The profile is computed in zeta = eta / eps, where the ODE does not depend on eps.
class ShockWave {
public:
    ShockWave(const WavePattern& w, const TransportModel& tm, double eps)
        : tm_(tm), eps_(eps), minus_(w.mid_upper), plus_(w.right), s_(w.s3) {
        if (!(eps > 0.0)) fail(Errc::domain_error, "eps must be positive");
        if (!(s_ > 0.0)) fail(Errc::domain_error, "shock speed must be positive");
        const double Ep = plus_.theta + 0.5 * plus_.u1 * plus_.u1;
        c1_ = plus_.u1 + s_ * plus_.v;
        c2_ = -s_ * plus_.u1 + plus_.pressure();
        c3_ = -s_ * Ep + plus_.pressure() * plus_.u1;
        strength_ = state_distance(minus_, plus_);
        if (strength_ > 0.0) integrate();
    }

    double eps() const { return eps_; }
    double speed() const { return s_; }
    const GasState& minus_state() const { return minus_; }
    const GasState& plus_state() const { return plus_; }

    /// zeta-derivatives (V', Theta').
    Vec2d rhs(const Vec2d& y) const {
        const double V = y[0], Th = y[1];
        const double U = c1_ - s_ * V;
        const double P = 2.0 * Th / (3.0 * V);
        const double F1 = -s_ * U + P - c2_;
        const double E = Th + 0.5 * U * U;
        const double dV = -3.0 * V * F1 / (4.0 * tm_.mu(Th) * s_);
        const double dT = V * (-s_ * E + P * U - U * F1 - c3_) / tm_.kappa(Th);
        return {dV, dT};
    }

    Eigen::Matrix2d jacobian(const Vec2d& y) const {
        Eigen::Matrix2d J;
        for (int k = 0; k < 2; ++k) {
            const double h = 1e-7 * std::max(1.0, std::abs(y[k]));
            Vec2d a = y, b = y;
            a[k] += h;
            b[k] -= h;
            const Vec2d fa = rhs(a), fb = rhs(b);
            J(0, k) = (fa[0] - fb[0]) / (2 * h);
            J(1, k) = (fa[1] - fb[1]) / (2 * h);
        }
        return J;
    }

    /// True when the saddle sits at the mid_upper end.
    bool saddle_at_minus() const { return saddle_minus_; }

    const std::vector<double>& zeta() const { return zeta_; }
    const std::vector<Vec2d>& trajectory() const { return traj_; }

    ProfilePoint eval(double t, double x) const {
        ProfilePoint p;
        if (strength_ == 0.0) {
            p.V = plus_.v;
            p.U1 = plus_.u1;
            p.Theta = plus_.theta;
            return p;
        }
        const double z = (x - s_ * t) / eps_;
        const Vec2d y = state_at(z);
        const Vec2d f = rhs(y);
        const Eigen::Vector2d f2 = jacobian(y) * Eigen::Vector2d(f[0], f[1]);
        p.V = y[0];
        p.Theta = y[1];
        p.U1 = c1_ - s_ * y[0];
        p.Vx = f[0] / eps_;
        p.Thetax = f[1] / eps_;
        p.U1x = -s_ * p.Vx;
        p.Vxx = f2(0) / (eps_ * eps_);
        p.Thetaxx = f2(1) / (eps_ * eps_);
        p.U1xx = -s_ * p.Vxx;
        return p;
    }

    /// Residuals of the three once-integrated conservation laws along the stored trajectory,
    /// with eta-derivatives from fourth-order differences of the samples.
    std::array<double, 3> first_integral_residuals() const {
        const std::size_t n = traj_.size();
        std::vector<double> V(n), Th(n);
        for (std::size_t i = 0; i < n; ++i) {
            V[i] = traj_[i][0];
            Th[i] = traj_[i][1];
        }
        const double hz = zeta_[1] - zeta_[0];
        const std::vector<double> dV = derivative4(V, hz * eps_);
        const std::vector<double> dT = derivative4(Th, hz * eps_);
        std::array<double, 3> r{0.0, 0.0, 0.0};
        for (std::size_t i = 4; i + 4 < n; ++i) {
            const double U = c1_ - s_ * V[i];
            const double Ux = -s_ * dV[i];
            const double P = 2.0 * Th[i] / (3.0 * V[i]);
            const double E = Th[i] + 0.5 * U * U;
            const double mu = tm_.mu(Th[i]), ka = tm_.kappa(Th[i]);
            const double mass = -s_ * (V[i] - plus_.v) - (U - plus_.u1);
            const double mom = -s_ * (U - plus_.u1) + (P - plus_.pressure()) - (4.0 * eps_ / 3.0) * mu * Ux / V[i];
            const double Ep = plus_.theta + 0.5 * plus_.u1 * plus_.u1;
            const double en = -s_ * (E - Ep) + (P * U - plus_.pressure() * plus_.u1) - eps_ * ka * dT[i] / V[i] -
                              (4.0 * eps_ / 3.0) * mu * U * Ux / V[i];
            r[0] = std::max(r[0], std::abs(mass));
            r[1] = std::max(r[1], std::abs(mom));
            r[2] = std::max(r[2], std::abs(en));
        }
        return r;
    }

    /// Exponential decay rate in eta of |V - v_end| on one side, fitted on the stored trajectory.
    double tail_rate(bool right_side) const {
        const double end = right_side ? plus_.v : minus_.v;
        const double dv = std::abs(plus_.v - minus_.v);
        std::vector<double> x, y;
        for (std::size_t i = 0; i < traj_.size(); ++i) {
            const double z = zeta_[i];
            if ((right_side && z <= 0.0) || (!right_side && z >= 0.0)) continue;
            const double d = std::abs(traj_[i][0] - end) / dv;
            if (d < 1e-3 && d > 1e-9) {
                x.push_back(z * eps_);
                y.push_back(std::log(d));
            }
        }
        if (x.size() < 3) fail(Errc::insufficient_data, "shock tail has too few resolved points");
        return std::abs(linear_fit(x, y).slope);
    }

private:
    Vec2d state_at(double z) const {
        if (z <= zeta_.front()) return extend(z, zeta_.front(), traj_.front(), minus_, lam_minus_);
        if (z >= zeta_.back()) return extend(z, zeta_.back(), traj_.back(), plus_, lam_plus_);
        std::size_t i = static_cast<std::size_t>((z - zeta_.front()) / hz_);
        if (i >= zeta_.size() - 1) i = zeta_.size() - 2;
        const Vec2d f0 = dtraj_[i], f1 = dtraj_[i + 1];
        return {hermite(zeta_[i], zeta_[i + 1], traj_[i][0], traj_[i + 1][0], f0[0], f1[0], z),
                hermite(zeta_[i], zeta_[i + 1], traj_[i][1], traj_[i + 1][1], f0[1], f1[1], z)};
    }

    static Vec2d extend(double z, double z0, const Vec2d& y0, const GasState& end, double lam) {
        const double f = std::exp(lam * (z - z0));
        return {end.v + (y0[0] - end.v) * f, end.theta + (y0[1] - end.theta) * f};
    }

    void integrate() {
        const Vec2d ym{minus_.v, minus_.theta}, yp{plus_.v, plus_.theta};
        const Eigen::Matrix2d Jm = jacobian(ym), Jp = jacobian(yp);
        saddle_minus_ = Jm.determinant() < 0.0;
        if (saddle_minus_ == (Jp.determinant() < 0.0))
            fail(Errc::shooting_failure, "shock equilibria are not a saddle-node pair");
        Eigen::EigenSolver<Eigen::Matrix2d> em(Jm), ep(Jp);
        const Eigen::Vector2d lm = em.eigenvalues().real(), lp = ep.eigenvalues().real();
        double rho = 0.0;
        for (int k = 0; k < 2; ++k) rho = std::max({rho, std::abs(lm(k)), std::abs(lp(k))});
        hz_ = 0.02 / rho;

        const Vec2d start = saddle_minus_ ? ym : yp;
        const Vec2d target = saddle_minus_ ? yp : ym;
        const Eigen::Matrix2d& Js = saddle_minus_ ? Jm : Jp;
        Eigen::EigenSolver<Eigen::Matrix2d> es(Js);
        const int k = saddle_minus_ ? (es.eigenvalues().real()(0) > 0 ? 0 : 1) : (es.eigenvalues().real()(0) < 0 ? 0 : 1);
        const double lam_s = es.eigenvalues().real()(k);
        Eigen::Vector2d e = es.eigenvectors().real().col(k).normalized();
        const double dir_v = target[0] - start[0];
        if (e(0) * dir_v < 0.0) e = -e;
        const double disp = 1e-6 * strength_;
        Vec2d y{start[0] + disp * e(0), start[1] + disp * e(1)};
        const double step = saddle_minus_ ? hz_ : -hz_;

        // the slow approach rate into the node governs the far tail
        const Eigen::Vector2d ln = saddle_minus_ ? lp : lm;
        const double lam_node = std::abs(ln(0)) < std::abs(ln(1)) ? ln(0) : ln(1);

        std::vector<Vec2d> path{y};
        const double scale = std::abs(target[0] - start[0]) + std::abs(target[1] - start[1]);
        const std::size_t max_steps = 20000000;
        for (std::size_t it = 0; it < max_steps; ++it) {
            const Vec2d k1 = rhs(y);
            const Vec2d k2 = rhs({y[0] + 0.5 * step * k1[0], y[1] + 0.5 * step * k1[1]});
            const Vec2d k3 = rhs({y[0] + 0.5 * step * k2[0], y[1] + 0.5 * step * k2[1]});
            const Vec2d k4 = rhs({y[0] + step * k3[0], y[1] + step * k3[1]});
            y[0] += step / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
            y[1] += step / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
            if (!std::isfinite(y[0]) || !(y[0] > 0.0) || !(y[1] > 0.0))
                fail(Errc::shooting_failure, "shock trajectory left the physical domain");
            path.push_back(y);
            const double dist = std::abs(y[0] - target[0]) + std::abs(y[1] - target[1]);
            if (dist < 1e-11 * scale) break;
            if (it + 1 == max_steps) fail(Errc::shooting_failure, "shock trajectory did not reach the node");
        }
        if (!saddle_minus_) std::reverse(path.begin(), path.end());
        // snap the node end exactly onto its equilibrium neighbourhood; recentre at the midpoint volume
        const double vmid = 0.5 * (minus_.v + plus_.v);
        std::size_t j = 0;
        while (j + 1 < path.size() && !((path[j][0] - vmid) * (path[j + 1][0] - vmid) <= 0.0)) ++j;
        const double frac = (vmid - path[j][0]) / (path[j + 1][0] - path[j][0]);
        const double zc = (static_cast<double>(j) + frac) * hz_;
        zeta_.resize(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) zeta_[i] = static_cast<double>(i) * hz_ - zc;
        traj_ = std::move(path);
        dtraj_.resize(traj_.size());
        for (std::size_t i = 0; i < traj_.size(); ++i) dtraj_[i] = rhs(traj_[i]);
        if (saddle_minus_) {
            lam_minus_ = lam_s;
            lam_plus_ = lam_node;
        } else {
            lam_plus_ = lam_s;
            lam_minus_ = lam_node;
        }
    }

    TransportModel tm_;
    double eps_;
    GasState minus_, plus_;
    double s_;
    double c1_ = 0, c2_ = 0, c3_ = 0;
    double strength_ = 0;
    bool saddle_minus_ = true;
    double hz_ = 0;
    double lam_minus_ = 0, lam_plus_ = 0;
    std::vector<double> zeta_;
    std::vector<Vec2d> traj_, dtraj_;
};

inline SpaceTimeField build_shock_profile(const WavePattern& w, double eps, const UniformGrid& grid,
                                          const std::vector<double>& times, const TransportModel& tm) {
    const ShockWave sw(w, tm, eps);
    SpaceTimeField f;
    f.grid = grid;
    f.times = times;
    for (double t : times) {
        FieldSlice s(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) store(s, i, sw.eval(t, grid.at(i)));
        f.slices.push_back(std::move(s));
    }
    return f;
}

}

#endif
