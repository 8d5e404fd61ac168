#ifndef HLIM_PROFILES_RAREFACTION_HPP
#define HLIM_PROFILES_RAREFACTION_HPP

#include <cmath>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/riemann.hpp"

namespace hlim {

struct BurgersPoint {
    double w = 0.0;
    double wx = 0.0;
    double wxx = 0.0;
    double wt = 0.0;
};

/// Burgers equation w_t + w w_x = 0 from tanh data of width sigma; requires w_minus <= w_plus.
class SmoothedBurgers {
public:
    SmoothedBurgers(double w_minus, double w_plus, double sigma) : wm_(w_minus), wp_(w_plus), sigma_(sigma) {
        if (!(sigma > 0.0)) fail(Errc::domain_error, "smoothing width must be positive");
        if (w_plus < w_minus) fail(Errc::domain_error, "smoothed Burgers data must be non-decreasing");
    }

    double initial(double x) const { return 0.5 * (wp_ + wm_) + 0.5 * (wp_ - wm_) * std::tanh(x / sigma_); }

    double initial_dx(double x) const {
        const double c = std::cosh(x / sigma_);
        if (!std::isfinite(c) || c > 1e150) return 0.0;
        return 0.5 * (wp_ - wm_) / (sigma_ * c * c);
    }

    double initial_dxx(double x) const {
        const double c = std::cosh(x / sigma_);
        if (!std::isfinite(c) || c > 1e150) return 0.0;
        return -(wp_ - wm_) * std::tanh(x / sigma_) / (sigma_ * sigma_ * c * c);
    }

    /// Foot of the characteristic through (t, x).
    double foot(double t, double x) const {
        if (t == 0.0) return x;
        double a = x - wp_ * t, b = x - wm_ * t;
        if (a == b) return a;
        double x0 = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            const double g = x0 + initial(x0) * t - x;
            if (g > 0.0) b = x0;
            else a = x0;
            const double dg = 1.0 + t * initial_dx(x0);
            double nx = x0 - g / dg;
            if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
            if (std::abs(nx - x0) <= 1e-15 * (1.0 + std::abs(x0)) || b - a <= 1e-15 * (1.0 + std::abs(x0))) {
                x0 = nx;
                break;
            }
            x0 = nx;
        }
        return x0;
    }

    BurgersPoint eval(double t, double x) const {
        if (t < 0.0) fail(Errc::domain_error, "Burgers evaluation needs t >= 0");
        const double x0 = foot(t, x);
        const double d1 = initial_dx(x0);
        const double d2 = initial_dxx(x0);
        const double j = 1.0 + t * d1;
        BurgersPoint p;
        p.w = initial(x0);
        p.wx = d1 / j;
        p.wxx = d2 / (j * j * j);
        p.wt = -p.w * p.wx;
        return p;
    }

    double sigma() const { return sigma_; }
    double w_minus() const { return wm_; }
    double w_plus() const { return wp_; }

private:
    double wm_, wp_, sigma_;
};

/// Smooth 1-rarefaction: the state on the isentrope whose 1-speed equals the Burgers solution.
class RarefactionWave {
public:
    RarefactionWave(const GasState& left, const GasState& right, double sigma)
        : left_(left), right_(right),
          K_(right.theta * std::pow(right.v, 2.0 / 3.0)),
          burgers_(char_speed(left, Family::one), char_speed(right, Family::one), sigma) {}

    const SmoothedBurgers& burgers() const { return burgers_; }
    const GasState& left() const { return left_; }
    const GasState& right() const { return right_; }

    /// State with Lagrangian 1-speed w < 0 on the rarefaction isentrope.
    ProfilePoint from_speed(double w, double wx, double wxx) const {
        const double root = std::sqrt(10.0 * K_);
        ProfilePoint p;
        p.V = std::pow(-3.0 * w / root, -0.75);
        const double dV = 0.75 * p.V / (-w);
        const double d2V = (21.0 / 16.0) * p.V / (w * w);
        p.Vx = dV * wx;
        p.Vxx = d2V * wx * wx + dV * wxx;
        p.U1 = right_.u1 - root * (std::pow(p.V, -1.0 / 3.0) - std::pow(right_.v, -1.0 / 3.0));
        const double c1 = root / 3.0;
        p.U1x = c1 * std::pow(p.V, -4.0 / 3.0) * p.Vx;
        p.U1xx = c1 * (-(4.0 / 3.0) * std::pow(p.V, -7.0 / 3.0) * p.Vx * p.Vx + std::pow(p.V, -4.0 / 3.0) * p.Vxx);
        p.Theta = K_ * std::pow(p.V, -2.0 / 3.0);
        p.Thetax = -(2.0 / 3.0) * K_ * std::pow(p.V, -5.0 / 3.0) * p.Vx;
        p.Thetaxx = -(2.0 / 3.0) * K_ *
                    (-(5.0 / 3.0) * std::pow(p.V, -8.0 / 3.0) * p.Vx * p.Vx + std::pow(p.V, -5.0 / 3.0) * p.Vxx);
        return p;
    }

    ProfilePoint eval(double t, double x) const {
        const BurgersPoint b = burgers_.eval(t, x);
        return from_speed(b.w, b.wx, b.wxx);
    }

private:
    GasState left_, right_;
    double K_;
    SmoothedBurgers burgers_;
};

inline RarefactionWave rarefaction_wave(const WavePattern& w, double sigma) {
    return RarefactionWave(w.left, w.mid_star, sigma);
}

/// Default smoothing width sigma = eps^(1/5).
inline double default_sigma(double eps) { return std::pow(eps, 0.2); }

inline SpaceTimeField build_rarefaction_profile(const WavePattern& w, double sigma, const UniformGrid& grid,
                                                const std::vector<double>& times) {
    const RarefactionWave r = rarefaction_wave(w, sigma);
    SpaceTimeField f;
    f.grid = grid;
    f.times = times;
    for (double t : times) {
        FieldSlice s(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) store(s, i, r.eval(t, grid.at(i)));
        f.slices.push_back(std::move(s));
    }
    return f;
}

}

#endif
