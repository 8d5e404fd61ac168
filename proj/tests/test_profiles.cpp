#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "hlim/harness/scaling.hpp"
#include "hlim/profiles.hpp"

using namespace hlim;
using Catch::Approx;

namespace {

const GasState L0{1.0, 0, 0, 0, 1.0};
const GasState R02{1.0 + 0.2 / std::sqrt(2.0), 0, 0, 0, 1.0 - 0.2 / std::sqrt(2.0)};

WavePattern delta_pattern() { return solve_riemann(L0, R02); }

// Godunov finite volumes for w_t + (w^2/2)_x = 0 with outflow ends.
double burgers_fv(double wm, double wp, double sigma, double t_end, double x_eval, double a, double b, double dx) {
    const std::size_t n = static_cast<std::size_t>((b - a) / dx);
    std::vector<double> w(n), nw(n), F(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        // cell average of the tanh data
        const double xl = a + i * dx, xr = xl + dx;
        w[i] = 0.5 * (wp + wm) + 0.5 * (wp - wm) * sigma * (std::log(std::cosh(xr / sigma)) - std::log(std::cosh(xl / sigma))) / dx;
    }
    auto godunov = [](double l, double r) {
        if (l <= r) {
            if (l > 0) return 0.5 * l * l;
            if (r < 0) return 0.5 * r * r;
            return 0.0;
        }
        return 0.5 * std::max(l * l, r * r);
    };
    double t = 0.0;
    while (t < t_end) {
        const double dt = std::min(0.9 * dx / std::max(std::abs(wm), std::abs(wp)), t_end - t);
        for (std::size_t i = 0; i <= n; ++i) {
            const double l = i == 0 ? w[0] : w[i - 1];
            const double r = i == n ? w[n - 1] : w[i];
            F[i] = godunov(l, r);
        }
        for (std::size_t i = 0; i < n; ++i) nw[i] = w[i] - dt / dx * (F[i + 1] - F[i]);
        w.swap(nw);
        t += dt;
    }
    const double s = (x_eval - a) / dx - 0.5;
    const std::size_t i = static_cast<std::size_t>(s);
    const double f = s - i;
    return (1 - f) * w[i] + f * w[i + 1];
}

}

TEST_CASE("smoothed Burgers data and symmetry", "[profiles][rarefaction]") {
    const SmoothedBurgers b(-1.0, 1.0, 0.3);
    CHECK(b.eval(0.0, 0.0).w == 0.0);
    for (double x : {-1.0, -0.2, 0.4, 2.0}) {
        CHECK(b.eval(0.0, x).w == Approx(std::tanh(x / 0.3)));
        CHECK(b.eval(0.7, x).w == Approx(-b.eval(0.7, -x).w).margin(1e-14));
    }
    CHECK_THROWS_AS(SmoothedBurgers(1.0, 0.0, 0.1), Error);
}

TEST_CASE("smoothed Burgers matches a fine finite-volume solve", "[profiles][rarefaction]") {
    const SmoothedBurgers b(0.0, 1.0, 0.1);
    const double oracle = burgers_fv(0.0, 1.0, 0.1, 2.0, 1.0, -1.5, 1.5, 1e-4);
    CHECK(b.eval(2.0, 1.0).w == Approx(oracle).margin(1e-4));
}

TEST_CASE("rarefaction profile: monotone velocity, end states, exponential tails", "[profiles][rarefaction]") {
    const WavePattern w = delta_pattern();
    const double sigma = 0.1;
    const RarefactionWave r = rarefaction_wave(w, sigma);
    for (double t : {0.0, 0.1, 0.5, 2.0})
        for (double x = -3.0; x <= 3.0; x += 0.01) REQUIRE(r.eval(t, x).U1x > 0.0);

    const ProfilePoint far_l = r.eval(0.0, -60 * sigma), far_r = r.eval(0.0, 60 * sigma);
    CHECK(far_l.V == Approx(w.left.v).margin(1e-12));
    CHECK(far_r.V == Approx(w.mid_star.v).margin(1e-12));
    CHECK(far_r.U1 == Approx(w.mid_star.u1).margin(1e-12));
    CHECK(far_r.Theta == Approx(w.mid_star.theta).margin(1e-12));

    std::vector<double> xs, ys;
    for (double x = -8 * sigma; x <= -4 * sigma; x += 0.1 * sigma) {
        xs.push_back(x);
        ys.push_back(std::log(std::abs(r.eval(0.0, x).V - w.left.v)));
    }
    CHECK(linear_fit(xs, ys).slope == Approx(2.0 / sigma).epsilon(0.02));
}

TEST_CASE("rarefaction profile solves the isentropic Euler system to second order", "[profiles][rarefaction][property]") {
    const WavePattern w = delta_pattern();
    const RarefactionWave r = rarefaction_wave(w, 0.2);
    auto residual = [&](double h) {
        double m = 0.0;
        for (double x = -0.5; x <= 0.3; x += 0.05) {
            const double t = 0.4;
            const ProfilePoint a = r.eval(t + h, x), b = r.eval(t - h, x), c = r.eval(t, x + h), d = r.eval(t, x - h);
            const double Vt = (a.V - b.V) / (2 * h), Ut = (a.U1 - b.U1) / (2 * h);
            const double Ux = (c.U1 - d.U1) / (2 * h);
            const double Px = (pressure(c.V, c.Theta) - pressure(d.V, d.Theta)) / (2 * h);
            m = std::max({m, std::abs(Vt - Ux), std::abs(Ut + Px)});
        }
        return m;
    };
    const double order = std::log2(residual(0.02) / residual(0.01));
    CHECK(order >= 1.8);
}

TEST_CASE("rarefaction derivative norms scale with sigma", "[profiles][rarefaction]") {
    ScalingConfig c;
    c.values = {0.2, 0.1, 0.05};
    c.p = 1.0;
    CHECK(std::abs(run_scaling_study(ScalingStudy::lemma21, c).slope) < 0.05);
}

TEST_CASE("contact wave: boundary values, ODE residual, Gaussian tail", "[profiles][contact]") {
    const WavePattern w = delta_pattern();
    const ContactWave c(w, TransportModel::power_law(), 0.01);
    CHECK(c.theta_hat().front() == Approx(w.mid_star.theta).margin(1e-8));
    CHECK(c.theta_hat().back() == Approx(w.mid_upper.theta).margin(1e-8));
    CHECK(c.ode_residual() < 1e-8);
    const ContactTailFit f = c.tail_fit();
    CHECK(f.c > 0.0);
    CHECK(f.joint.r_squared > 0.99);
}

TEST_CASE("contact wave equals the relaxed parabolic solution from step data", "[profiles][contact]") {
    const WavePattern w = delta_pattern();
    // with eps = 1 and t = 0 the profile is Theta_hat(x); step data relax to it at unit time
    const ContactWave c(w, TransportModel::power_law(), 1.0);
    const double dy = 0.02, Lh = 8.0;
    const std::size_t n = static_cast<std::size_t>(2 * Lh / dy) + 1;
    std::vector<double> th(n), nt(n), q(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = -Lh + i * dy;
        th[i] = y < 0 ? w.mid_star.theta : (y > 0 ? w.mid_upper.theta : 0.5 * (w.mid_star.theta + w.mid_upper.theta));
    }
    double amax = 0.0;
    for (double v : th) amax = std::max(amax, c.a(v));
    const double dt = 0.2 * dy * dy / amax;
    const int steps = static_cast<int>(std::ceil(1.0 / dt));
    const double k = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i + 1 < n; ++i) q[i] = c.a(0.5 * (th[i] + th[i + 1])) * (th[i + 1] - th[i]) / dy;
        nt = th;
        for (std::size_t i = 1; i + 1 < n; ++i) nt[i] = th[i] + k * (q[i] - q[i - 1]) / dy;
        th.swap(nt);
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(th[i] - c.eval(0.0, -Lh + i * dy).Theta));
    CHECK(err < 1e-3 * w.strengths.cd + 1e-4);
}

TEST_CASE("contact wave is constant without a temperature jump", "[profiles][contact]") {
    const WavePattern w = solve_riemann(L0, L0);
    const ContactWave c(w, TransportModel::power_law(), 0.01);
    for (double x : {-1.0, 0.0, 0.3}) {
        const ProfilePoint p = c.eval(0.2, x);
        CHECK(p.Theta == w.mid_star.theta);
        CHECK(p.U1 == w.mid_star.u1);
        CHECK(p.V == Approx(w.mid_star.v).epsilon(1e-15));
    }
}

TEST_CASE("contact profile satisfies the mass equation", "[profiles][contact][property]") {
    const WavePattern w = delta_pattern();
    const double eps = 0.01;
    const ContactWave c(w, TransportModel::power_law(), eps);
    auto residual = [&](double h) {
        double m = 0.0;
        for (double x = -0.3; x <= 0.3; x += 0.01) {
            const double Vt = (c.eval(0.3 + h, x).V - c.eval(0.3 - h, x).V) / (2 * h);
            m = std::max(m, std::abs(Vt - c.eval(0.3, x).U1x));
        }
        return m;
    };
    const double scale = w.strengths.cd / std::sqrt(eps);
    CHECK(residual(1e-3) < 1e-3 * scale);
}

TEST_CASE("shock profile: end states, monotonicity, first integrals", "[profiles][shock]") {
    const WavePattern w = delta_pattern();
    const double eps = 0.01;
    const ShockWave s(w, TransportModel::power_law(), eps);
    const ProfilePoint a = s.eval(0.0, -10.0), b = s.eval(0.0, 10.0);
    CHECK(std::abs(a.V - w.mid_upper.v) < 1e-8);
    CHECK(std::abs(a.U1 - w.mid_upper.u1) < 1e-8);
    CHECK(std::abs(a.Theta - w.mid_upper.theta) < 1e-8);
    CHECK(std::abs(b.V - w.right.v) < 1e-8);
    CHECK(std::abs(b.U1 - w.right.u1) < 1e-8);
    CHECK(std::abs(b.Theta - w.right.theta) < 1e-8);

    const auto& tr = s.trajectory();
    for (std::size_t i = 1; i < tr.size(); ++i) REQUIRE(tr[i][0] > tr[i - 1][0]);
    for (double x = -0.1; x <= 0.1; x += 0.002) {
        const ProfilePoint p = s.eval(0.0, x);
        REQUIRE(w.s3 * p.Vx > 0.0);
        REQUIRE(-p.U1x == Approx(w.s3 * p.Vx));
    }
    for (double r : s.first_integral_residuals()) CHECK(r < 1e-8);
}

TEST_CASE("shock tail rate scales like strength over eps", "[profiles][shock]") {
    const TransportModel tm = TransportModel::power_law();
    const WavePattern w = delta_pattern();
    for (bool side : {true, false}) {
        const double ratio = ShockWave(w, tm, 0.005).tail_rate(side) / ShockWave(w, tm, 0.01).tail_rate(side);
        CHECK(ratio == Approx(2.0).epsilon(0.15));
    }
    auto weak = [](double a) { return solve_riemann(L0, GasState{1.0 + a, 0, 0, 0, 1.0 - a}); };
    const double r = ShockWave(weak(0.1), tm, 0.01).tail_rate(true) / ShockWave(weak(0.05), tm, 0.01).tail_rate(true);
    const double strengths = weak(0.1).strengths.s3 / weak(0.05).strengths.s3;
    CHECK(r == Approx(strengths).epsilon(0.15));
}

TEST_CASE("hyperbolic wave I is linear in eps at fixed sigma", "[profiles][hyperbolic]") {
    const WavePattern w = delta_pattern();
    const UniformGrid g = UniformGrid::span(-1.2, 0.4, 161);
    const std::vector<double> times = time_levels(0.1, 0.3, g.dx, 1.2 * std::abs(w.fan_left), 0.9);
    const TransportModel tm = TransportModel::power_law();
    const HyperbolicField<3> a = build_hyperbolic_wave_I(w, 0.01, 0.2, g, times, tm);
    const HyperbolicField<3> b = build_hyperbolic_wave_I(w, 0.03, 0.2, g, times, tm);
    double scale = 0.0, diff = 0.0;
    for (std::size_t m = 0; m < times.size(); ++m)
        for (int k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < g.n; ++i) {
                scale = std::max(scale, std::abs(b.phys[m][k][i]));
                diff = std::max(diff, std::abs(b.phys[m][k][i] - 3.0 * a.phys[m][k][i]));
            }
    CHECK(scale > 0.0);
    CHECK(diff <= 1e-10 * scale);
    for (std::size_t i = 0; i < g.n; ++i) {
        REQUIRE(a.chars.front()[0][i] == 0.0);
        REQUIRE(a.chars.back()[1][i] == 0.0);
        REQUIRE(a.chars.back()[2][i] == 0.0);
    }
    CHECK_THROWS_AS(build_hyperbolic_wave_I(w, 0.01, 0.2, UniformGrid::span(-1.2, 0.4, 41), times, tm), Error);
}

TEST_CASE("hyperbolic wave II: zero terminal data, zero and scaled sources", "[profiles][hyperbolic]") {
    const WavePattern w = delta_pattern();
    const double eps = 0.01;
    const UniformGrid g = UniformGrid::span(-1.0, 1.0, 201);
    CompositeOptions o;
    o.T = 0.3;
    o.wave_II = false;
    const CompositeProfile cp(w, eps, g, o);
    SpaceTimeField bar;
    bar.grid = g;
    bar.times = cp.times();
    for (double t : cp.times()) bar.slices.push_back(cp.bar(t));

    ContactSourceModel src;
    src.strength = w.strengths.cd;
    src.eps = eps;
    ContactSourceModel src3 = src;
    src3.amplitude = {3.0, 3.0, 3.0, 3.0};
    const HyperbolicField<5> b1 = build_hyperbolic_wave_II(bar, src);
    const HyperbolicField<5> b3 = build_hyperbolic_wave_II(bar, src3);
    const HyperbolicField<5> b0 = build_hyperbolic_wave_II(bar, [](double, double) { return std::array<double, 4>{}; });

    double scale = 0.0, diff = 0.0, zero = 0.0;
    const std::size_t last = bar.times.size() - 1;
    for (std::size_t m = 0; m <= last; ++m)
        for (int k = 0; k < 5; ++k)
            for (std::size_t i = 0; i < g.n; ++i) {
                scale = std::max(scale, std::abs(b3.phys[m][k][i]));
                diff = std::max(diff, std::abs(b3.phys[m][k][i] - 3.0 * b1.phys[m][k][i]));
                zero = std::max(zero, std::abs(b0.phys[m][k][i]));
            }
    CHECK(scale > 0.0);
    CHECK(diff <= 1e-10 * scale);
    CHECK(zero == 0.0);
    for (int k = 0; k < 5; ++k)
        for (std::size_t i = 0; i < g.n; ++i) {
            REQUIRE(b1.chars[last][k][i] == 0.0);
            REQUIRE(b1.phys[last][k][i] == 0.0);
        }
}

TEST_CASE("composite profile: energy identity, far field, positivity", "[profiles][composite]") {
    const WavePattern w = delta_pattern();
    const double eps = 0.01;
    const UniformGrid g = UniformGrid::span(-2.0, 2.0, 401);
    CompositeOptions o;
    o.T = 0.3;
    const CompositeProfile cp(w, eps, g, o);
    for (double t : {0.1, 0.2, 0.3}) {
        const FieldSlice s = cp.full(t);
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(s.V[i] > 0.0);
            REQUIRE(s.Theta[i] > 0.0);
            const double E = s.Theta[i] + 0.5 * (s.U1[i] * s.U1[i] + s.U2[i] * s.U2[i] + s.U3[i] * s.U3[i]);
            REQUIRE(std::abs(s.E[i] - E) <= 1e-12 * (1.0 + std::abs(E)));
        }
    }
    CHECK_THROWS_AS(cp.full(0.05), Error);

    CompositeOptions bare;
    bare.wave_I = bare.wave_II = false;
    const UniformGrid wide = UniformGrid::span(-40.0, 40.0, 801);
    const FieldSlice s = CompositeProfile(w, eps, wide, bare).full(0.2);
    CHECK(s.V.front() == Approx(w.left.v).margin(1e-10));
    CHECK(s.U1.front() == Approx(w.left.u1).margin(1e-10));
    CHECK(s.Theta.front() == Approx(w.left.theta).margin(1e-10));
    CHECK(s.V.back() == Approx(w.right.v).margin(1e-10));
    CHECK(s.Theta.back() == Approx(w.right.theta).margin(1e-10));

    const Decomposition d = cp.decompose(0.2);
    const FieldSlice full = cp.full(0.2);
    for (std::size_t i = 0; i < g.n; ++i)
        REQUIRE(d.V_R1[i] + d.d1[i] + d.V_CD[i] + d.V_S3[i] - (w.mid_star.v + w.mid_upper.v) + d.b1[i] ==
                Approx(full.V[i]).margin(1e-13));
}

TEST_CASE("coordinate maps: affine for constants, round trip on the composite", "[profiles][coordinates]") {
    const UniformGrid g = UniformGrid::span(-1.0, 1.0, 401);
    FieldSlice c(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        c.V[i] = 2.0;
        c.U1[i] = 0.3;
        c.Theta[i] = 1.1;
    }
    const EulerianProfile ec = lagrangian_to_eulerian(c, g, 0.5);
    CHECK(ec.grid.front() == Approx(-1.5));
    CHECK(ec.grid.back() == Approx(2.5));
    for (std::size_t i = 0; i < g.n; ++i) {
        REQUIRE(ec.rho[i] == Approx(0.5));
        REQUIRE(ec.x_lagrangian[i] == Approx((ec.grid.at(i) - 0.5) / 2.0).margin(1e-12));
    }

    const WavePattern w = delta_pattern();
    CompositeOptions o;
    o.T = 0.3;
    const UniformGrid cg = UniformGrid::span(-1.5, 1.5, 4001);
    const CompositeProfile cp(w, 0.01, cg, o);
    const FieldSlice f = cp.full(0.2);
    const EulerianProfile e = lagrangian_to_eulerian(f, cg, 0.7, 8001);
    const FieldSlice back = eulerian_to_lagrangian(e, cg, 0.7);
    double err = 0.0;
    for (std::size_t i = 5; i + 5 < cg.n; ++i)
        err = std::max({err, std::abs(back.V[i] - f.V[i]), std::abs(back.U1[i] - f.U1[i]), std::abs(back.Theta[i] - f.Theta[i])});
    CHECK(err < 1e-6);
}

TEST_CASE("Eulerian shock speed", "[profiles][coordinates]") {
    const WavePattern w = delta_pattern();
    const double a = eulerian_shock_speed(w.s3, w.right), b = eulerian_shock_speed(w.s3, w.mid_upper);
    CHECK(a == Approx(b).epsilon(1e-10));
    CHECK(w.s3 == Approx((a - w.right.u1) / w.right.v));
}
