#include <cmath>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "hlim/numerics.hpp"

using namespace hlim;
using Catch::Approx;

TEST_CASE("uniform grids place nodes and cell centres", "[numerics]") {
    const UniformGrid s = UniformGrid::span(-1.0, 1.0, 5);
    CHECK(s.dx == Approx(0.5));
    CHECK(s.back() == Approx(1.0));
    const UniformGrid c = UniformGrid::cells(0.0, 1.0, 4);
    CHECK(c.front() == Approx(0.125));
    CHECK(c.back() == Approx(0.875));
    CHECK_THROWS_AS(UniformGrid::span(1.0, 0.0, 10), Error);
}

TEST_CASE("bisection finds a bracketed root", "[numerics]") {
    const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
    CHECK(r == Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), Error);
}

TEST_CASE("monotone cubic preserves monotone data and interpolates nodes", "[numerics]") {
    std::vector<double> x{0.0, 0.5, 1.0, 3.0, 3.1, 5.0};
    std::vector<double> y{0.0, 0.0, 0.2, 3.0, 3.0, 4.0};
    const MonotoneCubic m(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(m(x[i]) == Approx(y[i]));
    double prev = -1.0;
    for (double t = 0.0; t <= 5.0; t += 1e-3) {
        const double v = m(t);
        CHECK(v >= prev - 1e-14);
        prev = v;
    }
    CHECK(m(-10.0) == 0.0);
    CHECK(m(10.0) == 4.0);
}

TEST_CASE("uniform pchip reproduces linear data", "[numerics]") {
    const UniformGrid g = UniformGrid::span(0.0, 1.0, 11);
    std::vector<double> y(g.n);
    for (std::size_t i = 0; i < g.n; ++i) y[i] = 2.0 * g.at(i) + 1.0;
    for (double x : {0.03, 0.31, 0.77, 1.0}) CHECK(pchip_uniform(g, y, x) == Approx(2.0 * x + 1.0));
    CHECK(pchip_uniform(g, y, 1.5, -7.0) == -7.0);
}

TEST_CASE("trapezoid and difference operators have their orders", "[numerics]") {
    auto err = [](std::size_t n, bool fourth) {
        const UniformGrid g = UniformGrid::span(0.0, 1.0, n);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(3.0 * g.at(i));
        const std::vector<double> d = fourth ? derivative4(f, g.dx) : derivative(f, g.dx);
        double e = 0.0;
        for (std::size_t i = 2; i + 2 < n; ++i) e = std::max(e, std::abs(d[i] - 3.0 * std::cos(3.0 * g.at(i))));
        return e;
    };
    CHECK(std::log2(err(101, false) / err(201, false)) == Approx(2.0).margin(0.1));
    CHECK(std::log2(err(101, true) / err(201, true)) == Approx(4.0).margin(0.2));

    const UniformGrid g = UniformGrid::span(0.0, M_PI, 2001);
    std::vector<double> f(g.n);
    for (std::size_t i = 0; i < g.n; ++i) f[i] = std::sin(g.at(i));
    CHECK(cumulative_trapezoid(g.points(), f).back() == Approx(2.0).epsilon(1e-6));
}

TEST_CASE("least squares recovers an exact power law", "[numerics]") {
    std::vector<double> x{0.1, 0.2, 0.4, 0.8}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
    const LinearFit f = loglog_fit(x, y);
    CHECK(f.slope == Approx(1.7));
    CHECK(f.r_squared == Approx(1.0));
    CHECK(f.residual < 1e-12);
    CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), Error);
    CHECK_THROWS_AS(loglog_fit({1.0, -1.0}, {1.0, 1.0}), Error);
}

TEST_CASE("Thomas solver agrees with the residual on random systems", "[numerics]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const std::size_t n = 50;
    std::vector<double> a(n), b(n), c(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = U(rng);
        c[i] = U(rng);
        b[i] = 4.0 + U(rng);
        d[i] = U(rng);
    }
    const std::vector<double> x = solve_tridiagonal(a, b, c, d);
    for (std::size_t i = 0; i < n; ++i) {
        double r = b[i] * x[i] - d[i];
        if (i > 0) r += a[i] * x[i - 1];
        if (i + 1 < n) r += c[i] * x[i + 1];
        CHECK(std::abs(r) < 1e-13);
    }
}

TEST_CASE("norms", "[numerics]") {
    const std::vector<double> f{1.0, -2.0, 2.0};
    CHECK(sup_norm(f) == 2.0);
    CHECK(lp_norm(f, 0.5, 2.0) == Approx(std::sqrt(4.5)));
}
