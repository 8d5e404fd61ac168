#ifndef HLIM_NUMERICS_HPP
#define HLIM_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "hlim/error.hpp"

namespace hlim {

using Vec2d = std::array<double, 2>;

/// Uniform grid x_i = x0 + i*dx, i = 0..n-1.
struct UniformGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n = 0;

    static UniformGrid span(double a, double b, std::size_t n) {
        if (n < 2 || !(b > a)) fail(Errc::domain_error, "grid span needs b > a and n >= 2");
        return UniformGrid{a, (b - a) / static_cast<double>(n - 1), n};
    }

    /// Cell-centred grid of n cells covering [a, b].
    static UniformGrid cells(double a, double b, std::size_t n) {
        if (n < 2 || !(b > a)) fail(Errc::domain_error, "grid cells needs b > a and n >= 2");
        const double dx = (b - a) / static_cast<double>(n);
        return UniformGrid{a + 0.5 * dx, dx, n};
    }

    double at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    double front() const { return x0; }
    double back() const { return at(n - 1); }

    std::vector<double> points() const {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = at(i);
        return p;
    }
};

inline double bisect(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-14, int max_iter = 400) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) fail(Errc::no_convergence, "bisection bracket has no sign change");
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0 || 0.5 * (b - a) < tol) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Fritsch-Carlson slopes: the interpolant preserves monotonicity of the data.
inline std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        del[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = del[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) s = 3.0 * d0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], del[0], del[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    return d;
}

inline double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * d1;
}

/// Monotone piecewise-cubic interpolant on strictly increasing nodes.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size() || x_.size() < 2) fail(Errc::domain_error, "interpolant needs >= 2 nodes");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1])) fail(Errc::domain_error, "interpolation nodes must increase strictly");
        d_ = pchip_slopes(x_, y_);
    }

    /// Outside the node range the end values are held constant.
    double operator()(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        return hermite(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], x);
    }

    const std::vector<double>& nodes() const { return x_; }

private:
    std::vector<double> x_, y_, d_;
};

/// Monotone cubic interpolation of uniformly sampled data; returns `outside` off-grid.
inline double pchip_uniform(const UniformGrid& g, const std::vector<double>& y, double x, double outside = 0.0) {
    const double s = (x - g.x0) / g.dx;
    if (s < 0.0 || s > static_cast<double>(g.n - 1)) return outside;
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= g.n - 1) i = g.n - 2;
    const double t = s - static_cast<double>(i);
    auto delta = [&](std::ptrdiff_t k) -> double {
        if (k < 0 || k + 1 >= static_cast<std::ptrdiff_t>(g.n)) return std::numeric_limits<double>::quiet_NaN();
        return y[static_cast<std::size_t>(k) + 1] - y[static_cast<std::size_t>(k)];
    };
    auto slope = [&](std::size_t j) -> double {
        const std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(j);
        const double dl = delta(jj - 1);
        const double dr = delta(jj);
        if (std::isnan(dl)) return dr;
        if (std::isnan(dr)) return dl;
        if (dl * dr <= 0.0) return 0.0;
        return 2.0 * dl * dr / (dl + dr);
    };
    const double d0 = slope(i);
    const double d1 = slope(i + 1);
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * d1;
}

/// Cumulative trapezoid integral with I[0] = 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    return out;
}

/// Second-order centred derivative, one-sided second-order at the ends.
inline std::vector<double> derivative(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return d;
}

/// Fourth-order centred derivative on the interior; second-order near the ends.
inline std::vector<double> derivative4(const std::vector<double>& f, double dx) {
    const std::size_t n = f.size();
    std::vector<double> d = derivative(f, dx);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * dx);
    return d;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual = 0.0;  ///< root-mean-square residual
};

/// Ordinary least squares y = a + b x.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) fail(Errc::insufficient_data, "linear fit needs >= 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) fail(Errc::insufficient_data, "linear fit needs distinct abscissae");
    LinearFit r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (r.intercept + r.slope * x[i]);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / static_cast<double>(n));
    r.r_squared = syy > 0.0 ? 1.0 - ss / syy : 1.0;
    return r;
}

/// Slope of log(y) against log(x).
inline LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail(Errc::domain_error, "log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

/// Thomas algorithm; a is the sub-diagonal (a[0] unused), c the super-diagonal.
inline std::vector<double> solve_tridiagonal(std::vector<double> a, std::vector<double> b, std::vector<double> c,
                                             std::vector<double> d) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

inline double sup_norm(const std::vector<double>& f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

/// (sum |f|^p dx)^(1/p)
inline double lp_norm(const std::vector<double>& f, double dx, double p) {
    double s = 0.0;
    for (double v : f) s += std::pow(std::abs(v), p);
    return std::pow(s * dx, 1.0 / p);
}

}

#endif
