#ifndef HLIM_GAS_DYNAMICS_HPP
#define HLIM_GAS_DYNAMICS_HPP

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "hlim/error.hpp"

namespace hlim {

/// Monatomic ideal gas with gas constant R = 2/3 and gamma = 5/3.
inline constexpr double R_gas = 2.0 / 3.0;
inline constexpr double gamma_gas = 5.0 / 3.0;

/// Lagrangian macroscopic state: specific volume, velocity, temperature.
struct GasState {
    double v = 1.0;
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;
    double theta = 1.0;

    double rho() const { return 1.0 / v; }
    double speed_squared() const { return u1 * u1 + u2 * u2 + u3 * u3; }
    double internal_energy() const { return theta; }
    double total_energy() const { return theta + 0.5 * speed_squared(); }
    double pressure() const { return R_gas * theta / v; }

    friend bool operator==(const GasState&, const GasState&) = default;
};

inline void validate(const GasState& s) {
    if (!std::isfinite(s.v) || !std::isfinite(s.u1) || !std::isfinite(s.u2) || !std::isfinite(s.u3) ||
        !std::isfinite(s.theta))
        fail(Errc::domain_error, "non-finite gas state");
    if (!(s.v > 0.0) || !(s.theta > 0.0)) fail(Errc::domain_error, "gas state needs v > 0 and theta > 0");
}

inline double pressure(double v, double theta) { return R_gas * theta / v; }

inline double pressure(const GasState& s) {
    validate(s);
    return s.pressure();
}

/// s = ln(theta) + (2/3) ln(v); constant along isentropes theta v^(2/3) = const.
inline double entropy(const GasState& s) {
    validate(s);
    return std::log(s.theta) + (2.0 / 3.0) * std::log(s.v);
}

enum class Family { one = 1, three = 3 };
enum class Frame { lagrangian, eulerian };
enum class SystemSize { three_by_three = 3, five_by_five = 5 };

/// Lagrangian sound speed sqrt(10 theta) / (3 v).
inline double lagrangian_sound_speed(double v, double theta) { return std::sqrt(10.0 * theta) / (3.0 * v); }

inline double char_speed(const GasState& s, Family f, Frame frame = Frame::lagrangian) {
    validate(s);
    const double sign = f == Family::one ? -1.0 : 1.0;
    if (frame == Frame::lagrangian) return sign * lagrangian_sound_speed(s.v, s.theta);
    return s.u1 + sign * std::sqrt(10.0 * s.theta) / 3.0;
}

/// Eigen-decomposition A = R diag(lambda) L with L R = I, eigenvalues ascending.
template <int N>
struct Eigensystem {
    Eigen::Matrix<double, N, 1> lambda;
    Eigen::Matrix<double, N, N> L;
    Eigen::Matrix<double, N, N> R;
};

/// Jacobian of the Lagrangian flux (-u1, p, 0, 0, p u1) in (v, u1, [u2, u3,] E).
template <int N>
Eigen::Matrix<double, N, N> flux_jacobian(const GasState& s) {
    static_assert(N == 3 || N == 5, "system size is 3 or 5");
    validate(s);
    const double v = s.v;
    const double u = s.u1;
    const double P = s.pressure();
    const double pv = -P / v;
    const double pu1 = -2.0 * u / (3.0 * v);
    const double pE = 2.0 / (3.0 * v);
    constexpr int iE = N - 1;
    Eigen::Matrix<double, N, N> A = Eigen::Matrix<double, N, N>::Zero();
    A(0, 1) = -1.0;
    A(1, 0) = pv;
    A(1, 1) = pu1;
    A(1, iE) = pE;
    A(iE, 0) = u * pv;
    A(iE, 1) = P + u * pu1;
    A(iE, iE) = u * pE;
    if constexpr (N == 5) {
        const double pu2 = -2.0 * s.u2 / (3.0 * v);
        const double pu3 = -2.0 * s.u3 / (3.0 * v);
        A(1, 2) = pu2;
        A(1, 3) = pu3;
        A(iE, 2) = u * pu2;
        A(iE, 3) = u * pu3;
    }
    return A;
}

/// Right eigenvectors of the acoustic families have unit norm and positive leading entry.
/// The zero family of the 3x3 system is normalised the same way. In the 5x5 system the
/// zero-family columns are dual to the left vectors (P, -u1, 0, 0, 1), e_u2, e_u3.
template <int N>
Eigensystem<N> flux_jacobian_eigensystem(const GasState& s) {
    static_assert(N == 3 || N == 5, "system size is 3 or 5");
    validate(s);
    const double v = s.v;
    const double u = s.u1;
    const double P = s.pressure();
    const double pv = -P / v;
    const double pu1 = -2.0 * u / (3.0 * v);
    const double pE = 2.0 / (3.0 * v);
    const double c = lagrangian_sound_speed(v, s.theta);
    constexpr int iE = N - 1;

    Eigensystem<N> es;
    es.lambda.setZero();
    es.lambda(0) = -c;
    es.lambda(N - 1) = c;
    es.R.setZero();

    auto acoustic = [&](double lam, int col) {
        Eigen::Matrix<double, N, 1> r = Eigen::Matrix<double, N, 1>::Zero();
        r(0) = 1.0;
        r(1) = -lam;
        r(iE) = (lam * (pu1 - lam) - pv) / pE;
        r.normalize();
        es.R.col(col) = r;
    };
    acoustic(-c, 0);
    acoustic(c, N - 1);

    if constexpr (N == 3) {
        Eigen::Vector3d r(1.0, 0.0, 1.5 * P);
        r.normalize();
        es.R.col(1) = r;
    } else {
        es.R(0, 1) = 2.0 / (5.0 * P);
        es.R(4, 1) = 0.6;
        es.R(0, 2) = -2.0 * s.u2 / (5.0 * P);
        es.R(2, 2) = 1.0;
        es.R(4, 2) = 0.4 * s.u2;
        es.R(0, 3) = -2.0 * s.u3 / (5.0 * P);
        es.R(3, 3) = 1.0;
        es.R(4, 3) = 0.4 * s.u3;
    }
    es.L = es.R.inverse();
    return es;
}

}

#endif
