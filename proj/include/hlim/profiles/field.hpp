#ifndef HLIM_PROFILES_FIELD_HPP
#define HLIM_PROFILES_FIELD_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "hlim/gas_dynamics.hpp"
#include "hlim/numerics.hpp"

namespace hlim {

/// Macroscopic fields and their x-derivatives at one time on a uniform grid.
struct FieldSlice {
    std::vector<double> V, U1, U2, U3, Theta, E;
    std::vector<double> Vx, U1x, Thetax;
    std::vector<double> Vxx, U1xx, Thetaxx;

    explicit FieldSlice(std::size_t n = 0) { resize(n); }

    void resize(std::size_t n) {
        for (auto* f : {&V, &U1, &U2, &U3, &Theta, &E, &Vx, &U1x, &Thetax, &Vxx, &U1xx, &Thetaxx}) f->assign(n, 0.0);
    }

    std::size_t size() const { return V.size(); }

    GasState state(std::size_t i) const { return GasState{V[i], U1[i], U2[i], U3[i], Theta[i]}; }

    /// E = Theta + |U|^2 / 2
    void fill_energy() {
        for (std::size_t i = 0; i < size(); ++i)
            E[i] = Theta[i] + 0.5 * (U1[i] * U1[i] + U2[i] * U2[i] + U3[i] * U3[i]);
    }

    /// Replaces derivatives by centred differences of the stored fields.
    void fill_derivatives(double dx) {
        Vx = derivative(V, dx);
        U1x = derivative(U1, dx);
        Thetax = derivative(Theta, dx);
        Vxx = derivative(Vx, dx);
        U1xx = derivative(U1x, dx);
        Thetaxx = derivative(Thetax, dx);
    }
};

/// Point value of a profile with first and second x-derivatives.
struct ProfilePoint {
    double V = 0, U1 = 0, Theta = 0;
    double Vx = 0, U1x = 0, Thetax = 0;
    double Vxx = 0, U1xx = 0, Thetaxx = 0;
};

inline void store(FieldSlice& s, std::size_t i, const ProfilePoint& p) {
    s.V[i] = p.V;
    s.U1[i] = p.U1;
    s.Theta[i] = p.Theta;
    s.Vx[i] = p.Vx;
    s.U1x[i] = p.U1x;
    s.Thetax[i] = p.Thetax;
    s.Vxx[i] = p.Vxx;
    s.U1xx[i] = p.U1xx;
    s.Thetaxx[i] = p.Thetaxx;
    s.E[i] = p.Theta + 0.5 * p.U1 * p.U1;
}

/// Fields sampled on a uniform x grid at a list of times.
struct SpaceTimeField {
    UniformGrid grid;
    std::vector<double> times;
    std::vector<FieldSlice> slices;

    std::size_t time_index(double t) const {
        for (std::size_t k = 0; k < times.size(); ++k)
            if (std::abs(times[k] - t) <= 1e-12 * (1.0 + std::abs(t))) return k;
        fail(Errc::domain_error, "time not present in field");
    }
    const FieldSlice& at_time(double t) const { return slices[time_index(t)]; }
};

}

#endif
