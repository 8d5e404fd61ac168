#ifndef HLIM_TRANSPORT_HPP
#define HLIM_TRANSPORT_HPP

#include <cmath>
#include <functional>

#include "hlim/error.hpp"
#include "hlim/gas_dynamics.hpp"

namespace hlim {

/// Viscosity mu(theta) and heat conductivity kappa(theta).
struct TransportModel {
    std::function<double(double)> viscosity;
    std::function<double(double)> conductivity;

    /// mu = mu0 sqrt(theta), kappa = (5/2) R mu / Pr.
    static TransportModel power_law(double mu0 = 1.0, double prandtl = 1.0) {
        if (!(mu0 > 0.0) || !(prandtl > 0.0)) fail(Errc::domain_error, "mu0 and prandtl must be positive");
        TransportModel m;
        m.viscosity = [mu0](double th) { return mu0 * std::sqrt(th); };
        m.conductivity = [mu0, prandtl](double th) { return 2.5 * R_gas * mu0 * std::sqrt(th) / prandtl; };
        return m;
    }

    double mu(double th) const { return viscosity(th); }
    double kappa(double th) const { return conductivity(th); }
    double dmu(double th) const {
        const double h = 1e-6 * th;
        return (mu(th + h) - mu(th - h)) / (2.0 * h);
    }
    double dkappa(double th) const {
        const double h = 1e-6 * th;
        return (kappa(th + h) - kappa(th - h)) / (2.0 * h);
    }
};

}

#endif
