#ifndef HLIM_PROFILES_SUPERPOSE_HPP
#define HLIM_PROFILES_SUPERPOSE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "hlim/error.hpp"
#include "hlim/profiles/contact.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/profiles/hyperbolic_wave.hpp"
#include "hlim/profiles/rarefaction.hpp"
#include "hlim/profiles/shock.hpp"
#include "hlim/riemann.hpp"
#include "hlim/transport.hpp"

namespace hlim {

struct CompositeOptions {
    double sigma = 0.0;  ///< 0 selects eps^(1/5)
    double h = 0.1;
    double T = 0.5;
    double cfl = 0.9;
    bool wave_I = true;
    bool wave_II = true;
    std::array<double, 4> source_amplitude{1.0, 1.0, 1.0, 1.0};
    NonFluidCoefficients non_fluid;
    TransportModel transport = TransportModel::power_law();
};

/// Composite field and the volume components it is assembled from.
struct Decomposition {
    FieldSlice total;
    std::vector<double> V_R1, d1, V_CD, V_S3, b1;
};

/// Superposition of the smoothed rarefaction, contact, shock and both hyperbolic waves.
class CompositeProfile {
public:
    CompositeProfile(const WavePattern& w, double eps, const UniformGrid& grid, CompositeOptions opt = {})
        : w_(w), eps_(eps), grid_(grid), opt_(std::move(opt)),
          sigma_(opt_.sigma > 0.0 ? opt_.sigma : default_sigma(eps)),
          rar_(rarefaction_wave(w, sigma_)),
          contact_(w, opt_.transport, eps, opt_.non_fluid),
          shock_(w, opt_.transport, eps) {
        double speed = 0.0;
        for (const GasState* s : {&w.left, &w.mid_star, &w.mid_upper, &w.right})
            speed = std::max(speed, lagrangian_sound_speed(s->v, s->theta));
        times_ = time_levels(opt_.h, opt_.T, grid.dx, 1.2 * speed, opt_.cfl);
        if (opt_.wave_I) wave_I_ = build_hyperbolic_wave_I(w, eps, sigma_, grid, times_, opt_.transport);
        if (opt_.wave_II) {
            SpaceTimeField bar_field;
            bar_field.grid = grid;
            bar_field.times = times_;
            for (double t : times_) bar_field.slices.push_back(bar(t));
            ContactSourceModel src;
            src.strength = w.strengths.cd;
            src.eps = eps;
            // a vanishing contact has no tail to fit and its source is zero anyway
            if (w.strengths.cd > 0.0) src.c = contact_.tail_fit().c;
            src.amplitude = opt_.source_amplitude;
            source_ = src;
            wave_II_ = build_hyperbolic_wave_II(bar_field, src);
        }
    }

    double sigma() const { return sigma_; }
    double eps() const { return eps_; }
    const UniformGrid& grid() const { return grid_; }
    const std::vector<double>& times() const { return times_; }
    const WavePattern& pattern() const { return w_; }
    const RarefactionWave& rarefaction() const { return rar_; }
    const ContactWave& contact() const { return contact_; }
    const ShockWave& shock() const { return shock_; }
    const HyperbolicField<3>* wave_I() const { return wave_I_ ? &*wave_I_ : nullptr; }
    const HyperbolicField<5>* wave_II() const { return wave_II_ ? &*wave_II_ : nullptr; }
    const std::optional<ContactSourceModel>& source_model() const { return source_; }

    /// Composite without the second hyperbolic wave.
    FieldSlice bar(double t) const { return assemble(t, false, nullptr); }

    /// Full composite profile.
    FieldSlice full(double t) const { return assemble(t, true, nullptr); }

    Decomposition decompose(double t) const {
        Decomposition d;
        d.total = assemble(t, true, &d);
        return d;
    }

private:
    void check_time(double t) const {
        if ((opt_.wave_I || opt_.wave_II) && (t < opt_.h - 1e-12 || t > opt_.T + 1e-12))
            fail(Errc::domain_error, "composite time outside [h, T]");
    }

    FieldSlice assemble(double t, bool with_b, Decomposition* dec) const {
        check_time(t);
        const std::size_t n = grid_.n;
        const GasState& ms = w_.mid_star;
        const GasState& mu = w_.mid_upper;
        const double Es = ms.total_energy(), Eu = mu.total_energy();
        std::array<std::vector<double>, 3> d;
        if (wave_I_) d = wave_I_->at(t);
        else d.fill(std::vector<double>(n, 0.0));
        std::array<std::vector<double>, 5> b;
        if (with_b && wave_II_) b = wave_II_->at(t);
        else b.fill(std::vector<double>(n, 0.0));
        if (dec) {
            for (auto* v : {&dec->V_R1, &dec->d1, &dec->V_CD, &dec->V_S3, &dec->b1}) v->assign(n, 0.0);
        }
        FieldSlice s(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid_.at(i);
            const ProfilePoint r = rar_.eval(t, x);
            const ProfilePoint c = contact_.eval(t, x);
            const ProfilePoint k = shock_.eval(t, x);
            const double V = r.V + d[0][i] + c.V + k.V - (ms.v + mu.v);
            const double U = r.U1 + d[1][i] + c.U1 + k.U1 - (ms.u1 + mu.u1);
            const double E = (r.Theta + 0.5 * r.U1 * r.U1) + d[2][i] + (c.Theta + 0.5 * c.U1 * c.U1) +
                             (k.Theta + 0.5 * k.U1 * k.U1) - (Es + Eu);
            s.V[i] = V + b[0][i];
            s.U1[i] = U + b[1][i];
            s.U2[i] = b[2][i];
            s.U3[i] = b[3][i];
            s.E[i] = E + b[4][i];
            s.Theta[i] = s.E[i] - 0.5 * (s.U1[i] * s.U1[i] + s.U2[i] * s.U2[i] + s.U3[i] * s.U3[i]);
            if (dec) {
                dec->V_R1[i] = r.V;
                dec->d1[i] = d[0][i];
                dec->V_CD[i] = c.V;
                dec->V_S3[i] = k.V;
                dec->b1[i] = b[0][i];
            }
        }
        s.fill_derivatives(grid_.dx);
        return s;
    }

    WavePattern w_;
    double eps_;
    UniformGrid grid_;
    CompositeOptions opt_;
    double sigma_;
    RarefactionWave rar_;
    ContactWave contact_;
    ShockWave shock_;
    std::vector<double> times_;
    std::optional<HyperbolicField<3>> wave_I_;
    std::optional<HyperbolicField<5>> wave_II_;
    std::optional<ContactSourceModel> source_;
};

}

#endif
