#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pwflow/flow_field.hpp"
#include "pwflow/flows.hpp"

namespace pwflow {

namespace detail {

// Horizontal drifts only: a vertical drift advects the background
// stratification and breaks the buoyancy balance unless both strat and the
// buoyancy profile vanish.
inline void check_boussinesq_drift(const Vec& c, const ModelParams& params, bool has_btilde) {
    if (c.size() != 3) throw structural_error("boussinesq drift must be a 3-vector");
    if (c[2] != 0.0 && (params.strat != 0.0 || has_btilde))
        throw invalid_spec("boussinesq flows: vertical drift requires strat = 0 and b == 0");
}

// b(t, x) = btilde(t, z) plus its pressure primitive B(t, z).
inline void attach_btilde(FlowField& f, const WaveShape& btilde, const ModelParams& params) {
    WaveTerm bz;
    bz.k = Vec{0.0, 0.0, 1.0};
    bz.omega = 0.0;
    bz.shape = btilde.with_decay(params.mu);
    f.b_waves.push_back({1.0, bz});
    if (!bz.shape.has_primitive())
        throw invalid_spec("boussinesq flows: buoyancy profile has no closed-form primitive");
    f.p_prims.push_back({1.0, bz});
}

} // namespace detail

// ---------------------------------------------------------------------------
// Horizontal plane flows: v = psi(t, k·x - w t) a + c with horizontal unit
// direction a, k = e3 × a, and decoupled buoyancy b(t, z). Pressure gathers
// the Coriolis primitive, the buoyancy primitive, and the drift term.
// ---------------------------------------------------------------------------

struct HorizontalPlaneSpec {
    std::array<double, 2> k2{1.0, 0.0};   // horizontal wave vector
    WaveShape shape = WaveShape::sine(1.0, 1.0, 0.0);
    std::optional<WaveShape> btilde;      // buoyancy profile in z; empty = 0
    Vec drift;                            // c in R^3; empty = 0
};

inline FlowField build_horizontal_plane_boussinesq(const HorizontalPlaneSpec& spec,
                                                   const ModelParams& params) {
    params.validate();
    if (params.dim != 3) throw invalid_spec("horizontal plane flow: dim must be 3");
    const double klen = std::hypot(spec.k2[0], spec.k2[1]);
    if (klen == 0.0) throw invalid_spec("horizontal plane flow: zero wave vector");

    FlowField f(3, params, FlowFamily::HorizontalPlane, SystemTag::Boussinesq);
    f.drift = detail::zero_or(spec.drift, 3, "horizontal plane drift");
    detail::check_boussinesq_drift(f.drift, params, spec.btilde.has_value());

    const Vec kbar{spec.k2[0], spec.k2[1], 0.0};
    // unit direction with k = e3 × a, i.e. a = (k2, -k1, 0)/|k|
    const Vec a{spec.k2[1] / klen, -spec.k2[0] / klen, 0.0};

    WaveTerm w;
    w.k = kbar;
    w.omega = dot(f.drift, kbar);
    w.shape = spec.shape.with_decay(params.nu * kbar.norm_sq());
    f.vel_waves.push_back({a, w});

    if (params.f != 0.0) {
        if (!w.shape.has_primitive())
            throw invalid_spec("horizontal plane flow: shape has no closed-form primitive "
                               "(required by the Coriolis pressure term)");
        f.p_prims.push_back({-params.f / klen, w});
        // Coriolis of the drift: p_c = f (c2 x - c1 y)
        f.p_linear[0] += params.f * f.drift[1];
        f.p_linear[1] += -params.f * f.drift[0];
    }
    if (spec.btilde) detail::attach_btilde(f, *spec.btilde, params);
    return f;
}

// ---------------------------------------------------------------------------
// Interacting horizontal plane flows: N equal-length horizontal wave vectors
// with flow directions k_i^perp, pairwise interaction pressure, Coriolis
// primitives, and decoupled buoyancy.
// ---------------------------------------------------------------------------

struct HorizontalWave {
    std::array<double, 2> k2{1.0, 0.0};
    double beta = 1.0;
    double delta = 0.0;
};

struct InteractingHorizontalSpec {
    std::vector<HorizontalWave> waves;
    std::optional<WaveShape> btilde;
    Vec drift;
};

inline FlowField build_interacting_horizontal_boussinesq(const InteractingHorizontalSpec& spec,
                                                         const ModelParams& params) {
    params.validate();
    if (params.dim != 3) throw invalid_spec("interacting horizontal flow: dim must be 3");
    if (spec.waves.empty()) throw invalid_spec("interacting horizontal flow: no waves");

    const double a_len = std::hypot(spec.waves.front().k2[0], spec.waves.front().k2[1]);
    if (a_len == 0.0) throw invalid_spec("interacting horizontal flow: zero wave vector");
    for (const auto& wv : spec.waves) {
        const double len = std::hypot(wv.k2[0], wv.k2[1]);
        if (std::abs(len - a_len) > 1e-9 * std::max(1.0, a_len))
            throw invalid_spec("interacting horizontal flow: wavelength mismatch, all |k_i| must be equal");
    }

    FlowField f(3, params, FlowFamily::InteractingHorizontal, SystemTag::Boussinesq);
    f.drift = detail::zero_or(spec.drift, 3, "interacting horizontal drift");
    detail::check_boussinesq_drift(f.drift, params, spec.btilde.has_value());

    const double kappa = params.nu * a_len * a_len;
    std::vector<WaveTerm> terms;
    for (const auto& wv : spec.waves) {
        WaveTerm w;
        w.k = Vec{wv.k2[0], wv.k2[1], 0.0};
        w.omega = dot(f.drift, w.k);
        w.shape = WaveShape::sine(wv.beta, 1.0, wv.delta).with_decay(kappa);
        terms.push_back(w);

        // flow direction k^perp, carrying |k|
        f.vel_waves.push_back({Vec{-wv.k2[1], wv.k2[0], 0.0}, w});
        // Coriolis balance: grad(f Psi_i) = f psi_i k_i cancels f e3 × v
        if (params.f != 0.0) f.p_prims.push_back({params.f, w});
    }
    // interaction pressure: p -= (k_i·k_j) psi_i psi_j + a^2 psi_i' psi_j'
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            f.p_prods.push_back({-dot(terms[i].k, terms[j].k), terms[i], terms[j], false});
            f.p_prods.push_back({-a_len * a_len, terms[i], terms[j], true});
        }
    if (params.f != 0.0) {
        f.p_linear[0] += params.f * f.drift[1];
        f.p_linear[1] += -params.f * f.drift[0];
    }
    if (spec.btilde) detail::attach_btilde(f, *spec.btilde, params);
    return f;
}

// ---------------------------------------------------------------------------
// Kolmogorov flow: steady single mode v = alpha cos(kx - mz) (m, 0, k) with
// coupled buoyancy. Stationary only when the stratification matches the
// returned constraint; a forcing amplitude factor beta shifts that
// constraint and can make stable stratification admissible.
// ---------------------------------------------------------------------------

struct KolmogorovResult {
    FlowField field;
    double required_strat = 0.0;
    bool stationary_compatible = false;
};

inline double kolmogorov_required_strat(double k, double m, double beta_forcing,
                                        const ModelParams& params) {
    if (k == 0.0) throw invalid_spec("kolmogorov flow: k = 0 is singular");
    const double a_sq = k * k + m * m; // squared direction norm, amplitude-independent
    return params.mu * a_sq * (params.nu * a_sq - beta_forcing) * (1.0 + m * m / (k * k));
}

inline KolmogorovResult build_kolmogorov(double k, double m, double alpha, double beta_forcing,
                                         const ModelParams& params) {
    params.validate();
    if (params.dim != 3) throw invalid_spec("kolmogorov flow: dim must be 3");
    if (params.f != 0.0) throw invalid_spec("kolmogorov flow: non-rotating case only (f = 0)");
    if (k == 0.0) throw invalid_spec("kolmogorov flow: k = 0 is singular");

    const double a_sq = k * k + m * m;
    const double required = kolmogorov_required_strat(k, m, beta_forcing, params);

    FlowField f(3, params, FlowFamily::Kolmogorov, SystemTag::Boussinesq);
    WaveTerm w;
    w.k = Vec{k, 0.0, -m};
    w.omega = 0.0;
    // steady by construction: buoyancy coupling (or forcing) compensates the
    // viscous decay, so the shape carries no heat decay.
    w.shape = WaveShape::sine(alpha, 1.0, kPi / 2.0); // alpha cos(xi)
    f.vel_waves.push_back({Vec{m, 0.0, k}, w});

    const double visc_net = params.nu * a_sq - beta_forcing;
    WaveTerm pw = w;
    pw.shape = WaveShape::sine(-alpha * visc_net * (m / k), 1.0, 0.0); // p ~ sin(xi)
    f.p_waves.push_back({1.0, pw});

    WaveTerm bw = w;
    bw.shape = WaveShape::sine(alpha * visc_net * (k + m * m / k), 1.0, kPi / 2.0); // b ~ cos(xi)
    f.b_waves.push_back({1.0, bw});

    if (beta_forcing != 0.0) {
        WaveTerm fw = w;
        fw.shape = WaveShape::sine(alpha * beta_forcing, 1.0, kPi / 2.0);
        f.forcing_waves.push_back({Vec{m, 0.0, k}, fw});
    }

    KolmogorovResult res{std::move(f), required, false};
    res.stationary_compatible =
        alpha == 0.0 || std::abs(params.strat - required) <= 1e-9 * std::max(1.0, std::abs(required));
    res.field.required_strat = required;
    res.field.stationary_compatible = res.stationary_compatible;
    return res;
}

// ---------------------------------------------------------------------------
// Monochromatic inertia-gravity waves. With phase xi = kx - mz - w t the
// dispersion relation is w^2 = (-strat k^2 + f^2 m^2)/(k^2 + m^2); viscosity
// requires nu = mu and multiplies every component by exp(-nu (k^2+m^2) t).
// ---------------------------------------------------------------------------

inline double mgw_omega_squared(double k, double m, const ModelParams& params) {
    return (-params.strat * k * k + params.f * params.f * m * m) / (k * k + m * m);
}

inline FlowField build_mgw(double k, double m, double alpha, int branch, const ModelParams& params) {
    params.validate();
    if (params.dim != 3) throw invalid_spec("mgw: dim must be 3");
    if (k == 0.0) throw invalid_spec("mgw: k = 0 is singular");
    if (branch != 1 && branch != -1) throw structural_error("mgw: branch must be +1 or -1");
    if (params.nu != params.mu)
        throw regime_error("mgw: decaying waves require nu = mu (velocity-buoyancy coupling)");

    const double omega_sq = mgw_omega_squared(k, m, params);
    if (omega_sq <= 0.0)
        throw invalid_spec("mgw: evanescent parameters, omega^2 = " + std::to_string(omega_sq) +
                           " <= 0");
    const double omega = static_cast<double>(branch) * std::sqrt(omega_sq);
    const double ksq = k * k + m * m;
    const double kappa = params.nu * ksq; // e^{-nu (k^2+m^2) t} on every component

    FlowField f(3, params, FlowFamily::MGW, SystemTag::Boussinesq);

    WaveTerm base;
    base.k = Vec{k, 0.0, -m};
    base.omega = omega;

    WaveTerm wc = base; // cos component along (m, 0, k)
    wc.shape = WaveShape::sine(alpha, 1.0, kPi / 2.0).with_decay(kappa);
    f.vel_waves.push_back({Vec{m, 0.0, k}, wc});

    if (params.f != 0.0) {
        WaveTerm ws = base; // sin component along e2
        ws.shape = WaveShape::sine(alpha * m * params.f / omega, 1.0, 0.0).with_decay(kappa);
        f.vel_waves.push_back({Vec{0.0, 1.0, 0.0}, ws});
    }

    WaveTerm pw = base;
    pw.shape = WaveShape::sine(alpha * m * (omega_sq - params.f * params.f) / (k * omega), 1.0,
                               kPi / 2.0)
                   .with_decay(kappa);
    f.p_waves.push_back({1.0, pw});

    WaveTerm bw = base;
    bw.shape = WaveShape::sine(-alpha * (k / omega) * params.strat, 1.0, 0.0).with_decay(kappa);
    f.b_waves.push_back({1.0, bw});
    return f;
}

// ---------------------------------------------------------------------------
// Parallel flow v = w(t, x, y) e3 with coupled buoyancy: per horizontal
// Fourier mode the pair (w_hat, b_hat) evolves by the closed-form matrix
// exponential of A = [[-nu kappa^2, 1], [strat, -mu kappa^2]]. The constant
// steady state b = p0, w = 0 is carried via p = p0 z.
// ---------------------------------------------------------------------------

inline FlowField build_parallel_boussinesq(const std::vector<ParallelMode>& modes, double p0,
                                           const ModelParams& params) {
    params.validate();
    if (params.dim != 3) throw invalid_spec("parallel flow: dim must be 3");

    FlowField f(3, params, FlowFamily::ParallelBoussinesq, SystemTag::Boussinesq);
    f.parallel_modes = modes;
    f.b_const = p0;
    f.p_linear[2] = p0;
    return f;
}

} // namespace pwflow
