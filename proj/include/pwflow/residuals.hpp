#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pwflow/calculus.hpp"
#include "pwflow/flow_field.hpp"
#include "pwflow/sampling.hpp"

namespace pwflow {

/// Pointwise residual of the governing system, one entry per equation block.
struct ResidualVector {
    Vec momentum;
    double continuity = 0.0;
    double buoyancy = 0.0;

    double momentum_max() const { return momentum.max_abs(); }
    double max_channel() const {
        return std::max({momentum_max(), std::abs(continuity), std::abs(buoyancy)});
    }
};

namespace detail {

inline ResidualVector ns_residual_from_jet(const FieldJet& J, const ModelParams& params,
                                           const Vec& F, bool include_advective) {
    const std::size_t n = J.grad_p.size();
    ResidualVector r;
    r.momentum = J.v.time_deriv;
    if (include_advective) r.momentum += J.v.gradient.apply(J.v.value);
    r.momentum += J.grad_p * (1.0 / params.rho0);
    r.momentum -= J.v.laplacian * params.nu;
    r.momentum -= F;
    r.continuity = J.v.gradient.trace();
    r.buoyancy = 0.0;
    (void)n;
    return r;
}

} // namespace detail

/// Residual of the incompressible Navier-Stokes (or, with nu = 0, Euler)
/// equations: momentum, continuity; the buoyancy channel is identically 0.
inline ResidualVector residual_navier_stokes(const FlowField& field, const ModelParams& params,
                                             double t, const Vec& x) {
    if (params.f != 0.0)
        throw structural_error("residual_navier_stokes: rotating flows belong to residual_boussinesq");
    return detail::ns_residual_from_jet(field.jet(t, x), params, Vec(field.dim()), true);
}

/// Residual of the forced equation: identical formula path with the forcing
/// subtracted. include_advective = false drops (v·∇)v, which is used to
/// check that the construction's nonlinear term really vanishes.
inline ResidualVector residual_forced(const FlowField& field, const ModelParams& params,
                                      const std::function<Vec(double, const Vec&)>& forcing,
                                      double t, const Vec& x, bool include_advective = true) {
    return detail::ns_residual_from_jet(field.jet(t, x), params, forcing(t, x), include_advective);
}

inline ResidualVector residual_forced(const FlowField& field, const ModelParams& params, double t,
                                      const Vec& x, bool include_advective = true) {
    return detail::ns_residual_from_jet(field.jet(t, x), params, field.forcing_at(t, x),
                                        include_advective);
}

/// Residual of the viscous rotating Boussinesq system on R^3. Fields that
/// carry their own momentum forcing (forced Kolmogorov flow) have it
/// subtracted.
inline ResidualVector residual_boussinesq(const FlowField& field, const ModelParams& params,
                                          double t, const Vec& x) {
    if (field.dim() != 3) throw structural_error("residual_boussinesq: dim must be 3");
    const FieldJet J = field.jet(t, x);
    ResidualVector r;
    r.momentum = J.v.time_deriv;
    r.momentum += J.v.gradient.apply(J.v.value);
    r.momentum += cross_e3(J.v.value) * params.f;
    r.momentum += J.grad_p;
    r.momentum[2] -= J.b.value;
    r.momentum -= J.v.laplacian * params.nu;
    if (field.has_forcing()) r.momentum -= field.forcing_at(t, x);
    r.continuity = J.v.gradient.trace();
    r.buoyancy = J.b.time_deriv + dot(J.b.gradient, J.v.value) - params.strat * J.v.value[2] -
                 params.mu * J.b.laplacian;
    return r;
}

namespace detail {

// Same residuals assembled from a caller-supplied jet, so the verification
// can be run double-blind against the finite-difference oracle.
inline ResidualVector residual_from_jet(const FlowField& field, const ModelParams& params,
                                        SystemTag system, const FieldJet& J, double t,
                                        const Vec& x) {
    switch (system) {
        case SystemTag::Euler:
        case SystemTag::NavierStokes:
            return ns_residual_from_jet(J, params, Vec(field.dim()), true);
        case SystemTag::Forced:
            return ns_residual_from_jet(J, params, field.forcing_at(t, x), true);
        case SystemTag::Boussinesq: {
            ResidualVector r;
            r.momentum = J.v.time_deriv;
            r.momentum += J.v.gradient.apply(J.v.value);
            r.momentum += cross_e3(J.v.value) * params.f;
            r.momentum += J.grad_p;
            r.momentum[2] -= J.b.value;
            r.momentum -= J.v.laplacian * params.nu;
            if (field.has_forcing()) r.momentum -= field.forcing_at(t, x);
            r.continuity = J.v.gradient.trace();
            r.buoyancy = J.b.time_deriv + dot(J.b.gradient, J.v.value) -
                         params.strat * J.v.value[2] - params.mu * J.b.laplacian;
            return r;
        }
    }
    throw structural_error("residual_from_jet: unknown system");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Sweeping verifier.
// ---------------------------------------------------------------------------

struct SamplerSpec {
    SampleBox box;
    std::size_t count = 1000;
    std::uint64_t seed = 42;

    static SamplerSpec standard(std::size_t n, std::uint64_t seed = 42, std::size_t count = 1000) {
        SamplerSpec s;
        s.box = SampleBox::standard(n);
        s.count = count;
        s.seed = seed;
        return s;
    }
};

enum class DerivativeMode { Analytic, FiniteDifference };

struct VerifyOptions {
    DerivativeMode mode = DerivativeMode::Analytic;
    double fd_step = 1e-3;
    unsigned workers = 1;
};

struct ChannelStats {
    double max_abs = 0.0;
    double rms = 0.0;
};

struct VerificationReport {
    std::size_t sample_count = 0;
    double tolerance = 0.0;
    bool pass = false;
    ChannelStats momentum, continuity, buoyancy;
    // witness of the overall worst channel value
    double witness_t = 0.0;
    Vec witness_x;
    std::string witness_channel;
    double witness_value = 0.0;
    std::string derivative_mode; // "analytic" or "fd(h)"
};

/// Evaluate the residual of `system` over a seeded random sample and reduce
/// to per-channel max/rms statistics. Samples are generated upfront from the
/// seed and workers fill disjoint slots of a preallocated buffer, so the
/// report is bit-identical for any worker count.
inline VerificationReport verify(const FlowField& field, SystemTag system, const SamplerSpec& sampler,
                                 double tolerance, const VerifyOptions& opts = {}) {
    if (sampler.count == 0) throw structural_error("verify: zero samples");
    if (tolerance <= 0.0) throw structural_error("verify: tolerance must be positive");
    if ((system == SystemTag::Boussinesq) != (field.system() == SystemTag::Boussinesq))
        throw structural_error("verify: field was not built for the requested system");

    const ModelParams& params = field.params();
    const auto pts = sample_points(sampler.box, sampler.count, sampler.seed);
    std::vector<ResidualVector> residuals(pts.size());

    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            const auto& [t, x] = pts[s];
            const FieldJet J = opts.mode == DerivativeMode::Analytic
                                   ? field.jet(t, x)
                                   : fd_jet(field, t, x, opts.fd_step);
            residuals[s] = detail::residual_from_jet(field, params, system, J, t, x);
        }
    };

    const unsigned workers = std::max(1u, opts.workers);
    if (workers == 1 || pts.size() < 2 * workers) {
        eval_range(0, pts.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (pts.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk, hi = std::min(pts.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    VerificationReport rep;
    rep.sample_count = pts.size();
    rep.tolerance = tolerance;
    rep.derivative_mode = opts.mode == DerivativeMode::Analytic
                              ? "analytic"
                              : "fd(" + std::to_string(opts.fd_step) + ")";
    double sum_m = 0.0, sum_c = 0.0, sum_b = 0.0;
    double worst = -1.0;
    // sequential reduction in sample order keeps the result deterministic
    for (std::size_t s = 0; s < pts.size(); ++s) {
        const ResidualVector& r = residuals[s];
        const double m = r.momentum_max(), c = std::abs(r.continuity), b = std::abs(r.buoyancy);
        rep.momentum.max_abs = std::max(rep.momentum.max_abs, m);
        rep.continuity.max_abs = std::max(rep.continuity.max_abs, c);
        rep.buoyancy.max_abs = std::max(rep.buoyancy.max_abs, b);
        sum_m += m * m;
        sum_c += c * c;
        sum_b += b * b;
        const double channel_worst = std::max({m, c, b});
        if (channel_worst > worst) {
            worst = channel_worst;
            rep.witness_t = pts[s].first;
            rep.witness_x = pts[s].second;
            rep.witness_value = channel_worst;
            rep.witness_channel = (channel_worst == m) ? "momentum"
                                  : (channel_worst == c) ? "continuity"
                                                         : "buoyancy";
        }
    }
    const double inv = 1.0 / static_cast<double>(pts.size());
    rep.momentum.rms = std::sqrt(sum_m * inv);
    rep.continuity.rms = std::sqrt(sum_c * inv);
    rep.buoyancy.rms = std::sqrt(sum_b * inv);
    rep.pass = rep.momentum.max_abs <= tolerance && rep.continuity.max_abs <= tolerance &&
               rep.buoyancy.max_abs <= tolerance;
    return rep;
}

// ---------------------------------------------------------------------------
// Decay-rate measurement.
// ---------------------------------------------------------------------------

/// Sup-on-grid norm of v(t, ·) - c (drift subtracted).
inline double sup_speed_on_grid(const FlowField& field, double t, const std::vector<Vec>& grid) {
    double s = 0.0;
    for (const Vec& x : grid) s = std::max(s, (field.velocity(t, x) - field.drift).max_abs());
    return s;
}

/// Exponential decay rate -log(S(t1)/S(t0))/(t1 - t0) with S the
/// sup-on-grid speed. Meaningful for single-scale fields where every mode
/// decays at the same nu lambda^2.
inline double decay_rate_estimate(const FlowField& field, double t0, double t1,
                                  const std::vector<Vec>& grid) {
    if (!(t1 > t0) || t0 < 0.0) throw structural_error("decay_rate_estimate: need t1 > t0 >= 0");
    if (grid.empty()) throw structural_error("decay_rate_estimate: empty grid");
    const double s0 = sup_speed_on_grid(field, t0, grid);
    const double s1 = sup_speed_on_grid(field, t1, grid);
    if (s0 == 0.0) throw structural_error("decay_rate_estimate: field vanishes at t0");
    return -std::log(s1 / s0) / (t1 - t0);
}

/// Uniform tensor grid over a box, endpoints included.
inline std::vector<Vec> make_grid(const Vec& lo, const Vec& hi, const std::vector<std::size_t>& pts) {
    const std::size_t n = lo.size();
    if (hi.size() != n || pts.size() != n) throw structural_error("make_grid: shape mismatch");
    std::size_t total = 1;
    for (std::size_t p : pts) {
        if (p == 0) throw structural_error("make_grid: zero points along an axis");
        total *= p;
    }
    std::vector<Vec> grid;
    grid.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t count = 0; count < total; ++count) {
        Vec x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = pts[i] == 1 ? lo[i]
                               : lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) /
                                             static_cast<double>(pts[i] - 1);
        grid.push_back(std::move(x));
        for (std::size_t i = n; i-- > 0;) {
            if (++idx[i] < pts[i]) break;
            idx[i] = 0;
        }
    }
    return grid;
}

} // namespace pwflow
