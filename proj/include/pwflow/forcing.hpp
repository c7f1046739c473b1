#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwflow/flows.hpp"
#include "pwflow/residuals.hpp"

namespace pwflow {

// ---------------------------------------------------------------------------
// Forcing of plane-wave form for L = nu Laplace. Each mode is a
// time-independent sinusoid F_mode(x) = beta sin(sigma k·x + delta) a with
// a·k = 0; the Duhamel integral then has the closed per-mode form
// (1 - e^{-nu q t})/(nu q) with q = sigma^2 |k|^2.
// ---------------------------------------------------------------------------

struct ForcingMode {
    Vec a, k;
    WaveShape shape = WaveShape::sine(1.0, 1.0, 0.0); // sinusoidal, time-independent
};

struct DensityNode {
    double sigma = 1.0;  // xi-frequency along k_F
    double alpha = 0.0;  // density value
    double weight = 1.0; // quadrature weight
};

class ForcingSpec {
public:
    static ForcingSpec plane_wave_sum(std::vector<ForcingMode> modes) {
        ForcingSpec f;
        for (auto& m : modes) {
            if (!m.shape.is_sinusoidal())
                throw invalid_spec("ForcingSpec: forcing shapes must be sinusoidal "
                                   "(closed-form Duhamel integral)");
            validate_mode(m);
        }
        f.modes_ = std::move(modes);
        return f;
    }

    /// Discrete density over xi-frequencies along a single unit wave vector:
    /// F(x) = sum_q w_q alpha_q sin(sigma_q k_F·x) a_F.
    static ForcingSpec density_integral(const Vec& a_F, const Vec& k_F,
                                        const std::vector<DensityNode>& table) {
        if (std::abs(k_F.norm() - 1.0) > 1e-12)
            throw invalid_spec("ForcingSpec: density integral requires |k_F| = 1");
        if (std::abs(dot(a_F, k_F)) > kOrthTol * a_F.norm())
            throw invalid_spec("ForcingSpec: a_F must be orthogonal to k_F");
        if (table.empty()) throw invalid_spec("ForcingSpec: empty density table");
        ForcingSpec f;
        for (const DensityNode& nd : table) {
            if (nd.sigma <= 0.0)
                throw invalid_spec("ForcingSpec: density nodes need sigma > 0 (zero mode is not "
                                   "in the range of the Laplacian)");
            ForcingMode m;
            m.a = a_F;
            m.k = k_F;
            m.shape = WaveShape::sine(nd.weight * nd.alpha, nd.sigma, 0.0);
            validate_mode(m);
            f.modes_.push_back(std::move(m));
            // discrete analogue of the integrability bound
            f.integrability_ += (nd.sigma <= 1.0 ? 1.0 : nd.sigma * nd.sigma) *
                                std::abs(nd.alpha) * nd.weight;
        }
        return f;
    }

    const std::vector<ForcingMode>& modes() const { return modes_; }

    /// Discrete integrability bound of the density table; always finite for
    /// finite tables, reported for diagnostics.
    double integrability_bound() const { return integrability_; }

private:
    static void validate_mode(const ForcingMode& m) {
        if (m.a.size() != m.k.size()) throw structural_error("ForcingSpec: mode dimension mismatch");
        if (m.a.norm() == 0.0 || m.k.norm() == 0.0)
            throw invalid_spec("ForcingSpec: zero direction or wave vector");
        if (std::abs(dot(m.a, m.k)) > kOrthTol * m.a.norm() * m.k.norm())
            throw invalid_spec("ForcingSpec: forcing direction must be orthogonal to its wave vector");
    }

    std::vector<ForcingMode> modes_;
    double integrability_ = 0.0;
};

/// Explicit solution of the forced equation by variation of constants:
/// combined = e^{Lt} v0 + integral_0^t e^{L(t-s)} F ds, with the particular
/// part exact per mode. At t = 0 the combined field equals v0 exactly.
struct ForcedSolution {
    FlowField combined;
    FlowField homogeneous;
    FlowField particular;
    std::optional<FlowField> steady; // L^{-1} F when nu > 0
    bool unbounded_growth = false;   // nu = 0: particular part grows linearly in t
};

namespace detail {

// joint transverse constraint: every flow direction orthogonal to every wave
// vector, across the initial condition and the forcing together
inline void check_joint_orthogonality(const TransverseSpec& v0, const ForcingSpec& F) {
    std::vector<Vec> dirs, ks;
    for (const auto& g : v0.groups) {
        dirs.push_back(g.direction);
        for (const auto& [k, shape] : g.waves) ks.push_back(k);
    }
    for (const auto& m : F.modes()) {
        dirs.push_back(m.a);
        ks.push_back(m.k);
    }
    for (const Vec& a : dirs)
        for (const Vec& k : ks)
            if (std::abs(dot(a, k)) > kOrthTol * a.norm() * k.norm())
                throw invalid_spec("forced solution: initial condition and forcing jointly violate "
                                   "the orthogonality constraints");
}

} // namespace detail

/// Steady state v_s = L^{-1} F for L = nu Laplace: per sinusoidal mode the
/// amplitude is divided by nu q, q = sigma^2 |k|^2.
inline FlowField steady_state_from_forcing(const ForcingSpec& F, const ModelParams& params) {
    params.validate();
    if (params.nu <= 0.0)
        throw invalid_spec("steady_state_from_forcing: no steady state in the inviscid limit");
    if (!F.modes().empty() && F.modes().front().a.size() != static_cast<std::size_t>(params.dim))
        throw structural_error("steady_state_from_forcing: dimension mismatch");

    // F == 0 has the zero field as its preimage
    FlowField f(params.dim, params, FlowFamily::Forced, SystemTag::Forced);
    for (const ForcingMode& m : F.modes()) {
        const double ksq = m.k.norm_sq();
        VelocityWave vs;
        vs.a = m.a;
        vs.w.k = m.k;
        std::vector<SineTerm> scaled;
        for (const SineTerm& s : m.shape.sine_terms()) {
            const double q = s.sigma * s.sigma * ksq;
            if (q <= 0.0)
                throw invalid_spec("steady_state_from_forcing: zero mode is not in the range of L");
            scaled.push_back({s.beta / (params.nu * q), s.sigma, s.delta});
        }
        vs.w.shape = WaveShape::fourier(std::move(scaled)); // steady: no decay
        f.vel_waves.push_back(std::move(vs));

        VelocityWave fw{m.a, WaveTerm{m.k, 0.0, m.shape, std::nullopt}};
        f.forcing_waves.push_back(std::move(fw));
    }
    f.label = "steady_state";
    return f;
}

/// Build the forced solution for initial condition v0 (a transverse spec
/// with zero drift) and forcing F under L = nu Laplace.
inline ForcedSolution build_forced_solution(const TransverseSpec& v0, const ForcingSpec& F,
                                            const ModelParams& params) {
    params.validate();
    if (v0.drift.size() != 0 && v0.drift.norm() != 0.0)
        throw invalid_spec("build_forced_solution: forced specs require c = 0");
    detail::check_joint_orthogonality(v0, F);

    // homogeneous part: plain transverse flow (heat decay of v0's modes)
    FlowField hom = v0.groups.empty()
                        ? FlowField(params.dim, params, FlowFamily::Forced, SystemTag::Forced)
                        : build_transverse(v0, params);
    hom.set_family(FlowFamily::Forced);
    hom.set_system(SystemTag::Forced);
    hom.label = "homogeneous";

    // particular part: Duhamel envelope per forcing mode
    FlowField part(params.dim, params, FlowFamily::Forced, SystemTag::Forced);
    part.label = "particular";
    bool growth = false;
    for (const ForcingMode& m : F.modes()) {
        if (m.a.size() != static_cast<std::size_t>(params.dim))
            throw structural_error("build_forced_solution: forcing dimension mismatch");
        const double ksq = m.k.norm_sq();
        for (const SineTerm& s : m.shape.sine_terms()) {
            const double rate = params.nu * s.sigma * s.sigma * ksq;
            if (rate == 0.0) growth = true;
            VelocityWave vw;
            vw.a = m.a;
            vw.w.k = m.k;
            vw.w.shape = WaveShape::sine(s.beta, s.sigma, s.delta); // time-independent factor
            vw.w.duhamel_rate = rate;
            part.vel_waves.push_back(std::move(vw));
        }
    }

    // combined field carries the forcing for residual_forced
    FlowField combined = hom;
    combined.vel_waves.insert(combined.vel_waves.end(), part.vel_waves.begin(),
                              part.vel_waves.end());
    for (const ForcingMode& m : F.modes())
        combined.forcing_waves.push_back({m.a, WaveTerm{m.k, 0.0, m.shape, std::nullopt}});
    combined.unbounded_growth = growth;
    combined.label = "forced_solution";

    ForcedSolution sol{std::move(combined), std::move(hom), std::move(part), std::nullopt, growth};
    if (params.nu > 0.0) sol.steady = steady_state_from_forcing(F, params);
    return sol;
}

// ---------------------------------------------------------------------------
// Forced interacting transverse flows: forcing and initial condition both of
// the equal-wavelength form inside the same subspaces. The pair potential h
// is rebuilt over the union of homogeneous and particular components (its
// gradient identity holds for arbitrary per-component amplitudes), so the
// nonlinear term stays absorbed while the linear dynamics is Duhamel.
// ---------------------------------------------------------------------------

namespace detail {

struct CanonicalComponent {
    Vec k, a;        // a = in-plane 90° rotation of k, |a| = |k| = lambda
    double lambda = 1.0;
    WaveShape shape; // unit-sigma sine, kappa set for decaying parts
    std::optional<double> ramp;
    std::size_t subspace = 0;
};

// velocity terms plus the full within-subspace pair-interaction pressure
inline void emit_interacting_terms(FlowField& f, const std::vector<CanonicalComponent>& comps,
                                   double rho0) {
    std::vector<WaveTerm> terms;
    for (const CanonicalComponent& c : comps) {
        WaveTerm w;
        w.k = c.k;
        w.omega = 0.0; // forced specs have c = 0
        w.shape = c.shape;
        w.duhamel_rate = c.ramp;
        terms.push_back(w);
        f.vel_waves.push_back({c.a, w});
    }
    for (std::size_t j = 0; j < comps.size(); ++j)
        for (std::size_t l = j + 1; l < comps.size(); ++l) {
            if (comps[j].subspace != comps[l].subspace) continue;
            const double lam = comps[j].lambda;
            f.p_prods.push_back({-rho0 * dot(terms[j].k, terms[l].k), terms[j], terms[l], false});
            f.p_prods.push_back({-rho0 * lam * lam, terms[j], terms[l], true});
        }
}

// locate the forcing mode inside one of the resolved subspaces and return
// its canonical amplitude relative to a = rot90(K)
struct LocatedMode {
    std::size_t subspace;
    Vec K, a_canonical;
    double amplitude, delta;
};

inline LocatedMode locate_interacting_mode(const ForcingMode& m,
                                           const std::vector<ResolvedSubspace>& subs) {
    if (!m.shape.is_sinusoidal() || m.shape.sine_terms().size() != 1)
        throw invalid_spec("forced interacting flow: forcing modes must be single sinusoids");
    const SineTerm s = m.shape.sine_terms().front();
    const Vec K = m.k * s.sigma; // effective wave vector
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto& sub = subs[i];
        const double p1 = dot(K, sub.e1), p2 = dot(K, sub.e2);
        const Vec in_plane = sub.e1 * p1 + sub.e2 * p2;
        if ((K - in_plane).norm() > 1e-9 * std::max(1.0, K.norm())) continue;
        if (std::abs(K.norm() - sub.lambda) > 1e-9 * std::max(1.0, sub.lambda))
            throw invalid_spec("forced interacting flow: wavelength mismatch, |sigma k_F| != lambda");
        const Vec a_can = sub.e1 * (-p2) + sub.e2 * p1; // rot90(K), norm lambda
        const double mu = dot(m.a, a_can) / a_can.norm_sq();
        if ((m.a - a_can * mu).norm() > 1e-9 * std::max(1.0, m.a.norm()))
            throw invalid_spec("forced interacting flow: forcing direction not the in-plane "
                               "rotation of its wave vector");
        return {i, K, a_can, mu * s.beta, s.delta};
    }
    throw invalid_spec("forced interacting flow: forcing wave vector lies in no subspace");
}

} // namespace detail

/// Forced solution in the interacting transverse form: v0 an equal-wavelength
/// spec (zero drift), each forcing mode a sinusoid whose effective wave
/// vector lies in one of v0's subspaces with the matching wavelength.
inline ForcedSolution build_forced_solution(const InteractingSpec& v0, const ForcingSpec& F,
                                            const ModelParams& params) {
    params.validate();
    if (v0.drift.size() != 0 && v0.drift.norm() != 0.0)
        throw invalid_spec("build_forced_solution: forced specs require c = 0");
    const auto subs = detail::resolve_interacting(v0, params);

    std::vector<detail::CanonicalComponent> hom_comps, part_comps, steady_comps;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const double lam = subs[i].lambda;
        const double kappa = params.nu * lam * lam;
        for (const auto& c : subs[i].comps)
            hom_comps.push_back({c.k, c.a, lam, WaveShape::sine(c.beta, 1.0, c.delta).with_decay(kappa),
                                 std::nullopt, i});
    }
    bool growth = false;
    for (const ForcingMode& m : F.modes()) {
        const auto loc = detail::locate_interacting_mode(m, subs);
        const double lam = subs[loc.subspace].lambda;
        const double rate = params.nu * lam * lam;
        if (rate == 0.0) growth = true;
        part_comps.push_back({loc.K, loc.a_canonical, lam,
                              WaveShape::sine(loc.amplitude, 1.0, loc.delta), rate, loc.subspace});
        if (params.nu > 0.0)
            steady_comps.push_back({loc.K, loc.a_canonical, lam,
                                    WaveShape::sine(loc.amplitude / (params.nu * lam * lam), 1.0,
                                                    loc.delta),
                                    std::nullopt, loc.subspace});
    }

    auto fresh = [&] {
        return FlowField(params.dim, params, FlowFamily::Forced, SystemTag::Forced);
    };

    FlowField hom = fresh();
    detail::emit_interacting_terms(hom, hom_comps, params.rho0);
    hom.label = "homogeneous";

    FlowField part = fresh();
    detail::emit_interacting_terms(part, part_comps, params.rho0);
    part.label = "particular";

    FlowField combined = fresh();
    std::vector<detail::CanonicalComponent> all = hom_comps;
    all.insert(all.end(), part_comps.begin(), part_comps.end());
    detail::emit_interacting_terms(combined, all, params.rho0);
    for (const ForcingMode& m : F.modes())
        combined.forcing_waves.push_back({m.a, WaveTerm{m.k, 0.0, m.shape, std::nullopt}});
    combined.unbounded_growth = growth;
    combined.label = "forced_interacting";

    ForcedSolution sol{std::move(combined), std::move(hom), std::move(part), std::nullopt, growth};
    if (params.nu > 0.0) {
        FlowField vs = fresh();
        detail::emit_interacting_terms(vs, steady_comps, params.rho0);
        for (const ForcingMode& m : F.modes())
            vs.forcing_waves.push_back({m.a, WaveTerm{m.k, 0.0, m.shape, std::nullopt}});
        vs.label = "steady_state";
        sol.steady = std::move(vs);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Asymptotic stability of the steady state within the constrained subspace.
// ---------------------------------------------------------------------------

struct StabilityReport {
    bool monotone = true;
    bool envelope_ok = true;
    double kappa_min_sq = 0.0;    // slowest decay rate is nu kappa_min^2
    double amplitude_bound = 0.0; // ||v0 - v_s|| in the modal amplitude norm
    struct Row {
        double t = 0.0;
        double deviation = 0.0;
        double envelope = 0.0;
    };
    std::vector<Row> rows;
    bool pass() const { return monotone && envelope_ok; }
};

/// Verify that ||v(t) - v_s|| (sup on the grid) decreases monotonically and
/// stays under the slowest-mode envelope e^{-nu kappa_min^2 (t-t0)} A (1+eps),
/// where A bounds ||v0 - v_s|| by the sum of the deviation-mode amplitudes.
/// The bound is the triangle inequality over modes; the grid sup itself can
/// sit below A at t0 through cancellations that die out later, so A rather
/// than the initial sup anchors the envelope.
inline StabilityReport asymptotic_stability_check(const ForcingSpec& F, const TransverseSpec& v0,
                                                  const ModelParams& params,
                                                  const std::vector<double>& t_grid,
                                                  const std::vector<Vec>& grid) {
    if (params.nu <= 0.0) throw invalid_spec("asymptotic_stability_check: requires nu > 0");
    if (t_grid.size() < 2) throw structural_error("asymptotic_stability_check: need >= 2 times");
    if (grid.empty()) throw structural_error("asymptotic_stability_check: empty grid");
    const ForcedSolution sol = build_forced_solution(v0, F, params);
    const FlowField& vs = *sol.steady;
    const double t0 = t_grid.front();

    // deviation modes: v0's modes and the steady modes, all decaying at nu q
    double qmin = std::numeric_limits<double>::infinity();
    double amplitude = 0.0;
    auto scan = [&](const std::vector<VelocityWave>& waves) {
        for (const VelocityWave& vw : waves) {
            const double ksq = vw.w.k.norm_sq();
            for (const SineTerm& s : vw.w.shape.sine_terms()) {
                const double q = s.sigma * s.sigma * ksq;
                qmin = std::min(qmin, q);
                amplitude += std::abs(s.beta) * vw.a.max_abs() * std::exp(-params.nu * q * t0);
            }
        }
    };
    scan(sol.homogeneous.vel_waves);
    scan(vs.vel_waves);
    if (!std::isfinite(qmin)) qmin = 0.0; // v0 = v_s = 0: nothing decays

    StabilityReport rep;
    rep.kappa_min_sq = qmin;
    rep.amplitude_bound = amplitude;
    const double eps = 1e-10;

    auto deviation = [&](double t) {
        double worst = 0.0;
        for (const Vec& x : grid)
            worst = std::max(worst, (sol.combined.velocity(t, x) - vs.velocity(t, x)).max_abs());
        return worst;
    };

    double prev = -1.0;
    for (double t : t_grid) {
        const double dev = deviation(t);
        const double env = std::exp(-params.nu * qmin * (t - t0)) * amplitude * (1.0 + eps);
        rep.rows.push_back({t, dev, env});
        if (prev >= 0.0 && dev > prev * (1.0 + 1e-12)) rep.monotone = false;
        if (dev > env) rep.envelope_ok = false;
        prev = dev;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Pressure-absorbing forcing decomposition (tilted forcing directions).
// ---------------------------------------------------------------------------

struct PressureDecomposition {
    ForcingMode effective;       // F = psi(k_F·x) a_F
    PrimitiveWave pressure_term; // p_tilde = delta Psi(k_F·x)
};

/// Split a forcing with direction a_delta = a_F + delta k_F into the
/// orthogonal part and a plane-wave pressure: F_tilde - grad(p_tilde) = F.
inline PressureDecomposition decompose_pressure_forcing(const WaveShape& psi, double delta,
                                                        const Vec& k_F, const Vec& a_F) {
    if (std::abs(dot(a_F, k_F)) > kOrthTol * std::max(1.0, a_F.norm() * k_F.norm()))
        throw invalid_spec("decompose_pressure_forcing: a_F must be orthogonal to k_F");
    if (!psi.has_primitive())
        throw invalid_spec("decompose_pressure_forcing: shape needs a closed-form primitive");
    PressureDecomposition d;
    d.effective = ForcingMode{a_F, k_F, psi};
    d.pressure_term = PrimitiveWave{delta, WaveTerm{k_F, 0.0, psi, std::nullopt}};
    return d;
}

} // namespace pwflow
