#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pwflow/calculus.hpp"
#include "pwflow/flow_field.hpp"
#include "pwflow/sampling.hpp"

namespace pwflow {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Transverse flows: v = sum_i a_i sum_j psi_ij(t, k_ij·x - w_ij t) + c with
// every flow direction orthogonal to every wave vector. The advective term
// reduces to the drift part and is absorbed by w_ij = c·k_ij, so p is
// spatially constant (gauge: p identically 0).
// ---------------------------------------------------------------------------

struct TransverseGroup {
    Vec direction;                                  // a_i
    std::vector<std::pair<Vec, WaveShape>> waves;   // (k_ij, shape_ij)
};

struct TransverseSpec {
    int dim = 3;
    Vec drift;                       // c; empty means zero
    std::vector<TransverseGroup> groups;
    bool reproject = false;          // re-project near-orthogonal wave vectors
};

struct ValidationResult {
    struct Violation {
        std::string what;
        int group_a = -1, group_b = -1, wave = -1;
        double value = 0.0;
    };
    bool pass = true;
    std::vector<Violation> violations;

    void add(std::string what, int ga, int gb, int wave, double value) {
        pass = false;
        violations.push_back({std::move(what), ga, gb, wave, value});
    }
};

namespace detail {

inline Vec zero_or(const Vec& v, std::size_t n, const char* what) {
    if (v.size() == 0) return Vec(n);
    if (v.size() != n) throw structural_error(std::string(what) + ": wrong dimension");
    return v;
}

// Numeric spot check of the heat property d_t = kappa d_xi2 after kappa
// assignment. Profiles with kappa > 0 are rejected earlier by with_decay.
inline bool satisfies_heat_equation(const WaveShape& shape, double kappa) {
    WaveShape s = shape.with_decay(kappa);
    SplitMix64 rng(7);
    for (int i = 0; i < 8; ++i) {
        const double t = rng.uniform(0.0, 2.0), xi = rng.uniform(-6.0, 6.0);
        const ShapeEval e = s.eval(t, xi);
        if (std::abs(e.d_t - kappa * e.d_xi2) > 1e-12 * (1.0 + std::abs(e.d_xi2))) return false;
    }
    return true;
}

} // namespace detail

inline ValidationResult validate_transverse(const TransverseSpec& spec, const ModelParams& params) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(spec.dim);
    if (spec.dim != params.dim) throw structural_error("validate_transverse: spec/params dim mismatch");
    if (spec.groups.empty()) throw structural_error("validate_transverse: no flow directions");
    if (spec.groups.size() >= n)
        throw structural_error("validate_transverse: need N < n flow directions");
    for (const auto& g : spec.groups) {
        if (g.direction.size() != n) throw structural_error("validate_transverse: direction dimension");
        if (g.direction.norm() == 0.0) throw structural_error("validate_transverse: zero direction");
        for (const auto& [k, shape] : g.waves) {
            if (k.size() != n) throw structural_error("validate_transverse: wave vector dimension");
            if (k.norm() == 0.0) throw structural_error("validate_transverse: zero wave vector");
            (void)shape;
        }
    }

    ValidationResult res;
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
        const Vec& a = spec.groups[i].direction;
        for (std::size_t j = 0; j < spec.groups.size(); ++j) {
            for (std::size_t l = 0; l < spec.groups[j].waves.size(); ++l) {
                const Vec& k = spec.groups[j].waves[l].first;
                const double d = std::abs(dot(a, k));
                if (d > kOrthTol * a.norm() * k.norm())
                    res.add("a·k != 0", static_cast<int>(i), static_cast<int>(j),
                            static_cast<int>(l), d);
            }
        }
    }
    for (std::size_t j = 0; j < spec.groups.size(); ++j)
        for (std::size_t l = 0; l < spec.groups[j].waves.size(); ++l) {
            const auto& [k, shape] = spec.groups[j].waves[l];
            const double kappa = params.nu * k.norm_sq();
            if (shape.is_profile() && kappa > 0.0) {
                res.add("profile shape in viscous regime", -1, static_cast<int>(j),
                        static_cast<int>(l), kappa);
                continue;
            }
            if (!detail::satisfies_heat_equation(shape, kappa))
                res.add("shape fails heat equation", -1, static_cast<int>(j),
                        static_cast<int>(l), kappa);
        }
    return res;
}

inline FlowField build_transverse(const TransverseSpec& spec_in, const ModelParams& params) {
    TransverseSpec spec = spec_in;
    const std::size_t n = static_cast<std::size_t>(spec.dim);

    if (spec.reproject) {
        // project each wave vector onto the complement of all flow directions
        std::vector<Vec> ortho;
        for (const auto& g : spec.groups) {
            Vec d = g.direction * (1.0 / g.direction.norm());
            for (const Vec& b : ortho) d -= b * dot(b, d);
            const double r = d.norm();
            if (r > 1e-10) ortho.push_back(d * (1.0 / r));
        }
        for (auto& g : spec.groups)
            for (auto& [k, shape] : g.waves) {
                for (const Vec& b : ortho) k -= b * dot(b, k);
                if (k.norm() == 0.0)
                    throw invalid_spec("build_transverse: wave vector vanished under re-projection");
            }
    }

    const ValidationResult val = validate_transverse(spec, params);
    if (!val.pass) {
        std::ostringstream os;
        os << "build_transverse: constraint violations:";
        for (const auto& v : val.violations)
            os << " [" << v.what << " groups(" << v.group_a << "," << v.group_b << ") wave "
               << v.wave << " value " << v.value << "]";
        throw invalid_spec(os.str());
    }

    FlowField f(spec.dim, params, FlowFamily::Transverse,
                params.nu == 0.0 ? SystemTag::Euler : SystemTag::NavierStokes);
    f.drift = detail::zero_or(spec.drift, n, "build_transverse drift");
    for (const auto& g : spec.groups)
        for (const auto& [k, shape] : g.waves) {
            VelocityWave vw;
            vw.a = g.direction;
            vw.w.k = k;
            vw.w.omega = dot(f.drift, k);
            vw.w.shape = shape.with_decay(params.nu * k.norm_sq());
            f.vel_waves.push_back(std::move(vw));
        }
    return f;
}

// ---------------------------------------------------------------------------
// Interacting transverse flows: equal-wavelength sinusoids inside mutually
// orthogonal 2D subspaces. The advective term is (c·∇)v + ∇h with the pair
// potential h; the pressure is p = -rho0 h.
// ---------------------------------------------------------------------------

struct InteractingComponent {
    // k = lambda (cos(phi) e1 + sin(phi) e2); supply either phi directly or
    // an explicit k in the subspace.
    std::optional<double> phi;
    std::optional<Vec> k;
    double beta = 1.0;
    double delta = 0.0;
};

struct InteractingSubspace {
    Vec e1, e2;       // spanning pair; orthonormalized by the builder
    double lambda = 1.0;
    std::vector<InteractingComponent> comps;
};

struct InteractingSpec {
    int dim = 2;
    Vec drift;
    std::vector<InteractingSubspace> subspaces;
};

namespace detail {

struct ResolvedComponent {
    Vec k, a;           // |k| = |a| = lambda, a = in-plane 90° rotation of k
    double phi, beta, delta, omega;
};

struct ResolvedSubspace {
    Vec e1, e2;
    double lambda;
    std::vector<ResolvedComponent> comps;
};

inline std::vector<ResolvedSubspace> resolve_interacting(const InteractingSpec& spec,
                                                         const ModelParams& params) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(spec.dim);
    if (spec.dim != params.dim)
        throw structural_error("interacting transverse: spec/params dim mismatch");
    const std::size_t N = spec.subspaces.size();
    if (N < 1) throw invalid_spec("interacting transverse: need at least one subspace");
    if (2 * N > n)
        throw invalid_spec("interacting transverse: need N <= n/2 mutually orthogonal planes");

    std::vector<ResolvedSubspace> out;
    for (const auto& sub : spec.subspaces) {
        if (sub.e1.size() != n || sub.e2.size() != n)
            throw structural_error("interacting transverse: basis vector dimension");
        if (sub.lambda <= 0.0) throw invalid_spec("interacting transverse: lambda must be > 0");
        Vec e1 = sub.e1;
        const double r1 = e1.norm();
        if (r1 == 0.0) throw invalid_spec("interacting transverse: zero basis vector");
        e1 *= 1.0 / r1;
        Vec e2 = sub.e2 - e1 * dot(e1, sub.e2);
        const double r2 = e2.norm();
        // reject near-degenerate spanning pairs (condition above 1e8)
        if (r2 < 1e-8 * std::max(1.0, sub.e2.norm()))
            throw invalid_spec("interacting transverse: degenerate subspace spanning pair");
        e2 *= 1.0 / r2;

        ResolvedSubspace rs{e1, e2, sub.lambda, {}};
        for (const auto& c : sub.comps) {
            ResolvedComponent rc;
            rc.beta = c.beta;
            rc.delta = c.delta;
            if (c.phi) {
                rc.phi = *c.phi;
            } else if (c.k) {
                if (c.k->size() != n)
                    throw structural_error("interacting transverse: component k dimension");
                const double p1 = dot(*c.k, e1), p2 = dot(*c.k, e2);
                const Vec in_plane = e1 * p1 + e2 * p2;
                if ((*c.k - in_plane).norm() > 1e-9 * std::max(1.0, c.k->norm()))
                    throw invalid_spec("interacting transverse: wave vector not inside its subspace");
                const double len = std::sqrt(p1 * p1 + p2 * p2);
                if (std::abs(len - sub.lambda) > 1e-9 * std::max(1.0, sub.lambda))
                    throw invalid_spec("interacting transverse: wavelength mismatch, |k| != lambda");
                rc.phi = std::atan2(p2, p1);
            } else {
                throw structural_error("interacting transverse: component needs phi or k");
            }
            rc.k = e1 * (sub.lambda * std::cos(rc.phi)) + e2 * (sub.lambda * std::sin(rc.phi));
            rc.a = e1 * (-sub.lambda * std::sin(rc.phi)) + e2 * (sub.lambda * std::cos(rc.phi));
            rs.comps.push_back(std::move(rc));
        }
        out.push_back(std::move(rs));
    }

    // mutual orthogonality of the subspaces
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const double m =
                std::max(std::max(std::abs(dot(out[i].e1, out[j].e1)), std::abs(dot(out[i].e1, out[j].e2))),
                         std::max(std::abs(dot(out[i].e2, out[j].e1)), std::abs(dot(out[i].e2, out[j].e2))));
            if (m > 1e-10)
                throw invalid_spec("interacting transverse: subspaces " + std::to_string(i) + " and " +
                                   std::to_string(j) + " are not orthogonal");
        }
    return out;
}

} // namespace detail

inline FlowField build_interacting_transverse(const InteractingSpec& spec, const ModelParams& params) {
    const std::size_t n = static_cast<std::size_t>(spec.dim);
    const auto resolved = detail::resolve_interacting(spec, params);

    FlowField f(spec.dim, params, FlowFamily::InteractingTransverse,
                params.nu == 0.0 ? SystemTag::Euler : SystemTag::NavierStokes);
    f.drift = detail::zero_or(spec.drift, n, "interacting transverse drift");

    InteractingMeta meta;
    meta.drift = f.drift;

    for (const auto& sub : resolved) {
        const double kappa = params.nu * sub.lambda * sub.lambda;
        std::vector<WaveTerm> terms;
        for (const auto& c : sub.comps) {
            WaveTerm w;
            w.k = c.k;
            w.omega = dot(f.drift, c.k);
            w.shape = WaveShape::sine(c.beta, 1.0, c.delta).with_decay(kappa);
            terms.push_back(w);

            VelocityWave vw;
            vw.a = c.a;
            vw.w = terms.back();
            f.vel_waves.push_back(std::move(vw));
        }
        // pairwise interaction potential, within this subspace only:
        // h = sum_{j<l} (k_j·k_l) psi_j psi_l + lambda^2 psi_j' psi_l'
        for (std::size_t j = 0; j < terms.size(); ++j)
            for (std::size_t l = j + 1; l < terms.size(); ++l) {
                f.p_prods.push_back({-params.rho0 * dot(terms[j].k, terms[l].k), terms[j], terms[l], false});
                f.p_prods.push_back({-params.rho0 * sub.lambda * sub.lambda, terms[j], terms[l], true});
            }

        InteractingMeta::Subspace ms;
        ms.e1 = sub.e1;
        ms.e2 = sub.e2;
        ms.lambda = sub.lambda;
        for (const auto& c : sub.comps) ms.comps.push_back({c.phi, c.beta, c.delta});
        meta.subspaces.push_back(std::move(ms));
    }
    f.interacting = std::move(meta);
    return f;
}

/// Superpose interacting transverse flows with parallel-flow components: each
/// sine component gains a cosine partner gamma * beta_ij cos(xi + delta_ij)
/// in a fixed direction orthogonal to every subspace. The added nonlinear
/// terms cancel pairwise, so the pressure is unchanged.
inline FlowField add_parallel_component(const FlowField& field, double gamma,
                                        std::optional<Vec> direction = std::nullopt) {
    if (!field.interacting)
        throw structural_error("add_parallel_component: field is not an interacting transverse flow");
    if (gamma == 0.0) return field;

    const InteractingMeta& meta = *field.interacting;
    const std::size_t n = field.dim();
    if (n < 3)
        throw structural_error("add_parallel_component: needs a direction outside the subspaces (n >= 3)");

    std::vector<Vec> span;
    for (const auto& s : meta.subspaces) {
        span.push_back(s.e1);
        span.push_back(s.e2);
    }
    Vec d(n);
    if (direction) {
        d = *direction;
        const double r = d.norm();
        if (r == 0.0) throw structural_error("add_parallel_component: zero direction");
        d *= 1.0 / r;
        for (const Vec& b : span)
            if (std::abs(dot(d, b)) > 1e-10)
                throw structural_error(
                    "add_parallel_component: direction must be orthogonal to every subspace");
    } else {
        const auto complement = orthonormal_complement_basis(span);
        if (complement.empty())
            throw structural_error("add_parallel_component: subspaces span the whole space");
        d = complement.front();
    }

    FlowField out = field;
    out.set_family(FlowFamily::ParallelAugmented);
    for (const auto& sub : meta.subspaces) {
        const double kappa = out.params().nu * sub.lambda * sub.lambda;
        for (const auto& c : sub.comps) {
            const Vec k = sub.e1 * (sub.lambda * std::cos(c.phi)) + sub.e2 * (sub.lambda * std::sin(c.phi));
            VelocityWave vw;
            vw.a = d;
            vw.w.k = k;
            vw.w.omega = dot(meta.drift, k);
            // cosine partner: same phase shifted by pi/2
            vw.w.shape = WaveShape::sine(gamma * c.beta, 1.0, c.delta + kPi / 2.0).with_decay(kappa);
            out.vel_waves.push_back(std::move(vw));
        }
    }
    return out;
}

/// Integral superposition over equal-length wave vectors of each subspace,
/// discretized with a Q-node periodic trapezoidal rule. The discrete result
/// is exactly a Q-component member of the interacting family, so its
/// residual is zero at any Q, not merely convergent.
struct IntegralSubspace {
    Vec e1, e2;
    double lambda = 1.0;
    std::vector<std::pair<double, double>> density; // (beta(phi_q), delta(phi_q)) at phi_q = 2 pi q / Q
};

inline FlowField build_integral_flow(const std::vector<IntegralSubspace>& subspaces,
                                     const ModelParams& params, const Vec& drift = Vec()) {
    InteractingSpec spec;
    spec.dim = params.dim;
    spec.drift = drift;
    for (const auto& s : subspaces) {
        if (s.density.size() < 4)
            throw invalid_spec("build_integral_flow: quadrature needs Q >= 4 nodes");
        const std::size_t Q = s.density.size();
        const double w = 2.0 * kPi / static_cast<double>(Q);
        InteractingSubspace sub;
        sub.e1 = s.e1;
        sub.e2 = s.e2;
        sub.lambda = s.lambda;
        for (std::size_t q = 0; q < Q; ++q) {
            const auto& [beta, delta] = s.density[q];
            if (beta == 0.0) continue; // delta densities collapse to single components
            InteractingComponent c;
            c.phi = w * static_cast<double>(q);
            c.beta = w * beta;
            c.delta = delta;
            sub.comps.push_back(c);
        }
        spec.subspaces.push_back(std::move(sub));
    }
    FlowField f = build_interacting_transverse(spec, params);
    f.set_family(FlowFamily::Integral);
    return f;
}

// ---------------------------------------------------------------------------
// Superposition with numeric compatibility checking.
// ---------------------------------------------------------------------------

struct SuperposeOptions {
    std::size_t probes = 200;
    std::uint64_t seed = 1234;
    double tol = 1e-9;
    std::optional<SampleBox> box; // default: standard box in the fields' dimension
};

namespace detail {

inline Vec momentum_cross(const FlowField& fi, const FlowField& fj, double t, const Vec& x) {
    const FieldJet ji = fi.jet(t, x), jj = fj.jet(t, x);
    return jj.v.gradient.apply(ji.v.value) + ji.v.gradient.apply(jj.v.value);
}

inline double buoyancy_cross(const FlowField& fi, const FlowField& fj, double t, const Vec& x) {
    const FieldJet ji = fi.jet(t, x), jj = fj.jet(t, x);
    return dot(jj.b.gradient, ji.v.value) + dot(ji.b.gradient, jj.v.value);
}

} // namespace detail

/// Sum compatible explicit solutions. Cross advective terms of every pair
/// are probed numerically; if they all vanish the summed pressure is the sum
/// of the pressures and the result is again an explicit solution. A pair
/// whose cross term does not vanish is rejected with a witness point; the
/// error message records whether the cross term was at least a gradient
/// (those combinations need a closed-form pressure this library only
/// provides through the documented constructions).
inline FlowField superpose(const std::vector<FlowField>& fields, const ModelParams& params,
                           const SuperposeOptions& opts = {}) {
    if (fields.empty()) throw structural_error("superpose: no fields");
    const std::size_t n = fields.front().dim();
    for (const FlowField& f : fields) {
        if (f.dim() != n) throw structural_error("superpose: mixed dimensions");
        if (!(f.params() == params)) throw structural_error("superpose: fields with different params");
        if (f.system() != fields.front().system())
            throw structural_error("superpose: fields belong to different governing systems");
    }

    SampleBox box = opts.box ? *opts.box : SampleBox::standard(n);
    const auto probes = sample_points(box, opts.probes, opts.seed);

    // scale-aware tolerance per pair
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            double worst = 0.0, worst_t = 0.0;
            Vec worst_x(n);
            double scale = 1.0;
            for (const auto& [t, x] : probes) {
                const FieldJet ji = fields[i].jet(t, x), jj = fields[j].jet(t, x);
                scale = std::max({scale, ji.v.value.max_abs() * jj.v.gradient.max_abs(),
                                  jj.v.value.max_abs() * ji.v.gradient.max_abs()});
                const double m = std::max(detail::momentum_cross(fields[i], fields[j], t, x).max_abs(),
                                          std::abs(detail::buoyancy_cross(fields[i], fields[j], t, x)));
                if (m > worst) {
                    worst = m;
                    worst_t = t;
                    worst_x = x;
                }
            }
            if (worst > opts.tol * scale) {
                const auto cross_eval = [&](double t, const Vec& x) {
                    return detail::momentum_cross(fields[i], fields[j], t, x);
                };
                const GradientTestResult g = is_gradient_field(cross_eval, probes, 1e-6);
                std::ostringstream os;
                os << "superpose: fields " << i << " (" << to_string(fields[i].family()) << ") and " << j
                   << " (" << to_string(fields[j].family()) << ") are incompatible: cross advective term "
                   << (g.kind == GradientKind::NotGradient
                           ? "is not a gradient"
                           : "is a gradient but has no closed-form pressure here")
                   << "; |cross| = " << worst << " at witness t = " << worst_t;
                throw incompatibility_error(os.str(), i, j, worst_t, worst_x.data(), worst);
            }
        }

    FlowField out(static_cast<int>(n), params, FlowFamily::Superposition, fields.front().system());
    out.drift = Vec(n);
    for (const FlowField& f : fields) {
        out.drift += f.drift;
        out.p_linear += f.p_linear;
        out.b_const += f.b_const;
        out.vel_waves.insert(out.vel_waves.end(), f.vel_waves.begin(), f.vel_waves.end());
        out.parallel_modes.insert(out.parallel_modes.end(), f.parallel_modes.begin(),
                                  f.parallel_modes.end());
        out.p_waves.insert(out.p_waves.end(), f.p_waves.begin(), f.p_waves.end());
        out.p_prims.insert(out.p_prims.end(), f.p_prims.begin(), f.p_prims.end());
        out.p_prods.insert(out.p_prods.end(), f.p_prods.begin(), f.p_prods.end());
        out.b_waves.insert(out.b_waves.end(), f.b_waves.begin(), f.b_waves.end());
        out.forcing_waves.insert(out.forcing_waves.end(), f.forcing_waves.begin(),
                                 f.forcing_waves.end());
        out.non_solution = out.non_solution || f.non_solution;
    }
    return out;
}

/// Term-level sum without any compatibility check; used to inspect how an
/// incompatible combination actually fails.
inline FlowField superpose_unchecked(const std::vector<FlowField>& fields, const ModelParams& params) {
    if (fields.empty()) throw structural_error("superpose_unchecked: no fields");
    const std::size_t n = fields.front().dim();
    FlowField out(static_cast<int>(n), params, FlowFamily::Superposition, fields.front().system());
    out.drift = Vec(n);
    for (const FlowField& f : fields) {
        if (f.dim() != n) throw structural_error("superpose_unchecked: mixed dimensions");
        out.drift += f.drift;
        out.p_linear += f.p_linear;
        out.b_const += f.b_const;
        out.vel_waves.insert(out.vel_waves.end(), f.vel_waves.begin(), f.vel_waves.end());
        out.parallel_modes.insert(out.parallel_modes.end(), f.parallel_modes.begin(),
                                  f.parallel_modes.end());
        out.p_waves.insert(out.p_waves.end(), f.p_waves.begin(), f.p_waves.end());
        out.p_prims.insert(out.p_prims.end(), f.p_prims.begin(), f.p_prims.end());
        out.p_prods.insert(out.p_prods.end(), f.p_prods.begin(), f.p_prods.end());
        out.b_waves.insert(out.b_waves.end(), f.b_waves.begin(), f.b_waves.end());
        out.forcing_waves.insert(out.forcing_waves.end(), f.forcing_waves.begin(),
                                 f.forcing_waves.end());
    }
    out.non_solution = true;
    out.broken_invariant = "unchecked superposition";
    return out;
}

// ---------------------------------------------------------------------------
// Galilean boost: shift every temporal frequency by c'·k, add the drift, and
// in the rotating case add the compensating pressure f(c2 x - c1 y).
// ---------------------------------------------------------------------------

inline FlowField galilean_boost(const FlowField& field, const Vec& c_prime) {
    const std::size_t n = field.dim();
    if (c_prime.size() != n) throw structural_error("galilean_boost: drift dimension mismatch");
    if (!field.parallel_modes.empty())
        throw structural_error("galilean_boost: parallel-flow modes carry no traveling phase");
    if (field.system() == SystemTag::Boussinesq && n == 3 && c_prime[2] != 0.0)
        throw invalid_spec("galilean_boost: vertical boosts break the buoyancy balance");

    FlowField out = field;
    out.drift += c_prime;
    for (auto& vw : out.vel_waves) vw.w.omega += dot(c_prime, vw.w.k);
    for (auto& sw : out.p_waves) sw.w.omega += dot(c_prime, sw.w.k);
    for (auto& pw : out.p_prims) pw.w.omega += dot(c_prime, pw.w.k);
    for (auto& pp : out.p_prods) {
        pp.f1.omega += dot(c_prime, pp.f1.k);
        pp.f2.omega += dot(c_prime, pp.f2.k);
    }
    for (auto& bw : out.b_waves) bw.w.omega += dot(c_prime, bw.w.k);
    for (auto& fw : out.forcing_waves) fw.w.omega += dot(c_prime, fw.w.k);
    if (field.system() == SystemTag::Boussinesq && field.params().f != 0.0) {
        out.p_linear[0] += field.params().f * c_prime[1];
        out.p_linear[1] += -field.params().f * c_prime[0];
    }
    if (out.interacting) out.interacting->drift += c_prime;
    return out;
}

// ---------------------------------------------------------------------------
// Solution-space dimension counts.
// ---------------------------------------------------------------------------

enum class CountedFamily { Transverse, InteractingTransverse, InteractingHorizontal };

struct DimensionCount {
    long long core = 0;
    long long symmetry_bonus = 0; // Galilean invariance + spatial translation, reported separately
};

inline DimensionCount solution_space_dimension(CountedFamily family, int n, int N,
                                               const std::vector<int>& M) {
    long long mN = 0;
    for (int m : M) {
        if (m < 1) throw structural_error("solution_space_dimension: M_i must be >= 1");
        mN += m;
    }
    switch (family) {
        case CountedFamily::Transverse: {
            if (n < 2 || N < 1 || N >= n)
                throw structural_error("solution_space_dimension: transverse needs 1 <= N < n");
            if (static_cast<int>(M.size()) != N)
                throw structural_error("solution_space_dimension: need one M_i per direction");
            return {N + (n - N + 1) * mN, 2LL * n - N};
        }
        case CountedFamily::InteractingTransverse: {
            if (n < 2 || N < 1 || 2 * N > n)
                throw structural_error("solution_space_dimension: interacting needs 1 <= N <= n/2");
            if (static_cast<int>(M.size()) != N)
                throw structural_error("solution_space_dimension: need one M_i per subspace");
            return {3 * mN, n};
        }
        case CountedFamily::InteractingHorizontal: {
            // N here is the number of superposed waves; the count is 3N + 1
            if (N < 1) throw structural_error("solution_space_dimension: need at least one wave");
            return {3LL * N + 1, 3};
        }
    }
    throw structural_error("solution_space_dimension: unknown family");
}

// ---------------------------------------------------------------------------
// Negative controls: fields that intentionally violate exactly one family
// constraint, flagged non_solution, with the expected failure recorded.
// ---------------------------------------------------------------------------

enum class NegativeKind { SelfDirected, WavelengthMismatch, OrthogonalityBreak };

inline std::string to_string(NegativeKind k) {
    switch (k) {
        case NegativeKind::SelfDirected: return "self_directed";
        case NegativeKind::WavelengthMismatch: return "wavelength_mismatch";
        case NegativeKind::OrthogonalityBreak: return "orthogonality_break";
    }
    return "?";
}

inline FlowField build_negative_control(NegativeKind kind, const ModelParams& params) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(params.dim);
    if (n < 2) throw structural_error("build_negative_control: dim >= 2 required");

    FlowField f(params.dim, params, FlowFamily::NegativeControl,
                params.nu == 0.0 ? SystemTag::Euler : SystemTag::NavierStokes);
    f.non_solution = true;

    auto axis = [&](std::size_t i, double s) {
        Vec v(n);
        v[i] = s;
        return v;
    };

    switch (kind) {
        case NegativeKind::SelfDirected: {
            // v = sin(k·x) k: each wave travels along its own direction. The
            // pressure p = -rho0/2 |k|^2 psi^2 absorbs the advective term, but
            // div v = |k|^2 cos(k·x) does not vanish.
            WaveTerm w;
            w.k = axis(0, 1.0);
            w.shape = WaveShape::sine(1.0, 1.0, 0.0).with_decay(params.nu * w.k.norm_sq());
            VelocityWave vw{w.k, w};
            f.vel_waves.push_back(vw);
            f.p_prods.push_back({-0.5 * params.rho0 * w.k.norm_sq(), w, w, false});
            f.broken_invariant = "divergence_free";
            f.expected_channel = "continuity";
            break;
        }
        case NegativeKind::WavelengthMismatch: {
            // interacting-style pair with |k1| = 1, |k2| = 2: the advective
            // term is no longer a gradient, so no pressure can repair it.
            WaveTerm w1;
            w1.k = axis(0, 1.0);
            w1.shape = WaveShape::sine(1.0, 1.0, 0.0).with_decay(params.nu * w1.k.norm_sq());
            WaveTerm w2;
            w2.k = axis(1, 2.0);
            w2.shape = WaveShape::sine(1.0, 1.0, 0.3).with_decay(params.nu * w2.k.norm_sq());
            f.vel_waves.push_back({axis(1, 1.0), w1});   // a1 = rot90(k1)
            f.vel_waves.push_back({axis(0, -2.0), w2});  // a2 = rot90(k2)
            // equal-wavelength pressure formula applied out of its regime
            f.p_prods.push_back({-params.rho0 * dot(w1.k, w2.k), w1, w2, false});
            f.p_prods.push_back({-params.rho0 * w1.k.norm() * w2.k.norm(), w1, w2, true});
            f.broken_invariant = "equal_wavelength_interaction";
            f.expected_channel = "momentum";
            break;
        }
        case NegativeKind::OrthogonalityBreak: {
            // flow direction with a·k = 1: the advective term survives and
            // the field is not even divergence free.
            WaveTerm w;
            w.k = axis(0, 1.0);
            w.shape = WaveShape::sine(1.0, 1.0, 0.0).with_decay(params.nu * w.k.norm_sq());
            Vec a = axis(0, 1.0) + axis(1, 1.0); // a·k = 1
            f.vel_waves.push_back({a, w});
            f.broken_invariant = "direction_wavevector_orthogonality";
            f.expected_channel = "momentum";
            break;
        }
    }
    f.label = "negative_" + to_string(kind);
    return f;
}

} // namespace pwflow
