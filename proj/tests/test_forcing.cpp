#include "doctest.h"

#include <cmath>

#include "pwflow/forcing.hpp"
#include "pwflow/residuals.hpp"

using namespace pwflow;

namespace {

ForcingSpec single_mode_forcing(double beta = 1.0, double sigma = 1.0) {
    // F = beta sin(sigma x) e2 in R^3
    ForcingMode m;
    m.a = Vec{0.0, 1.0, 0.0};
    m.k = Vec{1.0, 0.0, 0.0};
    m.shape = WaveShape::sine(beta, sigma, 0.0);
    return ForcingSpec::plane_wave_sum({m});
}

std::vector<DensityNode> decaying_table(int nodes = 16) {
    std::vector<DensityNode> t;
    for (int q = 1; q <= nodes; ++q) t.push_back({0.5 * q, std::exp(-0.5 * q), 0.5});
    return t;
}

} // namespace

TEST_CASE("forced mode: u' = -u + 1 gives (1 - e^{-t}) amplitude") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    TransverseSpec v0;
    v0.dim = 3; // v0 = 0
    const ForcedSolution sol = build_forced_solution(v0, single_mode_forcing(), p);
    CHECK_FALSE(sol.unbounded_growth);

    const Vec x{M_PI / 2.0, 0.3, -0.8}; // sin(x) = 1
    CHECK(sol.combined.velocity(1.0, x)[1] ==
          doctest::Approx(0.6321205588285577).epsilon(1e-14));
    CHECK(sol.combined.velocity(0.0, x).max_abs() == 0.0); // exactly v0 at t = 0
    CHECK(verify(sol.combined, SystemTag::Forced, SamplerSpec::standard(3), 1e-8).pass);

    // t -> infinity limit is the steady state
    REQUIRE(sol.steady.has_value());
    CHECK(sol.steady->velocity(0.0, x)[1] == doctest::Approx(1.0));
    CHECK((sol.combined.velocity(40.0, x) - sol.steady->velocity(40.0, x)).max_abs() <= 1e-15);
}

TEST_CASE("zero forcing reduces to the unforced family") {
    ModelParams p;
    p.dim = 3;
    p.nu = 0.4;
    TransverseSpec v0;
    v0.dim = 3;
    v0.groups.push_back({Vec{0.0, 0.0, 1.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(0.8, 1.0, 0.2)}}});
    const ForcedSolution sol = build_forced_solution(v0, ForcingSpec::plane_wave_sum({}), p);
    const FlowField plain = build_transverse(v0, p);
    SplitMix64 rng(10);
    for (int i = 0; i < 30; ++i) {
        const double t = rng.uniform(0.0, 2.0);
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        CHECK((sol.combined.velocity(t, x) - plain.velocity(t, x)).max_abs() == 0.0);
    }
}

TEST_CASE("steady state amplitudes follow 1/(nu q)") {
    ModelParams p;
    p.dim = 3;
    p.nu = 0.5;
    const FlowField vs = steady_state_from_forcing(single_mode_forcing(1.0, 2.0), p);
    // q = sigma^2 |k|^2 = 4: amplitude = 1/(0.5*4) = 0.5
    const Vec x{M_PI / 4.0, 0.0, 0.0}; // sin(2x) = 1
    CHECK(vs.velocity(3.0, x)[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(verify(vs, SystemTag::Forced, SamplerSpec::standard(3), 1e-8).pass);

    ModelParams inviscid;
    inviscid.dim = 3;
    CHECK_THROWS_AS((void)steady_state_from_forcing(single_mode_forcing(), inviscid), invalid_spec);
}

TEST_CASE("eigenfunction identity: nu=1, |k|=1 makes v_s = F") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    const ForcingSpec F = single_mode_forcing(1.0, 1.0);
    const FlowField vs = steady_state_from_forcing(F, p);
    SplitMix64 rng(21);
    for (int i = 0; i < 30; ++i) {
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        CHECK((vs.velocity(0.7, x) - vs.forcing_at(0.7, x)).max_abs() <= 1e-15);
    }
}

TEST_CASE("duhamel cast: combined equals v_s + e^{Lt}(v0 - v_s)") {
    ModelParams p;
    p.dim = 3;
    p.nu = 0.8;
    TransverseSpec v0;
    v0.dim = 3;
    v0.groups.push_back({Vec{0.0, 1.0, 0.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(0.7, 1.0, 0.3)}}});
    const ForcingSpec F =
        ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{1.0, 0.0, 0.0}, decaying_table());
    const ForcedSolution sol = build_forced_solution(v0, F, p);
    REQUIRE(sol.steady.has_value());

    SplitMix64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(0.0, 2.0);
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        // e^{Lt}(v0 - v_s): decay each mode of v0 and of v_s at its own rate
        Vec rhs = sol.steady->velocity(t, x) + sol.homogeneous.velocity(t, x);
        for (const auto& vw : sol.steady->vel_waves) {
            const double ksq = vw.w.k.norm_sq();
            for (const auto& s : vw.w.shape.sine_terms()) {
                const double dec = std::exp(-p.nu * s.sigma * s.sigma * ksq * t);
                const double val =
                    dec * s.beta * std::sin(s.sigma * dot(vw.w.k, x) + s.delta);
                for (std::size_t c = 0; c < 3; ++c) rhs[c] -= vw.a[c] * val;
            }
        }
        CHECK((sol.combined.velocity(t, x) - rhs).max_abs() <= 1e-12);
    }
    CHECK(verify(sol.combined, SystemTag::Forced, SamplerSpec::standard(3), 1e-8).pass);
}

TEST_CASE("nonlinear closure: advective term contributes nothing") {
    ModelParams p;
    p.dim = 3;
    p.nu = 0.6;
    TransverseSpec v0;
    v0.dim = 3;
    v0.groups.push_back({Vec{0.0, 1.0, 0.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(0.7, 2.0, 0.1)}}});
    const ForcedSolution sol = build_forced_solution(v0, single_mode_forcing(0.9, 1.0), p);
    SplitMix64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.0, 1.5);
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const ResidualVector with = residual_forced(sol.combined, p, t, x, true);
        const ResidualVector without = residual_forced(sol.combined, p, t, x, false);
        CHECK((with.momentum - without.momentum).max_abs() <= 1e-12);
    }
}

TEST_CASE("joint constraint violations are rejected") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    TransverseSpec v0;
    v0.dim = 3;
    // v0 direction not orthogonal to the forcing wave vector
    v0.groups.push_back({Vec{1.0, 0.0, 0.0}, {{Vec{0.0, 1.0, 0.0}, WaveShape::sine(1.0, 1.0, 0.0)}}});
    CHECK_THROWS_AS((void)build_forced_solution(v0, single_mode_forcing(), p), invalid_spec);

    // drift is not allowed in forced specs
    TransverseSpec v1;
    v1.dim = 3;
    v1.drift = Vec{1.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)build_forced_solution(v1, single_mode_forcing(), p), invalid_spec);
}

TEST_CASE("inviscid forcing grows linearly and is flagged") {
    ModelParams p;
    p.dim = 3; // nu = 0
    TransverseSpec v0;
    v0.dim = 3;
    const ForcedSolution sol = build_forced_solution(v0, single_mode_forcing(), p);
    CHECK(sol.unbounded_growth);
    const Vec x{M_PI / 2.0, 0.0, 0.0};
    CHECK(sol.combined.velocity(3.0, x)[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(verify(sol.combined, SystemTag::Forced, SamplerSpec::standard(3), 1e-8).pass);
    CHECK_FALSE(sol.steady.has_value());
}

TEST_CASE("density integral: integrability bound and validation") {
    const auto table = decaying_table();
    const ForcingSpec F =
        ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{1.0, 0.0, 0.0}, table);
    double expect = 0.0;
    for (const auto& nd : table)
        expect += (nd.sigma <= 1.0 ? 1.0 : nd.sigma * nd.sigma) * std::abs(nd.alpha) * nd.weight;
    CHECK(F.integrability_bound() == doctest::Approx(expect));
    CHECK(F.modes().size() == table.size());

    CHECK_THROWS_AS(ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{2.0, 0.0, 0.0}, table),
                    invalid_spec); // |k_F| != 1
    CHECK_THROWS_AS(ForcingSpec::density_integral(Vec{1.0, 0.0, 0.0}, Vec{1.0, 0.0, 0.0}, table),
                    invalid_spec); // a_F not orthogonal
    CHECK_THROWS_AS(
        ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{1.0, 0.0, 0.0}, {{0.0, 1.0, 1.0}}),
        invalid_spec); // sigma = 0 node
}

TEST_CASE("asymptotic stability: deviation shrinks under the slowest envelope") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    TransverseSpec v0;
    v0.dim = 3; // start from rest
    const ForcingSpec F =
        ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{1.0, 0.0, 0.0}, decaying_table());
    const auto grid = make_grid(Vec{-kPi, 0.0, 0.0}, Vec{kPi, 0.0, 0.0}, {257, 1, 1});
    const std::vector<double> times{0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
    const StabilityReport rep = asymptotic_stability_check(F, v0, p, times, grid);
    CHECK(rep.monotone);
    CHECK(rep.envelope_ok);
    CHECK(rep.kappa_min_sq == doctest::Approx(0.25)); // sigma_min = 0.5
    CHECK(rep.pass());
}

TEST_CASE("asymptotic stability: two-mode envelope with the slower rate") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    // modes at wavenumbers 1 and 2 along the same direction
    ForcingMode m1, m2;
    m1.a = m2.a = Vec{0.0, 0.0, 1.0};
    m1.k = m2.k = Vec{1.0, 0.0, 0.0};
    m1.shape = WaveShape::sine(1.0, 1.0, 0.0);
    m2.shape = WaveShape::sine(0.5, 2.0, 0.0);
    const ForcingSpec F = ForcingSpec::plane_wave_sum({m1, m2});
    TransverseSpec v0;
    v0.dim = 3;
    const auto grid = make_grid(Vec{-kPi, 0.0, 0.0}, Vec{kPi, 0.0, 0.0}, {129, 1, 1});
    const StabilityReport rep =
        asymptotic_stability_check(F, v0, p, {0.0, 0.5, 1.0, 2.0, 4.0}, grid);
    CHECK(rep.kappa_min_sq == doctest::Approx(1.0));
    CHECK(rep.monotone);
    CHECK(rep.envelope_ok);
}

TEST_CASE("asymptotic stability: v0 = v_s has zero deviation") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    const ForcingSpec F = single_mode_forcing(1.0, 1.0);
    // v0 = v_s = sin(x) e2 (amplitude 1/(nu q) = 1)
    TransverseSpec v0;
    v0.dim = 3;
    v0.groups.push_back({Vec{0.0, 1.0, 0.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(1.0, 1.0, 0.0)}}});
    const auto grid = make_grid(Vec{-kPi, 0.0, 0.0}, Vec{kPi, 0.0, 0.0}, {65, 1, 1});
    const StabilityReport rep =
        asymptotic_stability_check(F, v0, p, {0.0, 0.5, 1.0}, grid);
    for (const auto& row : rep.rows) CHECK(row.deviation <= 1e-15);
}

TEST_CASE("single mode deviation ratio is exactly the mode decay") {
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    const ForcingSpec F = single_mode_forcing(1.0, 1.0);
    // v0 = 2 v_s
    TransverseSpec v0;
    v0.dim = 3;
    v0.groups.push_back({Vec{0.0, 1.0, 0.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(2.0, 1.0, 0.0)}}});
    const ForcedSolution sol = build_forced_solution(v0, F, p);
    const Vec x{M_PI / 2.0, 0.0, 0.0};
    const double d0 = (sol.combined.velocity(0.0, x) - sol.steady->velocity(0.0, x)).max_abs();
    const double d1 = (sol.combined.velocity(1.0, x) - sol.steady->velocity(1.0, x)).max_abs();
    CHECK(d1 / d0 == doctest::Approx(0.36787944117144233).epsilon(1e-12));
}

TEST_CASE("forced interacting transverse flows close under the union potential") {
    ModelParams p;
    p.dim = 2;
    p.nu = 0.5;
    InteractingSpec v0;
    v0.dim = 2;
    InteractingSubspace sub;
    sub.e1 = Vec{1.0, 0.0};
    sub.e2 = Vec{0.0, 1.0};
    sub.lambda = 1.0;
    sub.comps = {{0.0, {}, 0.9, 0.0}, {kPi / 2.0, {}, 0.7, 0.5}};
    v0.subspaces = {sub};

    // forcing along a third in-plane direction, same wavelength
    ForcingMode m;
    m.k = Vec{std::cos(1.1), std::sin(1.1)};
    m.a = Vec{-std::sin(1.1), std::cos(1.1)};
    m.shape = WaveShape::sine(0.8, 1.0, 0.2);
    const ForcingSpec F = ForcingSpec::plane_wave_sum({m});

    const ForcedSolution sol = build_forced_solution(v0, F, p);
    CHECK(verify(sol.combined, SystemTag::Forced, SamplerSpec::standard(2), 1e-8).pass);
    REQUIRE(sol.steady.has_value());
    CHECK(verify(*sol.steady, SystemTag::Forced, SamplerSpec::standard(2), 1e-8).pass);

    // equals v0 exactly at t = 0
    const FlowField plain = build_interacting_transverse(v0, p);
    const Vec x0{0.7, -1.1};
    CHECK((sol.combined.velocity(0.0, x0) - plain.velocity(0.0, x0)).max_abs() == 0.0);

    // duhamel cast for the interacting route
    SplitMix64 rng(61);
    for (int i = 0; i < 60; ++i) {
        const double t = rng.uniform(0.0, 2.0);
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        Vec rhs = sol.steady->velocity(t, x) + sol.homogeneous.velocity(t, x);
        for (const auto& vw : sol.steady->vel_waves) {
            const double ksq = vw.w.k.norm_sq();
            for (const auto& s : vw.w.shape.sine_terms()) {
                const double dec = std::exp(-p.nu * s.sigma * s.sigma * ksq * t);
                const double val = dec * s.beta * std::sin(s.sigma * dot(vw.w.k, x) + s.delta);
                for (std::size_t c = 0; c < 2; ++c) rhs[c] -= vw.a[c] * val;
            }
        }
        CHECK((sol.combined.velocity(t, x) - rhs).max_abs() <= 1e-12);
    }

    // wavelength violations are rejected
    ForcingMode bad = m;
    bad.shape = WaveShape::sine(0.8, 2.0, 0.2); // effective |K| = 2 != lambda
    CHECK_THROWS_AS((void)build_forced_solution(v0, ForcingSpec::plane_wave_sum({bad}), p),
                    invalid_spec);
}

TEST_CASE("pressure-absorbing forcing decomposition") {
    const Vec k{1.0, 0.0, 0.0}, a{0.0, 1.0, 0.0};
    const WaveShape psi = WaveShape::sine(1.0, 1.0, 0.0);

    // delta = 0: identity decomposition
    const auto id = decompose_pressure_forcing(psi, 0.0, k, a);
    CHECK(id.pressure_term.scale == 0.0);

    // delta = 1: p_tilde = Psi = -cos(x)
    const auto d = decompose_pressure_forcing(psi, 1.0, k, a);
    CHECK(d.pressure_term.scale == 1.0);
    CHECK(d.pressure_term.w.shape.primitive(0.0, 0.0) == doctest::Approx(-1.0));

    // residual with (F_tilde, p + p_tilde) equals residual with (F, p):
    // algebraically F_tilde - grad(p_tilde) = F, checked pointwise
    ModelParams p;
    p.dim = 3;
    p.nu = 1.0;
    TransverseSpec v0;
    v0.dim = 3;
    const ForcedSolution sol =
        build_forced_solution(v0, ForcingSpec::plane_wave_sum({d.effective}), p);

    FlowField tilted = sol.combined;
    tilted.p_prims.push_back(d.pressure_term); // add p_tilde
    tilted.forcing_waves.clear();              // F_tilde = psi a_delta, a_delta = a + delta k
    tilted.forcing_waves.push_back({a + k, WaveTerm{k, 0.0, psi, std::nullopt}});

    SplitMix64 rng(55);
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.0, 1.0);
        const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const ResidualVector r1 = residual_forced(sol.combined, p, t, x);
        const ResidualVector r2 = residual_forced(tilted, p, t, x);
        CHECK((r1.momentum - r2.momentum).max_abs() <= 1e-12);
    }
    CHECK(verify(tilted, SystemTag::Forced, SamplerSpec::standard(3), 1e-8).pass);

    CHECK_THROWS_AS(decompose_pressure_forcing(psi, 1.0, k, Vec{1.0, 1.0, 0.0}), invalid_spec);
}
