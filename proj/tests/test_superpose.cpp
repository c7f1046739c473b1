#include "doctest.h"

#include <cmath>

#include "pwflow/boussinesq.hpp"
#include "pwflow/flows.hpp"
#include "pwflow/residuals.hpp"
#include "pwflow/suite.hpp"

using namespace pwflow;

TEST_CASE("superpose: transverse flows sharing an orthogonality system") {
    ModelParams p;
    p.dim = 3;
    p.nu = 0.05;
    TransverseSpec a;
    a.dim = 3;
    a.groups.push_back({Vec{0.0, 0.0, 1.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(1.0, 1.0, 0.0)}}});
    TransverseSpec b;
    b.dim = 3;
    b.groups.push_back({Vec{0.0, 0.0, 1.0}, {{Vec{0.0, 1.0, 0.0}, WaveShape::sine(0.7, 2.0, 0.4)}}});
    const FlowField sum = superpose({build_transverse(a, p), build_transverse(b, p)}, p);
    CHECK(verify(sum, SystemTag::NavierStokes, SamplerSpec::standard(3), 1e-9).pass);
}

TEST_CASE("superpose: MGW + forced Kolmogorov with a shared direction") {
    // dispersion needs stable stratification, the steady Kolmogorov flow an
    // unstable one; forcing beta > nu |a|^2 reconciles them.
    ModelParams p;
    p.dim = 3;
    p.nu = p.mu = 0.05;
    p.strat = -0.02;
    const auto kol = build_kolmogorov(1.0, 1.0, 0.9, 0.2, p);
    CHECK(kol.required_strat == doctest::Approx(-0.02).epsilon(1e-14));
    CHECK(kol.stationary_compatible);
    const FlowField mgw = build_mgw(1.0, 1.0, 0.6, 1, p);
    const FlowField sum = superpose({kol.field, mgw}, p);
    CHECK(sum.has_forcing());
    CHECK(verify(sum, SystemTag::Boussinesq, SamplerSpec::standard(3), 1e-9).pass);
}

TEST_CASE("superpose: Kolmogorov + horizontal plane flow is rejected") {
    ModelParams p;
    p.dim = 3;
    p.nu = p.mu = 1.0;
    p.strat = 8.0;
    const auto kol = build_kolmogorov(1.0, 1.0, 1.0, 0.0, p);
    HorizontalPlaneSpec hp;
    hp.k2 = {1.0, 0.0};
    const FlowField hpf = build_horizontal_plane_boussinesq(hp, p);
    CHECK_THROWS_AS((void)superpose({kol.field, hpf}, p), incompatibility_error);
    try {
        (void)superpose({kol.field, hpf}, p);
    } catch (const incompatibility_error& e) {
        CHECK(e.cross_magnitude >= 1e-2);
        CHECK(e.x.size() == 3); // witness point recorded
        CHECK(std::string(e.what()).find("incompatible") != std::string::npos);
    }
}

TEST_CASE("superpose: MGW + horizontal plane flow is rejected") {
    ModelParams p;
    p.dim = 3;
    p.strat = -1.0;
    const FlowField mgw = build_mgw(1.0, 1.0, 1.0, 1, p);
    HorizontalPlaneSpec hp;
    hp.k2 = {1.0, 0.0};
    const FlowField hpf = build_horizontal_plane_boussinesq(hp, p);
    CHECK_THROWS_AS((void)superpose({mgw, hpf}, p), incompatibility_error);
}

TEST_CASE("superpose: single-mode parallel flow + horizontal plane with b = 0") {
    // the one parallel/horizontal combination without cross terms: both
    // depend on the same horizontal phase and the parallel flow has b tied
    // to the same mode
    ModelParams p;
    p.dim = 3;
    p.nu = 0.05;
    p.mu = 0.04;
    p.strat = -0.5;
    HorizontalPlaneSpec hp;
    hp.k2 = {1.0, 0.0};
    hp.shape = WaveShape::sine(0.8, 1.0, 0.3);
    const FlowField hpf = build_horizontal_plane_boussinesq(hp, p);
    const FlowField par = build_parallel_boussinesq({{1.0, 0.0, 0.6, 0.2}}, 0.0, p);
    const FlowField sum = superpose({hpf, par}, p);
    CHECK(verify(sum, SystemTag::Boussinesq, SamplerSpec::standard(3), 1e-9).pass);

    // mismatched phase directions leave (v·∇)b cross terms: rejected
    HorizontalPlaneSpec other;
    other.k2 = {0.0, 1.0};
    other.shape = WaveShape::sine(0.8, 1.0, 0.3);
    const FlowField otherf = build_horizontal_plane_boussinesq(other, p);
    CHECK_THROWS_AS((void)superpose({otherf, par}, p), incompatibility_error);
}

TEST_CASE("superpose: parameter and dimension mismatches are structural") {
    ModelParams p2;
    p2.dim = 2;
    TransverseSpec s;
    s.dim = 2;
    s.groups.push_back({Vec{0.0, 1.0}, {{Vec{1.0, 0.0}, WaveShape::sine(1.0, 1.0, 0.0)}}});
    const FlowField f2 = build_transverse(s, p2);

    ModelParams q = p2;
    q.nu = 0.9;
    CHECK_THROWS_AS((void)superpose({f2, f2}, q), structural_error);
}

TEST_CASE("superpose_unchecked: every documented incompatible pair fails loudly") {
    for (const IncompatiblePair& pair : builtin_incompatible_pairs()) {
        CAPTURE(pair.name);
        const FlowField naive = superpose_unchecked(pair.fields, pair.params);
        const auto rep = verify(naive, SystemTag::Boussinesq, SamplerSpec::standard(3), 1e-8);
        CHECK_FALSE(rep.pass);
        CHECK(rep.witness_value >= 100.0 * 1e-8);
    }
}

TEST_CASE("galilean boost preserves closure across families") {
    // transverse, n = 2, arbitrary boost
    {
        ModelParams p;
        p.dim = 2;
        p.nu = 0.1;
        TransverseSpec s;
        s.dim = 2;
        s.groups.push_back({Vec{0.0, 1.0}, {{Vec{1.0, 0.0}, WaveShape::sine(1.0, 1.0, 0.0)}}});
        const FlowField f = build_transverse(s, p);
        const FlowField g = galilean_boost(f, Vec{1.7, -0.4});
        CHECK(verify(g, SystemTag::NavierStokes, SamplerSpec::standard(2), 1e-9).pass);
        CHECK(g.vel_waves[0].w.omega == doctest::Approx(1.7));
    }
    // interacting horizontal with rotation: boost adds the linear pressure
    {
        ModelParams p;
        p.dim = 3;
        p.f = 0.5;
        p.nu = p.mu = 0.02;
        p.strat = -1.0;
        InteractingHorizontalSpec spec;
        spec.waves = {{{1.0, 0.0}, 1.0, 0.0}, {{0.0, 1.0}, 0.8, 0.4}};
        spec.btilde = WaveShape::sine(0.5, 1.0, 0.0);
        const FlowField f = build_interacting_horizontal_boussinesq(spec, p);
        const FlowField g = galilean_boost(f, Vec{0.3, 0.8, 0.0});
        CHECK(verify(g, SystemTag::Boussinesq, SamplerSpec::standard(3), 1e-9).pass);
        CHECK_THROWS_AS(galilean_boost(f, Vec{0.0, 0.0, 1.0}), invalid_spec);
    }
    // boosting a boosted MGW twice composes
    {
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        p.f = 0.5;
        const FlowField f = build_mgw(1.0, 2.0, 0.8, 1, p);
        const FlowField g = galilean_boost(galilean_boost(f, Vec{0.4, 0.0, 0.0}), Vec{0.0, -0.7, 0.0});
        CHECK(verify(g, SystemTag::Boussinesq, SamplerSpec::standard(3), 1e-9).pass);
    }
    // parallel modes cannot be boosted
    {
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        const FlowField f = build_parallel_boussinesq({{1.0, 0.0, 1.0, 0.0}}, 0.0, p);
        CHECK_THROWS_AS(galilean_boost(f, Vec{1.0, 0.0, 0.0}), structural_error);
    }
}
