#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pwflow/boussinesq.hpp"
#include "pwflow/flows.hpp"
#include "pwflow/forcing.hpp"
#include "pwflow/residuals.hpp"

namespace pwflow {

/// One entry of the bundled verification matrix. The positive cases cover
/// every solution family at parameters kept O(1) so the finite-difference
/// oracle stays truncation-dominated; negative cases must fail.
struct SuiteCase {
    std::string name;
    FlowField field;
    SampleBox box;
    bool expect_pass = true;
};

/// An incompatible pair that superpose must reject with a witness.
struct IncompatiblePair {
    std::string name;
    std::vector<FlowField> fields;
    ModelParams params;
};

inline std::vector<SuiteCase> builtin_positive_cases() {
    std::vector<SuiteCase> cases;

    { // transverse, n = 3, two directions, drift, mixed Fourier content
        ModelParams p;
        p.dim = 3;
        p.nu = 0.05;
        TransverseSpec s;
        s.dim = 3;
        s.drift = Vec{0.3, -0.2, 0.1};
        s.groups.push_back({Vec{1.0, 0.0, 0.0},
                            {{Vec{0.0, 0.0, 1.0}, WaveShape::sine(1.0, 1.0, 0.0)},
                             {Vec{0.0, 0.0, 2.0}, WaveShape::fourier({{0.6, 1.0, 0.4}, {0.3, 2.0, -0.2}})}}});
        s.groups.push_back({Vec{0.0, 1.0, 0.0}, {{Vec{0.0, 0.0, 1.5}, WaveShape::sine(0.8, 1.0, 0.9)}}});
        cases.push_back({"transverse_n3", build_transverse(s, p), SampleBox::standard(3)});
    }
    { // transverse with a Gaussian heat-kernel mode; box widened to +-10
        // along the wave axis (the kernel is not periodic)
        ModelParams p;
        p.dim = 2;
        p.nu = 0.1;
        TransverseSpec s;
        s.dim = 2;
        s.groups.push_back({Vec{0.0, 1.0},
                            {{Vec{1.0, 0.0}, WaveShape::gaussian(2.0, 1.0)},
                             {Vec{1.5, 0.0}, WaveShape::sine(0.5, 1.0, 0.2)}}});
        SampleBox box = SampleBox::standard(2);
        box.lo[0] = -10.0;
        box.hi[0] = 10.0;
        cases.push_back({"transverse_gaussian_n2", build_transverse(s, p), box});
    }
    { // interacting transverse, n = 2 (Taylor-type pair, drifting)
        ModelParams p;
        p.dim = 2;
        p.nu = 0.1;
        InteractingSpec s;
        s.dim = 2;
        s.drift = Vec{0.2, -0.4};
        InteractingSubspace sub;
        sub.e1 = Vec{1.0, 0.0};
        sub.e2 = Vec{0.0, 1.0};
        sub.lambda = 1.0;
        sub.comps = {{0.0, {}, 1.0, 0.0}, {kPi / 2.0, {}, 1.0, kPi / 2.0}};
        s.subspaces = {sub};
        cases.push_back({"interacting_transverse_n2", build_interacting_transverse(s, p),
                         SampleBox::standard(2)});
    }
    { // interacting transverse, n = 3, tilted plane
        ModelParams p;
        p.dim = 3;
        p.nu = 0.02;
        InteractingSpec s;
        s.dim = 3;
        const double r = 1.0 / std::sqrt(2.0);
        InteractingSubspace sub;
        sub.e1 = Vec{1.0, 0.0, 0.0};
        sub.e2 = Vec{0.0, r, r};
        sub.lambda = 1.0;
        sub.comps = {{0.4, {}, 1.0, 0.2}, {1.9, {}, 0.7, -0.5}};
        s.subspaces = {sub};
        s.drift = Vec{0.1, 0.2, -0.2};
        cases.push_back({"interacting_transverse_n3", build_interacting_transverse(s, p),
                         SampleBox::standard(3)});
    }
    { // interacting transverse, n = 4, two independent subspaces
        ModelParams p;
        p.dim = 4;
        p.nu = 0.04;
        InteractingSpec s;
        s.dim = 4;
        InteractingSubspace s1;
        s1.e1 = Vec{1.0, 0.0, 0.0, 0.0};
        s1.e2 = Vec{0.0, 1.0, 0.0, 0.0};
        s1.lambda = 1.0;
        s1.comps = {{0.3, {}, 1.0, 0.1}, {2.1, {}, 0.7, -0.4}};
        InteractingSubspace s2;
        s2.e1 = Vec{0.0, 0.0, 1.0, 0.0};
        s2.e2 = Vec{0.0, 0.0, 0.0, 1.0};
        s2.lambda = 2.0;
        s2.comps = {{1.0, {}, 0.5, 0.0}, {2.5, {}, 0.9, 0.6}, {4.0, {}, 0.3, 0.2}};
        s.subspaces = {s1, s2};
        s.drift = Vec{0.1, 0.2, -0.1, 0.05};
        cases.push_back({"interacting_transverse_n4", build_interacting_transverse(s, p),
                         SampleBox::standard(4)});
    }
    { // horizontal plane flow with rotation, drift and buoyancy
        ModelParams p;
        p.dim = 3;
        p.f = 1.0;
        p.nu = 0.01;
        p.mu = 0.02;
        p.strat = -0.5;
        HorizontalPlaneSpec s;
        s.k2 = {0.6, 0.8};
        s.shape = WaveShape::fourier({{1.0, 1.0, 0.2}, {0.5, 2.0, -0.7}});
        s.btilde = WaveShape::sine(0.6, 1.5, 0.1);
        s.drift = Vec{1.0, 2.0, 0.0};
        cases.push_back({"horizontal_plane", build_horizontal_plane_boussinesq(s, p),
                         SampleBox::standard(3)});
    }
    { // interacting horizontal, N = 1 (reduces to a single plane wave)
        ModelParams p;
        p.dim = 3;
        p.f = 0.5;
        p.nu = 0.02;
        p.mu = 0.02;
        p.strat = -1.0;
        InteractingHorizontalSpec s;
        s.waves = {{{0.8, 0.6}, 1.0, 0.3}};
        s.btilde = WaveShape::sine(0.5, 1.0, 0.0);
        cases.push_back({"interacting_horizontal_n1", build_interacting_horizontal_boussinesq(s, p),
                         SampleBox::standard(3)});
    }
    { // interacting horizontal, N = 2 orthogonal pair
        ModelParams p;
        p.dim = 3;
        p.f = 0.5;
        p.nu = 0.02;
        p.mu = 0.02;
        p.strat = -1.0;
        InteractingHorizontalSpec s;
        s.waves = {{{1.0, 0.0}, 1.0, 0.0}, {{0.0, 1.0}, 0.8, 0.4}};
        s.btilde = WaveShape::sine(0.5, 1.0, 0.0);
        s.drift = Vec{0.1, -0.3, 0.0};
        cases.push_back({"interacting_horizontal_n2", build_interacting_horizontal_boussinesq(s, p),
                         SampleBox::standard(3)});
    }
    { // interacting horizontal, N = 3 at 0/120/240 degrees
        ModelParams p;
        p.dim = 3;
        p.f = 0.5;
        p.nu = 0.02;
        p.mu = 0.02;
        p.strat = -1.0;
        const double ang = 2.0 * kPi / 3.0;
        InteractingHorizontalSpec s;
        s.waves = {{{1.0, 0.0}, 1.0, 0.0},
                   {{std::cos(ang), std::sin(ang)}, 0.8, 0.4},
                   {{std::cos(2.0 * ang), std::sin(2.0 * ang)}, 0.6, -0.9}};
        s.btilde = WaveShape::sine(0.5, 1.0, 0.0);
        s.drift = Vec{0.1, -0.3, 0.0};
        cases.push_back({"interacting_horizontal_n3", build_interacting_horizontal_boussinesq(s, p),
                         SampleBox::standard(3)});
    }
    { // unforced Kolmogorov flow at the admissible stratification
        ModelParams p;
        p.dim = 3;
        p.nu = 1.0;
        p.mu = 1.0;
        p.strat = 8.0;
        cases.push_back({"kolmogorov_unforced", build_kolmogorov(1.0, 1.0, 1.0, 0.0, p).field,
                         SampleBox::standard(3)});
    }
    { // forced Kolmogorov flow (stable stratification made admissible)
        ModelParams p;
        p.dim = 3;
        p.nu = 0.1;
        p.mu = 0.2;
        p.strat = 1.0; // mu |a|^2 (nu |a|^2 - beta)(1 + m^2/k^2) for beta = 0.3
        cases.push_back({"kolmogorov_forced", build_kolmogorov(1.0, 2.0, 0.7, 0.3, p).field,
                         SampleBox::standard(3)});
    }
    { // MGW, inviscid, no rotation
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        cases.push_back({"mgw_inviscid_f0", build_mgw(1.0, 1.0, 1.0, 1, p), SampleBox::standard(3)});
    }
    { // MGW, inviscid, rotating
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        p.f = 0.75;
        cases.push_back({"mgw_inviscid_rot", build_mgw(2.0, 1.0, 0.8, 1, p), SampleBox::standard(3)});
    }
    { // MGW, viscous nu = mu
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        p.f = 0.4;
        p.nu = p.mu = 0.01;
        cases.push_back({"mgw_viscous", build_mgw(1.0, 1.0, 0.8, -1, p), SampleBox::standard(3)});
    }
    { // parallel flow: constant + wave modes around a p0 steady state
        ModelParams p;
        p.dim = 3;
        p.f = 0.6;
        p.nu = 0.05;
        p.mu = 0.03;
        p.strat = -1.0;
        const std::vector<ParallelMode> modes = {
            {0.0, 0.0, 0.3, 0.5}, {1.0, 0.0, 1.0, 0.2}, {1.0, 1.0, -0.4, 0.6}};
        cases.push_back({"parallel_boussinesq", build_parallel_boussinesq(modes, 0.7, p),
                         SampleBox::standard(3)});
    }
    { // interacting transverse with parallel-flow augmentation (helical)
        ModelParams p;
        p.dim = 3;
        p.nu = 0.02;
        InteractingSpec s;
        s.dim = 3;
        InteractingSubspace sub;
        sub.e1 = Vec{1.0, 0.0, 0.0};
        sub.e2 = Vec{0.0, 1.0, 0.0};
        sub.lambda = 2.0;
        sub.comps = {{0.0, {}, 1.0, 0.1}, {2.0, {}, 0.8, -0.3}, {4.0, {}, 0.5, 0.9}};
        s.subspaces = {sub};
        cases.push_back({"parallel_augmented",
                         add_parallel_component(build_interacting_transverse(s, p), 0.8),
                         SampleBox::standard(3)});
    }
    { // integral superposition, Q = 16, uniform density
        ModelParams p;
        p.dim = 2;
        p.nu = 0.03;
        IntegralSubspace sub;
        sub.e1 = Vec{1.0, 0.0};
        sub.e2 = Vec{0.0, 1.0};
        sub.lambda = 1.5;
        for (int q = 0; q < 16; ++q) sub.density.emplace_back(1.0, 0.0);
        cases.push_back({"integral_q16", build_integral_flow({sub}, p), SampleBox::standard(2)});
    }
    { // forced solution by variation of constants (16-node density table)
        ModelParams p;
        p.dim = 3;
        p.nu = 0.8;
        TransverseSpec v0;
        v0.dim = 3;
        v0.groups.push_back(
            {Vec{0.0, 1.0, 0.0}, {{Vec{1.0, 0.0, 0.0}, WaveShape::sine(0.7, 1.0, 0.3)}}});
        std::vector<DensityNode> table;
        for (int q = 1; q <= 16; ++q) table.push_back({0.5 * q, std::exp(-0.5 * q), 0.5});
        const auto F = ForcingSpec::density_integral(Vec{0.0, 0.0, 1.0}, Vec{1.0, 0.0, 0.0}, table);
        const auto sol = build_forced_solution(v0, F, p);
        cases.push_back({"forced_solution", sol.combined, SampleBox::standard(3)});
        cases.push_back({"forced_steady_state", *sol.steady, SampleBox::standard(3)});
    }
    { // MGW + forced Kolmogorov superposition (shared direction)
        ModelParams p;
        p.dim = 3;
        p.nu = p.mu = 0.05;
        p.strat = -0.02;
        const auto kol = build_kolmogorov(1.0, 1.0, 0.9, 0.2, p);
        const FlowField mgw = build_mgw(1.0, 1.0, 0.6, 1, p);
        cases.push_back(
            {"superpose_mgw_kolmogorov", superpose({kol.field, mgw}, p), SampleBox::standard(3)});
    }
    return cases;
}

inline std::vector<SuiteCase> builtin_negative_cases() {
    ModelParams p;
    p.dim = 2;
    p.nu = 0.01;
    std::vector<SuiteCase> cases;
    for (auto kind : {NegativeKind::SelfDirected, NegativeKind::WavelengthMismatch,
                      NegativeKind::OrthogonalityBreak}) {
        FlowField f = build_negative_control(kind, p);
        cases.push_back({"negative_" + to_string(kind), std::move(f), SampleBox::standard(2), false});
    }
    return cases;
}

inline std::vector<IncompatiblePair> builtin_incompatible_pairs() {
    std::vector<IncompatiblePair> pairs;
    {
        ModelParams p;
        p.dim = 3;
        p.nu = p.mu = 1.0;
        p.strat = 8.0;
        HorizontalPlaneSpec hp;
        hp.k2 = {1.0, 0.0};
        pairs.push_back({"kolmogorov_plus_horizontal",
                         {build_kolmogorov(1.0, 1.0, 1.0, 0.0, p).field,
                          build_horizontal_plane_boussinesq(hp, p)},
                         p});
    }
    {
        ModelParams p;
        p.dim = 3;
        p.strat = -1.0;
        HorizontalPlaneSpec hp;
        hp.k2 = {1.0, 0.0};
        pairs.push_back({"mgw_plus_horizontal",
                         {build_mgw(1.0, 1.0, 1.0, 1, p), build_horizontal_plane_boussinesq(hp, p)},
                         p});
    }
    return pairs;
}

} // namespace pwflow
