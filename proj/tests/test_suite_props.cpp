#include "doctest.h"

#include <cmath>
#include <sstream>

#include "pwflow/calculus.hpp"
#include "pwflow/config.hpp"
#include "pwflow/suite.hpp"

using namespace pwflow;

// properties every constructed family must share, checked across the whole
// bundled case matrix

TEST_CASE("every positive builder output is divergence free") {
    for (const SuiteCase& c : builtin_positive_cases()) {
        CAPTURE(c.name);
        SampleBox box = c.box;
        const auto pts = sample_points(box, 1000, 2027);
        for (const auto& [t, x] : pts) {
            const FieldJet J = c.field.jet(t, x);
            const double div = J.v.gradient.trace();
            CHECK(std::abs(div) <= 1e-11 * (1.0 + J.v.gradient.max_abs()));
        }
    }
}

TEST_CASE("galilean consistency: omega = c·k on every drift-built component") {
    for (const SuiteCase& c : builtin_positive_cases()) {
        const FlowFamily fam = c.field.family();
        // dispersive families pin omega by other relations
        if (fam == FlowFamily::MGW || fam == FlowFamily::Kolmogorov ||
            fam == FlowFamily::Superposition)
            continue;
        CAPTURE(c.name);
        for (const VelocityWave& vw : c.field.vel_waves)
            CHECK(std::abs(vw.w.omega - dot(c.field.drift, vw.w.k)) <= 1e-12);
    }
}

TEST_CASE("negative controls carry their failure metadata") {
    for (const SuiteCase& c : builtin_negative_cases()) {
        CHECK(c.field.non_solution);
        CHECK_FALSE(c.field.broken_invariant.empty());
        CHECK_FALSE(c.field.expected_channel.empty());
    }
}

TEST_CASE("csv of the zero field is exactly zero in every data column") {
    ModelParams p;
    p.dim = 2;
    const FlowField zero(2, p, FlowFamily::Transverse, SystemTag::Euler);
    GridSpec grid;
    grid.points = {3, 3};
    grid.box_lo = Vec{-1.0, -1.0};
    grid.box_hi = Vec{1.0, 1.0};
    grid.t_values = {0.0};
    const std::string csv = csv_for_grid(zero, SystemTag::Euler, grid);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        REQUIRE(cols.size() == 11);
        for (std::size_t i = 3; i < cols.size(); ++i) CHECK(cols[i] == "0");
    }
    CHECK(rows == 9);
}
