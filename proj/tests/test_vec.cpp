#include "doctest.h"

#include "pwflow/sampling.hpp"
#include "pwflow/vec.hpp"

using namespace pwflow;

TEST_CASE("vector algebra basics") {
    Vec a{1.0, 2.0, 3.0}, b{-1.0, 0.5, 2.0};
    CHECK(dot(a, b) == doctest::Approx(6.0));
    CHECK((a + b)[0] == doctest::Approx(0.0));
    CHECK((a - b)[2] == doctest::Approx(1.0));
    CHECK((2.0 * a).norm() == doctest::Approx(2.0 * a.norm()));
    CHECK_THROWS_AS(dot(a, Vec{1.0, 2.0}), structural_error);
}

TEST_CASE("cross_e3 and rotations") {
    CHECK((cross_e3(Vec{1.0, 0.0, 0.0}) - Vec{0.0, 1.0, 0.0}).max_abs() == 0.0);
    CHECK((cross_e3(Vec{0.0, 1.0, 0.0}) - Vec{-1.0, 0.0, 0.0}).max_abs() == 0.0);
    CHECK((perp2(3.0, 4.0) - Vec{-4.0, 3.0}).max_abs() == 0.0);
}

TEST_CASE("gradient matrix application") {
    Mat g(2, 2);
    g(0, 0) = 1.0;
    g(0, 1) = 2.0;
    g(1, 0) = 3.0;
    g(1, 1) = 4.0;
    const Vec r = g.apply(Vec{1.0, 1.0});
    CHECK(r[0] == doctest::Approx(3.0));
    CHECK(r[1] == doctest::Approx(7.0));
    CHECK(g.trace() == doctest::Approx(5.0));
}

TEST_CASE("orthonormal complement: coordinate axis") {
    const auto basis = orthonormal_complement_basis({Vec{1.0, 0.0, 0.0}});
    REQUIRE(basis.size() == 2);
    for (const Vec& v : basis) {
        CHECK(std::abs(dot(v, Vec{1.0, 0.0, 0.0})) <= 1e-12);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::abs(dot(basis[0], basis[1])) <= 1e-12);
}

TEST_CASE("orthonormal complement: hand-checked Gram-Schmidt case") {
    // complement of span{(1,1,0), (0,0,1)} is the line through (1,-1,0)/sqrt(2)
    const auto basis = orthonormal_complement_basis({Vec{1.0, 1.0, 0.0}, Vec{0.0, 0.0, 1.0}});
    REQUIRE(basis.size() == 1);
    const Vec& v = basis.front();
    CHECK(std::abs(dot(v, Vec{1.0, 1.0, 0.0})) <= 1e-12);
    CHECK(std::abs(dot(v, Vec{0.0, 0.0, 1.0})) <= 1e-12);
    CHECK(std::abs(v[0]) == doctest::Approx(0.7071067811865475).epsilon(1e-12));
    CHECK(std::abs(v[1]) == doctest::Approx(0.7071067811865475).epsilon(1e-12));
    CHECK(v[0] * v[1] < 0.0); // opposite signs
    CHECK(std::abs(v[2]) <= 1e-12);
}

TEST_CASE("orthonormal complement: error paths") {
    // full span: no room for a complement
    CHECK_THROWS_AS(orthonormal_complement_basis({Vec{1.0, 0.0}, Vec{0.0, 1.0}}),
                    structural_error);
    // linearly dependent input
    CHECK_THROWS_AS(orthonormal_complement_basis({Vec{1.0, 1.0, 0.0}, Vec{2.0, 2.0, 0.0}}),
                    structural_error);
}

TEST_CASE("orthonormal complement: randomized property") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 4; // dims 2..5
        const std::size_t count = 1 + rng.next_u64() % (n - 1);
        std::vector<Vec> input;
        for (std::size_t i = 0; i < count; ++i) {
            Vec v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = rng.uniform(-2.0, 2.0);
            input.push_back(v);
        }
        std::vector<Vec> basis;
        try {
            basis = orthonormal_complement_basis(input);
        } catch (const structural_error&) {
            continue; // random input happened to be (near-)dependent
        }
        REQUIRE(basis.size() == n - count);
        for (const Vec& b : basis) {
            CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-12));
            for (const Vec& v : input) CHECK(std::abs(dot(b, v)) <= 1e-12 * (1.0 + v.norm()));
            for (const Vec& o : basis)
                if (&o != &b) CHECK(std::abs(dot(b, o)) <= 1e-12);
        }
    }
}
