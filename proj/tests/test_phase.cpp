#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unireduce/phase.hpp"

using namespace unireduce;

namespace {
constexpr double kPi = std::numbers::pi;

cplx polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
}  // namespace

TEST_CASE("nearest_root quantizes with the half-open residual interval") {
    const PhaseApproximation exact = nearest_root(1.0, 4);
    CHECK(exact.alpha.index == 0);
    CHECK(std::abs(exact.residual_phase) <= 1e-15);

    const PhaseApproximation small = nearest_root(polar_unit(0.1), 2);
    CHECK(small.alpha.index == 0);
    CHECK(small.residual_phase == doctest::Approx(0.1).epsilon(1e-12));

    // Boundary phi = pi/3 stays with the root below.
    const PhaseApproximation boundary = nearest_root(polar_unit(kPi / 3.0), 3);
    CHECK(boundary.alpha.index == 0);
    CHECK(boundary.residual_phase == doctest::Approx(kPi / 3.0).epsilon(1e-12));

    // The mirrored point -pi/3 is excluded, so it wraps to index 2.
    const PhaseApproximation mirrored = nearest_root(polar_unit(-kPi / 3.0), 3);
    CHECK(mirrored.alpha.index == 2);
    CHECK(mirrored.residual_phase == doctest::Approx(kPi / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(nearest_root(cplx(0.5, 0.0), 3), Error);
}

TEST_CASE("nearest_root round-trips every root up to order 64") {
    for (std::size_t order = 1; order <= 64; ++order) {
        for (std::size_t index = 0; index < order; ++index) {
            const PhaseApproximation round =
                nearest_root(RootOfUnity{order, index}.value(), order);
            CHECK(round.alpha.index == index);
            CHECK(std::abs(round.residual_phase) <= 1e-12);
        }
    }
}

TEST_CASE("adjacent root distance dominates 4/n") {
    for (std::size_t order = 2; order <= 64; ++order)
        CHECK(RootOfUnity::adjacent_distance(order) >=
              4.0 / static_cast<double>(order) - 1e-12);
}

TEST_CASE("arc_chord_bounds examples") {
    {
        const auto [lower, chord, upper] = arc_chord_bounds(0.0);
        CHECK(lower == 0.0);
        CHECK(chord == 0.0);
        CHECK(upper == 0.0);
    }
    {
        // Endpoint phi = pi: the lower bound is attained.
        const auto [lower, chord, upper] = arc_chord_bounds(kPi);
        CHECK(lower == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(chord == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(upper == doctest::Approx(kPi).epsilon(1e-14));
    }
    {
        const auto [lower, chord, upper] = arc_chord_bounds(kPi / 2.0);
        CHECK(lower == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(chord == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(upper == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(arc_chord_bounds(4.0), Error);
}

TEST_CASE("phase_sum_bound on constructed tuples") {
    // Zero phases satisfy the hypothesis for any eps and sit strictly below.
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    CHECK(phase_sum_bound(zeros, 1e-6) > 0.0);

    {
        // Single phase 0.01: the hypothesis needs eps >= 1 - cos(0.005).
        const std::vector<double> phis{0.01};
        const double eps_floor = 1.0 - std::cos(0.005);
        const double eps = eps_floor * (1.0 + 1e-6);
        const double bound = phase_sum_bound(phis, eps);
        CHECK(0.01 < bound);
        // Below the floor the hypothesis genuinely fails.
        CHECK_THROWS_AS(phase_sum_bound(phis, 6.25e-6), Error);
    }
    {
        // Symmetric pair with eps measured from the hypothesis at equality.
        const std::vector<double> phis{0.02, -0.02};
        const double eps = 1.0 - std::abs(1.0 + polar_unit(0.02) + polar_unit(-0.02)) / 3.0;
        const double bound = phase_sum_bound(phis, eps + 1e-15);
        CHECK(0.04 < bound);
    }

    CHECK_THROWS_AS(phase_sum_bound(std::vector<double>{}, 0.5), Error);
    CHECK_THROWS_AS(phase_sum_bound(std::vector<double>{4.0}, 0.5), Error);
}

TEST_CASE("approx_scalar examples") {
    {
        const std::vector<cplx> ones{1.0, 1.0, 1.0};
        const PhaseApproximation out = approx_scalar(ones, 1e-4);
        CHECK(out.alpha.index == 0);
        CHECK(out.l1_distance <= 1e-14);
        CHECK(out.l2_distance <= 1e-14);
    }
    {
        const double theta = 1e-3;
        const std::vector<cplx> tuple{polar_unit(theta), polar_unit(-theta), 1.0};
        const double eps = 1.0 - std::abs(tuple[0] + tuple[1] + tuple[2]) / 3.0 + 1e-15;
        const PhaseApproximation out = approx_scalar(tuple, eps);
        CHECK(out.alpha.index == 0);
        CHECK(out.l1_distance == doctest::Approx(2.0 * std::abs(polar_unit(theta) - 1.0))
                                      .epsilon(1e-10));
    }
    {
        // (-1, -1): the anchor itself is a square root of unity.
        const std::vector<cplx> tuple{-1.0, -1.0};
        const PhaseApproximation out = approx_scalar(tuple, 1e-4);
        CHECK(out.alpha.index == 1);
        CHECK(out.l1_distance <= 1e-14);
    }

    const std::vector<cplx> ones{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(approx_scalar(ones, 0.5), Error);  // eps >= 2/n^3
    const std::vector<cplx> skewed{1.0, 1.0, -1.0};
    CHECK_THROWS_AS(approx_scalar(skewed, 1e-4), Error);  // product != 1 and sum short
}

TEST_CASE("rearrangement_bound examples") {
    const std::vector<double> two{2.0, 1.0};
    const std::vector<std::size_t> id{0, 1};
    const std::vector<std::size_t> swap{1, 0};

    auto [p1, s1] = rearrangement_bound(two, two, id);
    CHECK(p1 == doctest::Approx(5.0));
    CHECK(s1 == doctest::Approx(5.0));

    auto [p2, s2] = rearrangement_bound(two, two, swap);
    CHECK(p2 == doctest::Approx(4.0));
    CHECK(s2 == doctest::Approx(5.0));

    const std::vector<double> flat{1.0, 1.0, 1.0};
    const std::vector<double> steps{3.0, 2.0, 1.0};
    const std::vector<std::size_t> rotate{2, 0, 1};
    auto [p3, s3] = rearrangement_bound(flat, steps, rotate);
    CHECK(p3 == doctest::Approx(6.0));
    CHECK(s3 == doctest::Approx(6.0));

    CHECK_THROWS_AS(rearrangement_bound(two, flat, id), Error);
    const std::vector<double> unsorted{1.0, 2.0};
    CHECK_THROWS_AS(rearrangement_bound(unsorted, two, id), Error);
}

TEST_CASE("obtuse_shrink examples") {
    CHECK(obtuse_shrink(2.0, 1.0, kPi) == doctest::Approx(1.0));
    CHECK(obtuse_shrink(1.0, 0.5, 2.0 * kPi / 3.0) ==
          doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));

    const double direct = std::abs(3.0 + polar_unit(4.0 * kPi / 3.0) * 2.9);
    CHECK(obtuse_shrink(3.0, 2.9, 4.0 * kPi / 3.0) == doctest::Approx(direct));
    CHECK(direct <= 3.0);

    CHECK_THROWS_AS(obtuse_shrink(1.0, 2.0, kPi), Error);
    CHECK_THROWS_AS(obtuse_shrink(2.0, 1.0, 0.1), Error);
}

TEST_CASE("arc-chord ordering holds on random phases") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uphi(-kPi, kPi);
    for (int i = 0; i < 2000; ++i) {
        const auto [lower, chord, upper] = arc_chord_bounds(uphi(rng));
        CHECK(lower <= chord + 1e-14);
        CHECK(chord <= upper + 1e-14);
    }
}
