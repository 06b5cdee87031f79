#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "heatrk/geometry.hpp"

using heatrk::contains;
using heatrk::cplx;
using heatrk::region_kind;

TEST_CASE("region membership at margin zero", "[geometry]") {
    CHECK(contains(region_kind::square_d, {0.5, 0.0}, 0.0));
    CHECK(contains(region_kind::square_d, {1.5, 0.4}, 0.0));
    CHECK_FALSE(contains(region_kind::square_d, {1.5, 0.6}, 0.0));
    CHECK_FALSE(contains(region_kind::square_d, {-0.1, 0.0}, 0.0));
    CHECK_FALSE(contains(region_kind::square_d, {2.1, 0.0}, 0.0));

    CHECK(contains(region_kind::square_q, {0.5, 0.45}, 0.0));
    CHECK_FALSE(contains(region_kind::square_q, {0.8, 0.3}, 0.0));

    CHECK(contains(region_kind::sector, {1.0, 0.99}, 0.0));
    CHECK_FALSE(contains(region_kind::sector, {1.0, 1.01}, 0.0));
    CHECK_FALSE(contains(region_kind::sector, {-0.5, 0.0}, 0.0));

    CHECK(contains(region_kind::half_plane, {0.1, 5.0}, 0.05));
    CHECK_FALSE(contains(region_kind::half_plane, {0.1, 5.0}, 0.2));

    CHECK(contains(region_kind::shifted_d, {-0.5, 0.0}, 0.0));
    CHECK_FALSE(contains(region_kind::shifted_d, {1.1, 0.0}, 0.0));
}

TEST_CASE("margins shrink regions", "[geometry]") {
    const cplx p{0.1, 0.05};
    CHECK(contains(region_kind::square_d, p, 0.0));
    CHECK_FALSE(contains(region_kind::square_d, p, 0.1));
    CHECK_THROWS_AS(contains(region_kind::square_d, p, -0.1), heatrk::domain_error);
}

TEST_CASE("periodized regions are shift-invariant", "[geometry]") {
    const cplx p{0.7, 0.2};
    for (int k = -3; k <= 3; ++k) {
        CHECK(contains(region_kind::periodized_d, p + 2.0 * k, 0.0));
        CHECK(contains(region_kind::periodized_q, cplx{0.4, 0.1} + 1.0 * k, 0.0));
    }
    // the excluded lattice stays excluded under shifts
    CHECK_FALSE(contains(region_kind::periodized_d, {2.0, 0.0}, 0.0));
    CHECK_FALSE(contains(region_kind::periodized_q, {1.0, 0.0}, 0.0));
}

TEST_CASE("non-finite points are never contained", "[geometry]") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_FALSE(contains(region_kind::square_d, {nan, 0.0}, 0.0));
    CHECK_FALSE(contains(region_kind::sector, {inf, 0.0}, 0.0));
}

TEST_CASE("region names round-trip", "[geometry]") {
    for (region_kind k : {region_kind::square_d, region_kind::square_q, region_kind::sector,
                          region_kind::half_plane, region_kind::periodized_d,
                          region_kind::periodized_q, region_kind::shifted_d}) {
        CHECK(heatrk::region_from_string(heatrk::to_string(k)) == k);
    }
    CHECK_THROWS_AS(heatrk::region_from_string("nonsense"), heatrk::domain_error);
}

TEST_CASE("sample_points is deterministic and respects the margin", "[geometry]") {
    const auto a = heatrk::sample_points(region_kind::square_q, 40, 0.1, 31);
    const auto b = heatrk::sample_points(region_kind::square_q, 40, 0.1, 31);
    REQUIRE(a.size() == 40);
    REQUIRE(a == b);
    for (const cplx& p : a) CHECK(contains(region_kind::square_q, p, 0.1));

    const auto c = heatrk::sample_points(region_kind::square_q, 40, 0.1, 32);
    CHECK(a != c);
}

TEST_CASE("sample_points rejects impossible requests", "[geometry]") {
    // margin 0.9 exceeds the inradius of the square domain: nothing to sample
    CHECK_THROWS_AS(heatrk::sample_points(region_kind::square_d, 1, 0.9, 1),
                    heatrk::domain_error);
    CHECK_THROWS_AS(heatrk::sample_points(region_kind::square_d, 0, 0.1, 1),
                    heatrk::domain_error);
    CHECK_THROWS_AS(heatrk::sample_points(region_kind::square_d, 1, 0.0, 1),
                    heatrk::domain_error);
}
