#include "cnmbi/density.hpp"
#include "cnmbi/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace cnmbi;

namespace {

Dataset make_points(std::vector<double> coords, std::size_t d) {
    Dataset data;
    data.n = coords.size() / d;
    data.d = d;
    data.points = std::move(coords);
    return data;
}

Dataset random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                      double span = 5.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, span);
    Dataset data;
    data.n = n;
    data.d = d;
    data.points.resize(n * d);
    for (double& v : data.points)
        v = u(rng);
    return data;
}

} // namespace

TEST_CASE("two points: dc equals their distance") {
    Dataset data = make_points({0.0, 0.0, 3.0, 4.0}, 2);
    DistanceIndex index = build_distance_index(data, 0.02);
    CHECK(index.dc == 5.0);
    CHECK(index(0, 1) == 5.0);
    CHECK(index(1, 0) == 5.0);
    CHECK(index(0, 0) == 0.0);
}

TEST_CASE("dc picks the ceil(percentile * m) smallest pair") {
    // pairs of {0,1,2,3}: distances {1,1,2,1,2,3}; sorted {1,1,1,2,2,3}
    Dataset data = make_points({0.0, 1.0, 2.0, 3.0}, 1);
    DistanceIndex low = build_distance_index(data, 0.02); // rank 1
    CHECK(low.dc == 1.0);
    DistanceIndex mid = build_distance_index(data, 0.5); // rank 3
    CHECK(mid.dc == 1.0);
    DistanceIndex high = build_distance_index(data, 0.7); // rank ceil(4.2) = 5
    CHECK(high.dc == 2.0);
    DistanceIndex top = build_distance_index(data, 0.999); // rank 6
    CHECK(top.dc == 3.0);
}

TEST_CASE("zero distances promote dc to the smallest positive") {
    Dataset data = make_points({1.0, 1.0, 1.0, 7.0}, 1); // dup pair + far point
    DistanceIndex index = build_distance_index(data, 0.02);
    CHECK(index.dc == 6.0);
}

TEST_CASE("identical points are degenerate") {
    Dataset data = make_points({2.0, 2.0, 2.0, 2.0, 2.0, 2.0}, 2);
    CHECK_THROWS_AS(build_distance_index(data, 0.02), DegenerateDataError);
}

TEST_CASE("percentile bounds are validated") {
    Dataset data = make_points({0.0, 1.0}, 1);
    CHECK_THROWS_AS(build_distance_index(data, 0.0), ConfigError);
    CHECK_THROWS_AS(build_distance_index(data, 1.0), ConfigError);
}

TEST_CASE("two-point profile: top point takes the max-distance branch") {
    Dataset data = make_points({0.0, 5.0}, 1);
    DistanceIndex index = build_distance_index(data, 0.02);
    DensityProfile profile = density_profile(index);
    double expected_rho = std::exp(-1.0); // the only pair sits exactly at dc
    CHECK(profile.rho[0] == expected_rho);
    CHECK(profile.rho[1] == expected_rho);
    // equal rho: index 0 counts as denser, so it is the top point
    CHECK(profile.delta[0] == 5.0);
    CHECK(profile.delta[1] == 5.0);
    CHECK(profile.order[0] == 0);
}

TEST_CASE("delta of a far point is its distance to the denser mass") {
    // coincident pair at 0 (density 1+) and a single far point at 10
    Dataset data = make_points({0.0, 0.0, 10.0}, 1);
    DistanceIndex index = distance_index_with_dc(data, 1.0);
    DensityProfile profile = density_profile(index);
    CHECK(profile.rho[0] > profile.rho[2]);
    CHECK(profile.delta[2] == 10.0);
    // top point 0 takes max distance; point 1 sits at distance 0 from it
    CHECK(profile.delta[0] == 10.0);
    CHECK(profile.delta[1] == 0.0);
}

TEST_CASE("gamma order is descending with index tie-break") {
    Dataset data = random_points(30, 2, 99);
    DistanceIndex index = build_distance_index(data, 0.1);
    DensityProfile profile = density_profile(index);
    REQUIRE(profile.order.size() == 30);
    for (std::size_t r = 1; r < profile.order.size(); ++r) {
        std::size_t a = profile.order[r - 1];
        std::size_t b = profile.order[r];
        bool ok = profile.gamma[a] > profile.gamma[b] ||
                  (profile.gamma[a] == profile.gamma[b] && a < b);
        CHECK(ok);
    }
}

TEST_CASE("density centers copy the source rows") {
    Dataset data = random_points(25, 3, 7);
    DistanceIndex index = build_distance_index(data, 0.05);
    DensityProfile profile = density_profile(index);
    CenterSet centers = density_centers(profile, data, 4);
    CHECK(centers.kind == CenterKind::density);
    CHECK(centers.k == 4);
    CHECK(centers.d == 3);
    REQUIRE(centers.source_indices.size() == 4);
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(centers.source_indices[p] == profile.order[p]);
        for (std::size_t f = 0; f < 3; ++f)
            CHECK(centers.center(p)[f] == data.at(profile.order[p], f));
    }
    CHECK_THROWS_AS(density_centers(profile, data, 0), ConfigError);
    CHECK_THROWS_AS(density_centers(profile, data, 26), ConfigError);
}

TEST_CASE("rho is permutation equivariant") {
    Dataset data = random_points(40, 3, 11);
    DistanceIndex index = build_distance_index(data, 0.05);
    DensityProfile profile = density_profile(index);

    std::vector<std::size_t> perm(data.n);
    for (std::size_t i = 0; i < data.n; ++i)
        perm[i] = i;
    std::mt19937_64 rng(5);
    std::shuffle(perm.begin(), perm.end(), rng);

    Dataset shuffled;
    shuffled.n = data.n;
    shuffled.d = data.d;
    shuffled.points.resize(data.n * data.d);
    for (std::size_t i = 0; i < data.n; ++i)
        for (std::size_t f = 0; f < data.d; ++f)
            shuffled.points[perm[i] * data.d + f] = data.at(i, f);

    DistanceIndex sindex = build_distance_index(shuffled, 0.05);
    CHECK(sindex.dc == index.dc);
    DensityProfile sprofile = density_profile(sindex);
    for (std::size_t i = 0; i < data.n; ++i)
        CHECK(sprofile.rho[perm[i]] ==
              doctest::Approx(profile.rho[i]).epsilon(1e-12));
}

TEST_CASE("power-of-two scaling is exactly covariant") {
    Dataset data = random_points(35, 2, 21);
    Dataset scaled = data;
    for (double& v : scaled.points)
        v *= 4.0;

    DistanceIndex index = build_distance_index(data, 0.05);
    DistanceIndex sindex = build_distance_index(scaled, 0.05);
    CHECK(sindex.dc == 4.0 * index.dc);

    DensityProfile profile = density_profile(index);
    DensityProfile sprofile = density_profile(sindex);
    for (std::size_t i = 0; i < data.n; ++i) {
        CHECK(sprofile.rho[i] == profile.rho[i]);
        CHECK(sprofile.delta[i] == 4.0 * profile.delta[i]);
    }
    CHECK(sprofile.order == profile.order);
}

TEST_CASE("denser_than breaks exact ties by index") {
    std::vector<double> rho = {1.0, 1.0, 2.0};
    CHECK(denser_than(rho, 0, 1));
    CHECK(!denser_than(rho, 1, 0));
    CHECK(denser_than(rho, 2, 0));
    CHECK(!denser_than(rho, 0, 0));
}
