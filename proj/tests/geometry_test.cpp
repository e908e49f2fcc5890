#include "mvpose/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace mvpose;

namespace {

geom::Camera test_camera() {
    geom::Camera camera;
    camera.id = "cam";
    camera.intrinsics = {500.0, 500.0, 320.0, 240.0, 640, 480};
    return camera;
}

}  // namespace

TEST_CASE("transform_to_camera basics") {
    geom::CameraExtrinsics identity;
    CHECK(geom::transform_to_camera(identity, {1, 2, 3}) == geom::Vec3(1, 2, 3));

    geom::CameraExtrinsics translated;
    translated.translation = {0, 0, 5};
    CHECK(geom::transform_to_camera(translated, {0, 0, 0}) == geom::Vec3(0, 0, 5));

    // 90 degrees about z maps x to y; hand-applied rotation matrix.
    geom::CameraExtrinsics rotated;
    rotated.rotation << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    const geom::Vec3 result = geom::transform_to_camera(rotated, {1, 0, 0});
    CHECK(result.isApprox(geom::Vec3(0, 1, 0), 1e-15));
}

TEST_CASE("project on and off the optical axis") {
    const geom::Camera camera = test_camera();
    const auto center = geom::project(camera, {0, 0, 2});
    REQUIRE(center.has_value());
    CHECK(center->x() == doctest::Approx(320.0).epsilon(1e-12));
    CHECK(center->y() == doctest::Approx(240.0).epsilon(1e-12));

    const auto off_axis = geom::project(camera, {0.1, 0, 2});
    REQUIRE(off_axis.has_value());
    CHECK(off_axis->x() == doctest::Approx(345.0).epsilon(1e-12));  // 500*0.1/2 = 25
    CHECK(off_axis->y() == doctest::Approx(240.0).epsilon(1e-12));
}

TEST_CASE("project rejects points behind the camera") {
    const geom::Camera camera = test_camera();
    CHECK_FALSE(geom::project(camera, {0, 0, -1}).has_value());
    CHECK_FALSE(geom::project(camera, {0, 0, 0}).has_value());
    CHECK_FALSE(geom::project(camera, {0, 0, 1e-7}).has_value());
    CHECK(geom::project(camera, {0, 0, 1e-7}, 1e-8).has_value());
}

TEST_CASE("projection may land outside image bounds") {
    const geom::Camera camera = test_camera();
    const auto p = geom::project(camera, {10.0, 0, 2});
    REQUIRE(p.has_value());
    CHECK(p->x() > camera.intrinsics.width);
}

TEST_CASE("reprojection error squared") {
    const geom::Camera camera = test_camera();
    const auto exact = geom::project(camera, {0.1, 0, 2});
    REQUIRE(exact.has_value());
    CHECK(*geom::reprojection_error_sq(camera, {0.1, 0, 2}, *exact) == 0.0);
    CHECK(*geom::reprojection_error_sq(camera, {0.1, 0, 2}, {345.0, 243.0}) ==
          doctest::Approx(9.0).epsilon(1e-12));
    CHECK_FALSE(geom::reprojection_error_sq(camera, {0, 0, -1}, {0, 0}).has_value());
}

TEST_CASE("reprojection error matches the scalar oracle on random cases") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const geom::Camera camera = oracles::random_camera(rng, "c", {0, 0, 1});
        const Eigen::Vector3d p(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                rng.uniform(0.2, 2.0));
        const Eigen::Vector2d obs(rng.uniform(0, 640), rng.uniform(0, 480));
        const auto got = geom::reprojection_error_sq(camera, p, obs);
        const auto expected = oracles::scalar_reproj_sq(oracles::to_scalar(camera), p.x(),
                                                        p.y(), p.z(), obs.x(), obs.y());
        REQUIRE(got.has_value() == expected.has_value());
        if (got) {
            CHECK(*got == doctest::Approx(*expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("project and backproject round trip") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const geom::Camera camera = oracles::random_camera(rng, "c", {0, 0, 1});
        const Eigen::Vector2d pixel(rng.uniform(0, 640), rng.uniform(0, 480));
        const double depth = rng.uniform(0.1, 10.0);
        const auto round = geom::project(camera, geom::backproject(camera, pixel, depth));
        REQUIRE(round.has_value());
        CHECK((*round - pixel).norm() < 1e-9);
    }
}

TEST_CASE("projection is invariant under a common rigid transform") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const geom::Camera camera = oracles::random_camera(rng, "c", {0, 0, 1});
        const Eigen::Vector3d p(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                rng.uniform(0.0, 2.0));
        const auto before = geom::project(camera, p);

        const Eigen::Matrix3d m = oracles::random_rotation(rng);
        const Eigen::Vector3d shift(rng.gaussian(0, 2), rng.gaussian(0, 2),
                                    rng.gaussian(0, 2));
        geom::Camera moved = camera;
        moved.extrinsics.rotation = camera.extrinsics.rotation * m.transpose();
        moved.extrinsics.translation =
            camera.extrinsics.translation - moved.extrinsics.rotation * shift;
        const auto after = geom::project(moved, m * p + shift);

        REQUIRE(before.has_value() == after.has_value());
        if (before) {
            CHECK((*before - *after).norm() < 1e-9);
        }
    }
}

TEST_CASE("extrinsics validation") {
    geom::CameraExtrinsics good;
    CHECK_NOTHROW(geom::validate_extrinsics(good, "ok"));

    geom::CameraExtrinsics skewed;
    skewed.rotation(0, 1) = 1e-3;
    CHECK_THROWS_WITH_AS(geom::validate_extrinsics(skewed, "bad"),
                         doctest::Contains("bad"), std::invalid_argument);

    geom::CameraExtrinsics mirrored;
    mirrored.rotation = Eigen::Matrix3d::Identity();
    mirrored.rotation(2, 2) = -1.0;  // orthonormal but det = -1
    CHECK_THROWS_AS(geom::validate_extrinsics(mirrored, "mirror"), std::invalid_argument);
}

TEST_CASE("intrinsics validation") {
    geom::CameraIntrinsics bad{-500.0, 500.0, 320.0, 240.0, 640, 480};
    CHECK_THROWS_AS(geom::validate_intrinsics(bad, "neg"), std::invalid_argument);
    geom::CameraIntrinsics zero_size{500.0, 500.0, 320.0, 240.0, 0, 480};
    CHECK_THROWS_AS(geom::validate_intrinsics(zero_size, "size"), std::invalid_argument);
}
