#include "mvpose/fusion.hpp"

#include "mvpose/synth.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace mvpose;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rig of C cameras around the origin-ish working volume.
std::vector<geom::Camera> ring(int count) {
    synth::RigSpec spec;
    spec.camera_count = count;
    return synth::make_rig(spec);
}

fusion::ViewPrediction exact_view(const geom::Camera& camera,
                                  const std::vector<Eigen::Vector3d>& joints) {
    fusion::ViewPrediction view;
    view.camera_id = camera.id;
    view.pose3d.joints = joints;
    view.pose3d.confidence.assign(joints.size(), 1.0);
    for (const Eigen::Vector3d& p : joints) {
        const auto projected = geom::project(camera, p);
        REQUIRE(projected.has_value());
        view.detection2d.joints.push_back(*projected);
        view.detection2d.confidence.push_back(1.0);
        view.detection2d.visible.push_back(true);
    }
    return view;
}

}  // namespace

TEST_CASE("per_joint_errors is zero for exact predictions") {
    const auto cameras = ring(4);
    const std::vector<Eigen::Vector3d> joints = {{0.1, -0.2, 1.1}, {0.0, 0.3, 0.8}};
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) preds.push_back(exact_view(cam, joints));

    const Eigen::MatrixXd errors = fusion::per_joint_errors(preds, cameras);
    REQUIRE(errors.rows() == 2);
    REQUIRE(errors.cols() == 4);
    CHECK(errors.maxCoeff() < 1e-18);
}

TEST_CASE("per_joint_errors averages over contributing cameras") {
    const auto cameras = ring(2);
    const Eigen::Vector3d p(0.05, -0.1, 1.0);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) preds.push_back(exact_view(cam, {p}));
    // Known detection offsets: 2 px in cam0 (4 px^2), 4 px in cam1 (16 px^2).
    preds[0].detection2d.joints[0].x() += 2.0;
    preds[1].detection2d.joints[0].y() += 4.0;

    const Eigen::MatrixXd errors = fusion::per_joint_errors(preds, cameras);
    CHECK(errors(0, 0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(errors(0, 1) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("per_joint_errors matches a brute-force triple loop") {
    Rng rng(31);
    const auto cameras = ring(3);
    const int joint_count = 5;
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) {
        fusion::ViewPrediction view;
        view.camera_id = cam.id;
        for (int j = 0; j < joint_count; ++j) {
            view.pose3d.joints.emplace_back(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                            rng.uniform(0.5, 1.5));
            view.pose3d.confidence.push_back(1.0);
            view.detection2d.joints.emplace_back(rng.uniform(0, 640), rng.uniform(0, 480));
            view.detection2d.confidence.push_back(1.0);
            view.detection2d.visible.push_back(rng.bernoulli(0.8));
        }
        preds.push_back(std::move(view));
    }

    const Eigen::MatrixXd errors = fusion::per_joint_errors(preds, cameras);
    for (int j = 0; j < joint_count; ++j) {
        for (int i = 0; i < 3; ++i) {
            double sum = 0.0;
            int n = 0;
            for (int k = 0; k < 3; ++k) {
                if (!preds[k].detection2d.visible[j]) continue;
                const auto e = oracles::scalar_reproj_sq(
                    oracles::to_scalar(cameras[k]), preds[i].pose3d.joints[j].x(),
                    preds[i].pose3d.joints[j].y(), preds[i].pose3d.joints[j].z(),
                    preds[k].detection2d.joints[j].x(), preds[k].detection2d.joints[j].y());
                if (!e) continue;
                sum += *e;
                ++n;
            }
            if (n == 0) {
                CHECK(std::isinf(errors(j, i)));
            } else {
                CHECK(errors(j, i) == doctest::Approx(sum / n).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("per_joint_errors rejects unknown camera ids") {
    const auto cameras = ring(2);
    std::vector<fusion::ViewPrediction> preds;
    preds.push_back(exact_view(cameras[0], {{0, 0, 1}}));
    preds.back().camera_id = "ghost";
    CHECK_THROWS_WITH_AS(fusion::per_joint_errors(preds, cameras),
                         doctest::Contains("ghost"), std::invalid_argument);
}

TEST_CASE("per_joint_weights inverts errors with a floor") {
    fusion::FusionConfig config;
    Eigen::MatrixXd errors(1, 3);
    errors << 4.0, 0.0, kInf;
    const fusion::WeightMatrix weights = fusion::per_joint_weights(errors, config);
    CHECK(weights.weights(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(weights.weights(0, 1) == doctest::Approx(1e6).epsilon(1e-12));
    CHECK(weights.weights(0, 2) == 0.0);
}

TEST_CASE("weight monotonicity in the error") {
    fusion::FusionConfig config;
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const double e1 = rng.uniform(0.0, 100.0);
        const double e2 = e1 + rng.uniform(0.0, 100.0);
        Eigen::MatrixXd errors(1, 2);
        errors << e1, e2;
        const auto weights = fusion::per_joint_weights(errors, config);
        CHECK(weights.weights(0, 0) >= weights.weights(0, 1));
    }
}

TEST_CASE("fuse is a convexity fixed point on identical predictions") {
    const auto cameras = ring(3);
    const std::vector<Eigen::Vector3d> joints = {{0.2, 0.1, 1.2}};
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) preds.push_back(exact_view(cam, joints));

    fusion::WeightMatrix weights;
    weights.weights = Eigen::MatrixXd(1, 3);
    weights.weights << 0.3, 1.7, 0.9;
    const skel::Pose3D fused = fusion::fuse(preds, weights, {});
    CHECK((fused.joints[0] - joints[0]).norm() < 1e-12);
    CHECK(fused.confidence[0] == 1.0);
}

TEST_CASE("fuse computes the weighted average") {
    const auto cameras = ring(2);
    std::vector<fusion::ViewPrediction> preds;
    preds.push_back(exact_view(cameras[0], {{0.0, 0.0, 1.0}}));
    preds.push_back(exact_view(cameras[1], {{4.0, 0.0, 1.0}}));
    fusion::WeightMatrix weights;
    weights.weights = Eigen::MatrixXd(1, 2);
    weights.weights << 1.0, 3.0;
    const skel::Pose3D fused = fusion::fuse(preds, weights, {});
    CHECK(fused.joints[0].x() == 3.0);  // (0*1 + 4*3) / 4
    CHECK(fused.joints[0].z() == 1.0);
}

TEST_CASE("fuse with a single view returns that view") {
    const auto cameras = ring(1);
    const std::vector<Eigen::Vector3d> joints = {{0.3, -0.1, 0.9}, {0.0, 0.0, 1.4}};
    std::vector<fusion::ViewPrediction> preds = {exact_view(cameras[0], joints)};
    fusion::WeightMatrix weights;
    weights.weights = Eigen::MatrixXd::Ones(2, 1);
    const skel::Pose3D fused = fusion::fuse(preds, weights, {});
    for (int j = 0; j < 2; ++j) {
        CHECK(fused.joints[j] == joints[j]);
    }
}

TEST_CASE("fuse throws JointUnresolvable when no view is usable") {
    const auto cameras = ring(2);
    const Eigen::Vector3d p(0.0, 0.0, 1.0);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) preds.push_back(exact_view(cam, {p}));
    for (auto& pred : preds) pred.detection2d.visible[0] = false;

    try {
        fusion::fuse_frame(preds, cameras, {});
        FAIL("expected JointUnresolvable");
    } catch (const fusion::JointUnresolvable& e) {
        CHECK(e.joint_index == 0);
    }
}

TEST_CASE("fuse_frame recovers the point and buries a corrupted view") {
    const auto cameras = ring(4);
    const Eigen::Vector3d truth(0.1, 0.05, 1.0);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) preds.push_back(exact_view(cam, {truth}));
    preds[0].pose3d.joints[0] += Eigen::Vector3d(1.0, 0.0, 0.0);  // 1 m hallucination

    const auto [fused, weights] = fusion::fuse_frame(preds, cameras, {});
    CHECK((fused.joints[0] - truth).norm() < 1e-9);
    const double corrupted = weights.weights(0, 0);
    for (int i = 1; i < 4; ++i) {
        CHECK(corrupted < 1e-3 * weights.weights(0, i));
    }
}

TEST_CASE("uniform strategy is the arithmetic mean") {
    Rng rng(41);
    const auto cameras = ring(3);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) {
        const Eigen::Vector3d p(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                                rng.uniform(0.8, 1.2));
        preds.push_back(exact_view(cam, {p}));
    }
    fusion::FusionConfig config;
    config.strategy = fusion::WeightStrategy::uniform;
    const auto [fused, weights] = fusion::fuse_frame(preds, cameras, config);

    const Eigen::Vector3d mean = (preds[0].pose3d.joints[0] + preds[1].pose3d.joints[0] +
                                  preds[2].pose3d.joints[0]) /
                                 3.0;
    CHECK((fused.joints[0] - mean).norm() < 1e-12);
}

TEST_CASE("strategy equivalence under equal finite errors") {
    Rng rng(43);
    const auto cameras = ring(3);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) {
        const Eigen::Vector3d p(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                                rng.uniform(0.8, 1.2));
        preds.push_back(exact_view(cam, {p}));
    }
    const Eigen::MatrixXd equal_errors = Eigen::MatrixXd::Constant(1, 3, 7.3);
    fusion::FusionConfig reproj;
    const auto w_reproj = fusion::per_joint_weights(equal_errors, reproj);
    fusion::FusionConfig uniform;
    uniform.strategy = fusion::WeightStrategy::uniform;
    const auto w_uniform = fusion::compute_weights(preds, cameras, equal_errors, uniform);

    const skel::Pose3D a = fusion::fuse(preds, w_reproj, reproj);
    const skel::Pose3D b = fusion::fuse(preds, w_uniform, uniform);
    CHECK((a.joints[0] - b.joints[0]).norm() < 1e-12);
}

TEST_CASE("fused joints stay in the convex hull of the predictions") {
    Rng rng(47);
    const auto cameras = ring(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<fusion::ViewPrediction> preds;
        for (const auto& cam : cameras) {
            const Eigen::Vector3d p(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                    rng.uniform(0.6, 1.4));
            preds.push_back(exact_view(cam, {p}));
        }
        const auto [fused, weights] = fusion::fuse_frame(preds, cameras, {});
        for (int axis = 0; axis < 3; ++axis) {
            double lo = 1e30, hi = -1e30;
            for (const auto& pred : preds) {
                lo = std::min(lo, pred.pose3d.joints[0](axis));
                hi = std::max(hi, pred.pose3d.joints[0](axis));
            }
            CHECK(fused.joints[0](axis) >= lo - 1e-12);
            CHECK(fused.joints[0](axis) <= hi + 1e-12);
        }
    }
}

TEST_CASE("reordering views leaves the fused pose identical") {
    Rng rng(53);
    const auto cameras = ring(4);
    std::vector<fusion::ViewPrediction> preds;
    for (const auto& cam : cameras) {
        const Eigen::Vector3d p(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                rng.uniform(0.6, 1.4));
        preds.push_back(exact_view(cam, {p}));
    }
    const auto [fused, weights] = fusion::fuse_frame(preds, cameras, {});

    std::vector<fusion::ViewPrediction> shuffled = {preds[2], preds[0], preds[3], preds[1]};
    const auto [refused, reweights] = fusion::fuse_frame(shuffled, cameras, {});
    CHECK(fused.joints[0] == refused.joints[0]);  // bit-identical by design
}

TEST_CASE("config invariants are enforced") {
    fusion::FusionConfig bad_epsilon;
    bad_epsilon.epsilon = 0.0;
    CHECK_THROWS_AS(fusion::per_joint_weights(Eigen::MatrixXd::Zero(1, 1), bad_epsilon),
                    std::invalid_argument);

    const auto cameras = ring(1);
    std::vector<fusion::ViewPrediction> preds = {exact_view(cameras[0], {{0, 0, 1}})};
    fusion::WeightMatrix weights;
    weights.weights = Eigen::MatrixXd::Ones(1, 1);
    fusion::FusionConfig bad_views;
    bad_views.min_views = 0;
    CHECK_THROWS_AS(fusion::fuse(preds, weights, bad_views), std::invalid_argument);
}

TEST_CASE("strategy names round trip") {
    for (const auto strategy :
         {fusion::WeightStrategy::per_joint_reprojection, fusion::WeightStrategy::confidence,
          fusion::WeightStrategy::inverse_distance, fusion::WeightStrategy::uniform}) {
        CHECK(fusion::weight_strategy_from_string(fusion::to_string(strategy)) == strategy);
    }
    CHECK_THROWS_AS(fusion::weight_strategy_from_string("nope"), std::invalid_argument);
}
