#pragma once

#include "mvpose/geometry.hpp"
#include "mvpose/skeleton.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvpose::fusion {

// Single-view output: absolute 3D prediction plus the per-view 2D keypoints.
struct ViewPrediction {
    std::string camera_id;
    skel::Pose3D pose3d;
    skel::Detection2D detection2d;
};

// J x C, column i follows the order of the prediction list it was built from.
// weights(j,i) == 0 exactly when view i is unusable for joint j.
struct WeightMatrix {
    Eigen::MatrixXd weights;
    Eigen::MatrixXd errors;  // mean squared reprojection errors, px^2; +inf = unusable
};

enum class WeightStrategy {
    per_joint_reprojection,  // 1 / mean cross-view reprojection error
    confidence,              // predictor's per-joint confidence
    inverse_distance,        // 1 / camera-to-joint distance
    uniform,
};

WeightStrategy weight_strategy_from_string(const std::string& name);
std::string to_string(WeightStrategy strategy);

struct FusionConfig {
    WeightStrategy strategy = WeightStrategy::per_joint_reprojection;
    double epsilon = 1e-6;  // px^2 floor before inversion
    int min_views = 1;
};

struct JointUnresolvable : std::runtime_error {
    explicit JointUnresolvable(int joint);
    int joint_index;
};

// e(j,i) = mean over cameras k (joint visible in detection k, prediction in
// front of camera k) of the squared reprojection error of view i's joint j
// against detection k. Views contributing no valid term get +inf.
// Accumulation runs in camera-id order, so the result is invariant to the
// order of the prediction list. Throws on an unknown camera id.
Eigen::MatrixXd per_joint_errors(const std::vector<ViewPrediction>& preds,
                                 const std::vector<geom::Camera>& cameras);

// Eq-style inversion: w = 1 / max(e, epsilon); +inf error -> weight 0.
WeightMatrix per_joint_weights(const Eigen::MatrixXd& errors, const FusionConfig& config);

// Strategy dispatch; per_joint_reprojection delegates to per_joint_weights.
WeightMatrix compute_weights(const std::vector<ViewPrediction>& preds,
                             const std::vector<geom::Camera>& cameras,
                             const Eigen::MatrixXd& errors, const FusionConfig& config);

// Per-joint weighted average of the view predictions. Fused confidence is
// the joint's weight mass normalized by the largest mass over joints.
// Throws JointUnresolvable when a joint has zero total weight and fewer than
// min_views usable views.
skel::Pose3D fuse(const std::vector<ViewPrediction>& preds, const WeightMatrix& weights,
                  const FusionConfig& config);

// per_joint_errors + compute_weights + fuse.
std::pair<skel::Pose3D, WeightMatrix> fuse_frame(const std::vector<ViewPrediction>& preds,
                                                 const std::vector<geom::Camera>& cameras,
                                                 const FusionConfig& config);

}  // namespace mvpose::fusion
