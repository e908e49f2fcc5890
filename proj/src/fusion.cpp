#include "mvpose/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mvpose::fusion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const geom::Camera& resolve_camera(const std::vector<geom::Camera>& cameras,
                                   const std::string& id) {
    for (const geom::Camera& cam : cameras) {
        if (cam.id == id) return cam;
    }
    throw std::invalid_argument("unknown camera id '" + id + "'");
}

// Prediction indices sorted by camera id. All cross-view sums run in this
// order so reordering the input list cannot change any floating-point result.
std::vector<int> canonical_order(const std::vector<ViewPrediction>& preds) {
    std::vector<int> order(preds.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return preds[a].camera_id < preds[b].camera_id;
    });
    return order;
}

int common_joint_count(const std::vector<ViewPrediction>& preds) {
    if (preds.empty()) {
        throw std::invalid_argument("need at least one view prediction");
    }
    const int j = preds.front().pose3d.joint_count();
    for (const ViewPrediction& pred : preds) {
        if (pred.pose3d.joint_count() != j || pred.detection2d.joint_count() != j) {
            throw std::invalid_argument("view '" + pred.camera_id +
                                        "': joint count mismatch across views");
        }
    }
    return j;
}

}  // namespace

JointUnresolvable::JointUnresolvable(int joint)
    : std::runtime_error("joint " + std::to_string(joint) +
                         " has no usable view; caller decides fallback"),
      joint_index(joint) {}

WeightStrategy weight_strategy_from_string(const std::string& name) {
    if (name == "per_joint_reprojection") return WeightStrategy::per_joint_reprojection;
    if (name == "confidence") return WeightStrategy::confidence;
    if (name == "inverse_distance") return WeightStrategy::inverse_distance;
    if (name == "uniform") return WeightStrategy::uniform;
    throw std::invalid_argument("unknown weight strategy '" + name + "'");
}

std::string to_string(WeightStrategy strategy) {
    switch (strategy) {
        case WeightStrategy::per_joint_reprojection: return "per_joint_reprojection";
        case WeightStrategy::confidence: return "confidence";
        case WeightStrategy::inverse_distance: return "inverse_distance";
        case WeightStrategy::uniform: return "uniform";
    }
    return "unknown";
}

Eigen::MatrixXd per_joint_errors(const std::vector<ViewPrediction>& preds,
                                 const std::vector<geom::Camera>& cameras) {
    const int joint_count = common_joint_count(preds);
    const int view_count = static_cast<int>(preds.size());
    const std::vector<int> order = canonical_order(preds);

    std::vector<const geom::Camera*> view_cameras(preds.size());
    for (int i = 0; i < view_count; ++i) {
        view_cameras[i] = &resolve_camera(cameras, preds[i].camera_id);
    }

    Eigen::MatrixXd errors(joint_count, view_count);
    for (int j = 0; j < joint_count; ++j) {
        for (int i = 0; i < view_count; ++i) {
            double sum = 0.0;
            int contributing = 0;
            for (int k : order) {
                const skel::Detection2D& det = preds[k].detection2d;
                if (!det.visible[j]) continue;
                const auto err = geom::reprojection_error_sq(
                    *view_cameras[k], preds[i].pose3d.joints[j], det.joints[j]);
                if (!err) continue;  // behind camera k: no signal from that view
                sum += *err;
                ++contributing;
            }
            errors(j, i) = contributing > 0 ? sum / contributing : kInf;
        }
    }
    return errors;
}

WeightMatrix per_joint_weights(const Eigen::MatrixXd& errors, const FusionConfig& config) {
    if (!(config.epsilon > 0.0)) {
        throw std::invalid_argument("fusion epsilon must be positive");
    }
    WeightMatrix out;
    out.errors = errors;
    out.weights = errors.unaryExpr([&](double e) {
        return std::isinf(e) ? 0.0 : 1.0 / std::max(e, config.epsilon);
    });
    return out;
}

WeightMatrix compute_weights(const std::vector<ViewPrediction>& preds,
                             const std::vector<geom::Camera>& cameras,
                             const Eigen::MatrixXd& errors, const FusionConfig& config) {
    if (config.strategy == WeightStrategy::per_joint_reprojection) {
        return per_joint_weights(errors, config);
    }

    WeightMatrix out;
    out.errors = errors;
    out.weights.resize(errors.rows(), errors.cols());
    for (int i = 0; i < out.weights.cols(); ++i) {
        const ViewPrediction& pred = preds[i];
        const Eigen::Vector3d center =
            resolve_camera(cameras, pred.camera_id).extrinsics.center();
        for (int j = 0; j < out.weights.rows(); ++j) {
            double w = 0.0;
            switch (config.strategy) {
                case WeightStrategy::uniform:
                    w = 1.0;
                    break;
                case WeightStrategy::confidence:
                    w = std::max(pred.pose3d.confidence[j], 0.0);
                    break;
                case WeightStrategy::inverse_distance:
                    w = 1.0 /
                        std::max((pred.pose3d.joints[j] - center).norm(), 1e-6);
                    break;
                case WeightStrategy::per_joint_reprojection:
                    break;  // handled above
            }
            if (!pred.pose3d.joints[j].allFinite()) w = 0.0;
            out.weights(j, i) = w;
        }
    }
    return out;
}

skel::Pose3D fuse(const std::vector<ViewPrediction>& preds, const WeightMatrix& weights,
                  const FusionConfig& config) {
    if (config.min_views < 1) {
        throw std::invalid_argument("min_views must be at least 1");
    }
    const int joint_count = common_joint_count(preds);
    const int view_count = static_cast<int>(preds.size());
    if (weights.weights.rows() != joint_count || weights.weights.cols() != view_count) {
        throw std::invalid_argument("weight matrix shape does not match predictions");
    }
    const std::vector<int> order = canonical_order(preds);

    skel::Pose3D fused;
    fused.joints.resize(joint_count);
    fused.confidence.assign(joint_count, 0.0);

    std::vector<double> mass(joint_count, 0.0);
    for (int j = 0; j < joint_count; ++j) {
        Eigen::Vector3d accum = Eigen::Vector3d::Zero();
        double total = 0.0;
        int usable = 0;
        for (int i : order) {
            const double w = weights.weights(j, i);
            if (w < 0.0 || !std::isfinite(w)) {
                throw std::invalid_argument("weights must be finite and non-negative");
            }
            if (w == 0.0) continue;
            accum += w * preds[i].pose3d.joints[j];
            total += w;
            ++usable;
        }
        if (total == 0.0 && usable < config.min_views) {
            throw JointUnresolvable(j);
        }
        fused.joints[j] = accum / total;
        mass[j] = total;
    }

    const double max_mass = *std::max_element(mass.begin(), mass.end());
    for (int j = 0; j < joint_count; ++j) {
        fused.confidence[j] = max_mass > 0.0 ? mass[j] / max_mass : 0.0;
    }
    return fused;
}

std::pair<skel::Pose3D, WeightMatrix> fuse_frame(const std::vector<ViewPrediction>& preds,
                                                 const std::vector<geom::Camera>& cameras,
                                                 const FusionConfig& config) {
    const Eigen::MatrixXd errors = per_joint_errors(preds, cameras);
    WeightMatrix weights = compute_weights(preds, cameras, errors, config);
    skel::Pose3D fused = fuse(preds, weights, config);
    return {std::move(fused), std::move(weights)};
}

}  // namespace mvpose::fusion
