#include "mvpose/optimizer.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

namespace mvpose::opt {

namespace {

// Bone shorter than this has no usable direction; its residual still counts
// but its gradient contribution is dropped.
constexpr double kMinBoneLength = 1e-12;

std::vector<int> canonical_view_order(const std::vector<geom::Camera>& cameras) {
    std::vector<int> order(cameras.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return cameras[a].id < cameras[b].id;
    });
    return order;
}

void check_inputs(const skel::Pose3D& pose, const std::vector<geom::Camera>& cameras,
                  const std::vector<skel::Detection2D>& detections,
                  const skel::JointConvention& conv) {
    if (cameras.size() != detections.size()) {
        throw std::invalid_argument("cameras and detections must pair up");
    }
    for (const skel::Detection2D& det : detections) {
        if (det.joint_count() != pose.joint_count() ||
            det.visible.size() != det.joints.size()) {
            throw std::invalid_argument("detection joint count does not match pose");
        }
    }
    for (const skel::BonePair& pair : conv.symmetric_bone_pairs) {
        for (int idx : {pair.left[0], pair.left[1], pair.right[0], pair.right[1]}) {
            if (idx < 0 || idx >= pose.joint_count()) {
                throw std::invalid_argument("bone pair index exceeds pose joints");
            }
        }
    }
}

void check_config(const ObjectiveConfig& config) {
    if (config.max_iters < 1 || !(config.grad_tol > 0.0) || !(config.step_tol > 0.0) ||
        !(config.initial_damping > 0.0)) {
        throw std::invalid_argument(
            "objective config needs max_iters >= 1 and positive tolerances");
    }
}

// Shared accumulation over all objective terms. Fills the breakdown always;
// optionally the gradient (2 J^T r) and the normal-equation pair (J^T J,
// J^T r). Views are visited in camera-id order so results are bit-identical
// under rig permutation.
struct Accumulator {
    double lambda_sym = 0.0;
    double z_min = geom::kDefaultZMin;
    ObjectiveBreakdown breakdown;
    Eigen::VectorXd* jt_r = nullptr;   // J^T r, gradient = 2 * jt_r
    Eigen::MatrixXd* jtj = nullptr;

    void run(const skel::Pose3D& pose, const std::vector<geom::Camera>& cameras,
             const std::vector<skel::Detection2D>& detections,
             const skel::JointConvention& conv) {
        const int joint_count = pose.joint_count();
        if (jt_r) jt_r->setZero(3 * joint_count);
        if (jtj) jtj->setZero(3 * joint_count, 3 * joint_count);

        for (int k : canonical_view_order(cameras)) {
            const geom::Camera& cam = cameras[k];
            const skel::Detection2D& det = detections[k];
            for (int j = 0; j < joint_count; ++j) {
                if (!det.visible[j]) continue;
                add_reprojection_term(cam, pose.joints[j], det.joints[j], j);
            }
        }

        for (const skel::BonePair& pair : conv.symmetric_bone_pairs) {
            add_symmetry_term(pose, pair);
        }
    }

private:
    void add_reprojection_term(const geom::Camera& cam, const Eigen::Vector3d& joint,
                               const Eigen::Vector2d& observed, int j) {
        const Eigen::Vector3d q = geom::transform_to_camera(cam.extrinsics, joint);
        if (!(q.z() > z_min)) {
            ++breakdown.behind_camera_terms;
            return;
        }
        const geom::CameraIntrinsics& in = cam.intrinsics;
        const double inv_z = 1.0 / q.z();
        const Eigen::Vector2d projected(in.fx * q.x() * inv_z + in.cx,
                                        in.fy * q.y() * inv_z + in.cy);
        const Eigen::Vector2d r = projected - observed;
        breakdown.reprojection += r.squaredNorm();
        if (!jt_r && !jtj) return;

        // d(projection)/d(world point) through the perspective division.
        Eigen::Matrix<double, 2, 3> d_pix_d_cam;
        d_pix_d_cam << in.fx * inv_z, 0.0, -in.fx * q.x() * inv_z * inv_z,
                       0.0, in.fy * inv_z, -in.fy * q.y() * inv_z * inv_z;
        const Eigen::Matrix<double, 2, 3> jac = d_pix_d_cam * cam.extrinsics.rotation;

        if (jt_r) jt_r->segment<3>(3 * j) += jac.transpose() * r;
        if (jtj) jtj->block<3, 3>(3 * j, 3 * j) += jac.transpose() * jac;
    }

    void add_symmetry_term(const skel::Pose3D& pose, const skel::BonePair& pair) {
        const Eigen::Vector3d left_bone = pose.joints[pair.left[0]] - pose.joints[pair.left[1]];
        const Eigen::Vector3d right_bone =
            pose.joints[pair.right[0]] - pose.joints[pair.right[1]];
        const double d_left = left_bone.norm();
        const double d_right = right_bone.norm();
        const double s = d_left - d_right;
        breakdown.symmetry += s * s;
        if ((!jt_r && !jtj) || lambda_sym == 0.0) return;

        // Residual sqrt(lambda) * s touches up to four joints.
        const double sqrt_lambda = std::sqrt(lambda_sym);
        std::array<std::pair<int, Eigen::Vector3d>, 4> rows;
        int n = 0;
        if (d_left > kMinBoneLength) {
            const Eigen::Vector3d dir = left_bone / d_left * sqrt_lambda;
            rows[n++] = {pair.left[0], dir};
            rows[n++] = {pair.left[1], -dir};
        }
        if (d_right > kMinBoneLength) {
            const Eigen::Vector3d dir = right_bone / d_right * sqrt_lambda;
            rows[n++] = {pair.right[0], -dir};
            rows[n++] = {pair.right[1], dir};
        }
        const double residual = sqrt_lambda * s;
        for (int a = 0; a < n; ++a) {
            if (jt_r) jt_r->segment<3>(3 * rows[a].first) += rows[a].second * residual;
            if (jtj) {
                for (int b = 0; b < n; ++b) {
                    jtj->block<3, 3>(3 * rows[a].first, 3 * rows[b].first) +=
                        rows[a].second * rows[b].second.transpose();
                }
            }
        }
    }
};

}  // namespace

std::string to_string(Termination reason) {
    switch (reason) {
        case Termination::gradient: return "gradient";
        case Termination::step: return "step";
        case Termination::max_iters: return "max_iters";
        case Termination::stalled: return "stalled";
    }
    return "unknown";
}

double symmetry_cost(const skel::Pose3D& pose, const skel::JointConvention& conv) {
    double cost = 0.0;
    for (double r : skel::symmetry_residuals(pose, conv)) {
        cost += r * r;
    }
    return cost;
}

ObjectiveBreakdown evaluate_objective(const skel::Pose3D& pose,
                                      const std::vector<geom::Camera>& cameras,
                                      const std::vector<skel::Detection2D>& detections,
                                      const skel::JointConvention& conv,
                                      const ObjectiveConfig& config) {
    check_inputs(pose, cameras, detections, conv);
    Accumulator acc;
    acc.lambda_sym = config.lambda_sym;
    acc.z_min = config.z_min;
    acc.run(pose, cameras, detections, conv);
    return acc.breakdown;
}

double objective(const skel::Pose3D& pose, const std::vector<geom::Camera>& cameras,
                 const std::vector<skel::Detection2D>& detections,
                 const skel::JointConvention& conv, const ObjectiveConfig& config) {
    return evaluate_objective(pose, cameras, detections, conv, config)
        .total(config.lambda_sym);
}

Eigen::VectorXd gradient(const skel::Pose3D& pose,
                         const std::vector<geom::Camera>& cameras,
                         const std::vector<skel::Detection2D>& detections,
                         const skel::JointConvention& conv,
                         const ObjectiveConfig& config) {
    check_inputs(pose, cameras, detections, conv);
    Eigen::VectorXd jt_r;
    Accumulator acc;
    acc.lambda_sym = config.lambda_sym;
    acc.z_min = config.z_min;
    acc.jt_r = &jt_r;
    acc.run(pose, cameras, detections, conv);
    return 2.0 * jt_r;
}

OptimizationResult refine(const skel::Pose3D& initial,
                          const std::vector<geom::Camera>& cameras,
                          const std::vector<skel::Detection2D>& detections,
                          const skel::JointConvention& conv,
                          const ObjectiveConfig& config) {
    check_inputs(initial, cameras, detections, conv);
    check_config(config);
    const double lambda = config.lambda_sym;

    const auto total_at = [&](const skel::Pose3D& pose) {
        return evaluate_objective(pose, cameras, detections, conv, config).total(lambda);
    };

    OptimizationResult result;
    result.pose = initial;
    result.initial_objective = total_at(initial);
    if (!std::isfinite(result.initial_objective)) {
        throw NonFiniteObjective();
    }
    result.objective_trace.push_back(result.initial_objective);

    double best = result.initial_objective;
    double damping = config.initial_damping;
    Eigen::VectorXd jt_r;
    Eigen::MatrixXd jtj;

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        Accumulator acc;
        acc.lambda_sym = lambda;
        acc.z_min = config.z_min;
        acc.jt_r = &jt_r;
        acc.jtj = &jtj;
        acc.run(result.pose, cameras, detections, conv);

        if ((2.0 * jt_r).lpNorm<Eigen::Infinity>() <= config.grad_tol) {
            result.converged = true;
            result.termination_reason = Termination::gradient;
            break;
        }

        Eigen::MatrixXd damped = jtj;
        damped.diagonal().array() += damping;
        const Eigen::VectorXd step = damped.ldlt().solve(-jt_r);
        result.iterations = iter;

        bool accepted = false;
        if (step.allFinite()) {
            skel::Pose3D candidate = result.pose;
            for (int j = 0; j < candidate.joint_count(); ++j) {
                candidate.joints[j] += step.segment<3>(3 * j);
            }
            const double candidate_objective = total_at(candidate);
            if (std::isfinite(candidate_objective) && candidate_objective < best) {
                result.pose = std::move(candidate);
                best = candidate_objective;
                result.objective_trace.push_back(best);
                damping = std::max(damping / 3.0, 1e-12);
                accepted = true;
                if (step.lpNorm<Eigen::Infinity>() <= config.step_tol) {
                    result.converged = true;
                    result.termination_reason = Termination::step;
                    break;
                }
            }
        }
        if (!accepted) {
            damping *= 10.0;
            if (damping > 1e14) {
                result.termination_reason = Termination::stalled;
                break;
            }
        }
    }

    const ObjectiveBreakdown final_breakdown =
        evaluate_objective(result.pose, cameras, detections, conv, config);
    result.reprojection_term = final_breakdown.reprojection;
    result.symmetry_term = final_breakdown.symmetry;
    result.behind_camera_terms = final_breakdown.behind_camera_terms;
    result.final_objective = final_breakdown.total(lambda);
    return result;
}

}  // namespace mvpose::opt
