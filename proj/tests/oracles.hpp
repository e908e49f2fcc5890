// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's code paths: projections are plain scalar
// arithmetic, triangulation is a homogeneous DLT solve, gradients come from
// central finite differences of a callable.
#pragma once

#include "mvpose/geometry.hpp"
#include "mvpose/rng.hpp"
#include "mvpose/skeleton.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace oracles {

struct ScalarCamera {
    double fx, fy, cx, cy;
    double r[9];  // row-major world-to-camera rotation
    double t[3];
};

inline ScalarCamera to_scalar(const mvpose::geom::Camera& camera) {
    ScalarCamera s;
    s.fx = camera.intrinsics.fx;
    s.fy = camera.intrinsics.fy;
    s.cx = camera.intrinsics.cx;
    s.cy = camera.intrinsics.cy;
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            s.r[3 * row + col] = camera.extrinsics.rotation(row, col);
        }
        s.t[row] = camera.extrinsics.translation(row);
    }
    return s;
}

inline std::optional<std::array<double, 2>> scalar_project(const ScalarCamera& cam,
                                                           double x, double y, double z,
                                                           double z_min = 1e-6) {
    const double qx = cam.r[0] * x + cam.r[1] * y + cam.r[2] * z + cam.t[0];
    const double qy = cam.r[3] * x + cam.r[4] * y + cam.r[5] * z + cam.t[1];
    const double qz = cam.r[6] * x + cam.r[7] * y + cam.r[8] * z + cam.t[2];
    if (!(qz > z_min)) return std::nullopt;
    return std::array<double, 2>{cam.fx * qx / qz + cam.cx, cam.fy * qy / qz + cam.cy};
}

inline std::optional<double> scalar_reproj_sq(const ScalarCamera& cam, double x, double y,
                                              double z, double u, double v) {
    const auto p = scalar_project(cam, x, y, z);
    if (!p) return std::nullopt;
    const double du = (*p)[0] - u;
    const double dv = (*p)[1] - v;
    return du * du + dv * dv;
}

// Homogeneous DLT: stack two rows per view of P = K [R|t], solve by SVD.
inline Eigen::Vector3d dlt_triangulate(const std::vector<mvpose::geom::Camera>& cameras,
                                       const std::vector<Eigen::Vector2d>& observations) {
    const int n = static_cast<int>(cameras.size());
    Eigen::MatrixXd design(2 * n, 4);
    for (int i = 0; i < n; ++i) {
        const auto& cam = cameras[i];
        Eigen::Matrix<double, 3, 4> p;
        p.leftCols<3>() = cam.extrinsics.rotation;
        p.col(3) = cam.extrinsics.translation;
        Eigen::Matrix3d k = Eigen::Matrix3d::Identity();
        k(0, 0) = cam.intrinsics.fx;
        k(1, 1) = cam.intrinsics.fy;
        k(0, 2) = cam.intrinsics.cx;
        k(1, 2) = cam.intrinsics.cy;
        p = k * p;
        design.row(2 * i) = observations[i].x() * p.row(2) - p.row(0);
        design.row(2 * i + 1) = observations[i].y() * p.row(2) - p.row(1);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
    const Eigen::Vector4d h = svd.matrixV().col(3);
    return h.head<3>() / h(3);
}

// Central finite differences of f over every joint coordinate.
inline Eigen::VectorXd finite_difference_gradient(
    const std::function<double(const mvpose::skel::Pose3D&)>& f,
    const mvpose::skel::Pose3D& pose, double h = 1e-6) {
    Eigen::VectorXd grad(3 * pose.joint_count());
    for (int j = 0; j < pose.joint_count(); ++j) {
        for (int axis = 0; axis < 3; ++axis) {
            mvpose::skel::Pose3D plus = pose;
            mvpose::skel::Pose3D minus = pose;
            plus.joints[j](axis) += h;
            minus.joints[j](axis) -= h;
            grad(3 * j + axis) = (f(plus) - f(minus)) / (2.0 * h);
        }
    }
    return grad;
}

inline double naive_mpjpe_abs_mm(const mvpose::skel::Pose3D& pred,
                                 const mvpose::skel::Pose3D& gt) {
    double sum = 0.0;
    for (int j = 0; j < pred.joint_count(); ++j) {
        const double dx = pred.joints[j].x() - gt.joints[j].x();
        const double dy = pred.joints[j].y() - gt.joints[j].y();
        const double dz = pred.joints[j].z() - gt.joints[j].z();
        sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return sum / pred.joint_count() * 1000.0;
}

inline double naive_mpjpe_rel_mm(const mvpose::skel::Pose3D& pred,
                                 const mvpose::skel::Pose3D& gt, int pelvis) {
    double sum = 0.0;
    for (int j = 0; j < pred.joint_count(); ++j) {
        const double dx = (pred.joints[j].x() - pred.joints[pelvis].x()) -
                          (gt.joints[j].x() - gt.joints[pelvis].x());
        const double dy = (pred.joints[j].y() - pred.joints[pelvis].y()) -
                          (gt.joints[j].y() - gt.joints[pelvis].y());
        const double dz = (pred.joints[j].z() - pred.joints[pelvis].z()) -
                          (gt.joints[j].z() - gt.joints[pelvis].z());
        sum += std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    return sum / pred.joint_count() * 1000.0;
}

inline Eigen::Matrix3d random_rotation(mvpose::Rng& rng) {
    Eigen::Vector3d axis(rng.gaussian(), rng.gaussian(), rng.gaussian());
    while (axis.norm() < 1e-6) {
        axis = Eigen::Vector3d(rng.gaussian(), rng.gaussian(), rng.gaussian());
    }
    axis.normalize();
    const double angle = rng.uniform(0.0, 3.14159265358979323846);
    Eigen::Matrix3d skew;
    skew << 0, -axis.z(), axis.y(), axis.z(), 0, -axis.x(), -axis.y(), axis.x(), 0;
    return Eigen::Matrix3d::Identity() + std::sin(angle) * skew +
           (1.0 - std::cos(angle)) * skew * skew;
}

inline mvpose::geom::Camera random_camera(mvpose::Rng& rng, const std::string& id,
                                          const Eigen::Vector3d& target) {
    // Position on a sphere around the target, looking inward.
    const double radius = rng.uniform(2.5, 5.0);
    const double azimuth = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double elevation = rng.uniform(-0.4, 0.7);
    const Eigen::Vector3d position =
        target + radius * Eigen::Vector3d(std::cos(azimuth) * std::cos(elevation),
                                          std::sin(azimuth) * std::cos(elevation),
                                          std::sin(elevation));
    const Eigen::Vector3d z_cam = (target - position).normalized();
    Eigen::Vector3d x_cam = z_cam.cross(Eigen::Vector3d::UnitZ());
    if (x_cam.norm() < 1e-9) x_cam = Eigen::Vector3d::UnitX();
    x_cam.normalize();
    const Eigen::Vector3d y_cam = z_cam.cross(x_cam);

    mvpose::geom::Camera camera;
    camera.id = id;
    camera.intrinsics = {rng.uniform(400.0, 800.0), rng.uniform(400.0, 800.0),
                         320.0, 240.0, 640, 480};
    camera.extrinsics.rotation.row(0) = x_cam;
    camera.extrinsics.rotation.row(1) = y_cam;
    camera.extrinsics.rotation.row(2) = z_cam;
    camera.extrinsics.translation = -camera.extrinsics.rotation * position;
    return camera;
}

}  // namespace oracles
