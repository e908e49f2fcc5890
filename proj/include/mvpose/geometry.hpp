#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvpose::geom {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Depth below which a point counts as behind the camera plane.
constexpr double kDefaultZMin = 1e-6;

struct CameraIntrinsics {
    double fx = 0.0;
    double fy = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    int width = 0;
    int height = 0;
};

// World-to-camera transform: p_cam = rotation * p_world + translation.
struct CameraExtrinsics {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 center() const { return -rotation.transpose() * translation; }
};

struct Camera {
    std::string id;
    CameraIntrinsics intrinsics;
    CameraExtrinsics extrinsics;
};

// max |R^T R - I| entry; 0 for a perfectly orthonormal matrix.
double orthonormality_defect(const Mat3& rotation);

// Throws std::invalid_argument naming the camera and the defect magnitude
// when R^T R deviates from identity or det(R) from +1 by more than tol.
void validate_extrinsics(const CameraExtrinsics& extrinsics,
                         const std::string& camera_id, double tol = 1e-9);

void validate_intrinsics(const CameraIntrinsics& intrinsics,
                         const std::string& camera_id);

inline Vec3 transform_to_camera(const CameraExtrinsics& extrinsics, const Vec3& p_world) {
    return extrinsics.rotation * p_world + extrinsics.translation;
}

// Pinhole projection. nullopt means the point sits at or behind the camera
// plane (depth <= z_min); callers must treat that view as uninformative.
// A result outside the image bounds is still a valid projection.
std::optional<Vec2> project(const Camera& camera, const Vec3& p_world,
                            double z_min = kDefaultZMin);

// Inverse of project at a given depth (camera-frame z), for tests and rigs.
Vec3 backproject(const Camera& camera, const Vec2& pixel, double depth);

// ||project(camera, p) - observed||^2 in px^2; nullopt when behind camera.
std::optional<double> reprojection_error_sq(const Camera& camera, const Vec3& p_world,
                                            const Vec2& observed,
                                            double z_min = kDefaultZMin);

}  // namespace mvpose::geom
