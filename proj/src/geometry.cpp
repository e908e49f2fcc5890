#include "mvpose/geometry.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace mvpose::geom {

double orthonormality_defect(const Mat3& rotation) {
    const Mat3 residual = rotation.transpose() * rotation - Mat3::Identity();
    return residual.cwiseAbs().maxCoeff();
}

void validate_extrinsics(const CameraExtrinsics& extrinsics,
                         const std::string& camera_id, double tol) {
    const double defect = orthonormality_defect(extrinsics.rotation);
    if (!(defect <= tol)) {
        std::ostringstream msg;
        msg << "camera '" << camera_id << "': rotation is not orthonormal, "
            << "max |R^T R - I| = " << defect << " exceeds " << tol;
        throw std::invalid_argument(msg.str());
    }
    const double det = extrinsics.rotation.determinant();
    if (!(std::abs(det - 1.0) <= tol)) {
        std::ostringstream msg;
        msg << "camera '" << camera_id << "': det(R) = " << det
            << ", expected +1 within " << tol;
        throw std::invalid_argument(msg.str());
    }
    if (!extrinsics.translation.allFinite()) {
        throw std::invalid_argument("camera '" + camera_id + "': non-finite translation");
    }
}

void validate_intrinsics(const CameraIntrinsics& intrinsics,
                         const std::string& camera_id) {
    const bool finite = std::isfinite(intrinsics.fx) && std::isfinite(intrinsics.fy) &&
                        std::isfinite(intrinsics.cx) && std::isfinite(intrinsics.cy);
    if (!finite || intrinsics.fx <= 0.0 || intrinsics.fy <= 0.0 ||
        intrinsics.width <= 0 || intrinsics.height <= 0) {
        throw std::invalid_argument("camera '" + camera_id +
                                    "': invalid intrinsics (need fx,fy > 0, "
                                    "width,height > 0, all finite)");
    }
}

std::optional<Vec2> project(const Camera& camera, const Vec3& p_world, double z_min) {
    const Vec3 q = transform_to_camera(camera.extrinsics, p_world);
    if (!(q.z() > z_min)) {
        return std::nullopt;
    }
    const CameraIntrinsics& k = camera.intrinsics;
    return Vec2(k.fx * q.x() / q.z() + k.cx, k.fy * q.y() / q.z() + k.cy);
}

Vec3 backproject(const Camera& camera, const Vec2& pixel, double depth) {
    const CameraIntrinsics& k = camera.intrinsics;
    const Vec3 q((pixel.x() - k.cx) / k.fx * depth,
                 (pixel.y() - k.cy) / k.fy * depth, depth);
    const CameraExtrinsics& e = camera.extrinsics;
    return e.rotation.transpose() * (q - e.translation);
}

std::optional<double> reprojection_error_sq(const Camera& camera, const Vec3& p_world,
                                            const Vec2& observed, double z_min) {
    const auto projected = project(camera, p_world, z_min);
    if (!projected) {
        return std::nullopt;
    }
    return (*projected - observed).squaredNorm();
}

}  // namespace mvpose::geom
