#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mvpose::skel {

// One symmetric limb: left (u,v) joint pair and its right counterpart.
struct BonePair {
    std::array<int, 2> left;
    std::array<int, 2> right;
};

struct JointConvention {
    std::vector<std::string> joint_names;
    int pelvis_index = 0;
    std::vector<BonePair> symmetric_bone_pairs;

    int joint_count() const { return static_cast<int>(joint_names.size()); }

    // Throws std::invalid_argument on J < 2, bad indices, or a pair whose
    // left and right bones overlap.
    void validate() const;
};

// 17-joint Human3.6M convention, pelvis root, four limb pairs
// (upper/lower arm, upper/lower leg).
const JointConvention& human36m_convention();

struct Pose3D {
    std::vector<Eigen::Vector3d> joints;        // meters, world frame
    std::vector<double> confidence;             // per joint, in [0,1]
    std::optional<std::string> source_camera;

    int joint_count() const { return static_cast<int>(joints.size()); }

    static Pose3D zeros(int joint_count);
};

struct Detection2D {
    std::vector<Eigen::Vector2d> joints;        // pixels
    std::vector<double> confidence;
    std::vector<bool> visible;
    std::optional<std::array<double, 4>> bbox;  // x, y, w, h

    int joint_count() const { return static_cast<int>(joints.size()); }
};

// Euclidean distance between joints a and b. Throws std::out_of_range on a
// bad index, std::invalid_argument when a == b.
double bone_length(const Pose3D& pose, int a, int b);

// Per-pair left-minus-right limb length differences, in meters.
std::vector<double> symmetry_residuals(const Pose3D& pose, const JointConvention& conv);

// Diagnostic: non-finite coordinates and out-of-range confidences, one
// message per violation naming the joint index. Empty means ok.
std::vector<std::string> validate(const Pose3D& pose);

}  // namespace mvpose::skel
