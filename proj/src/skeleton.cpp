#include "mvpose/skeleton.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mvpose::skel {

void JointConvention::validate() const {
    const int j = joint_count();
    if (j < 2) {
        throw std::invalid_argument("convention needs at least 2 joints");
    }
    if (pelvis_index < 0 || pelvis_index >= j) {
        throw std::invalid_argument("pelvis_index out of range");
    }
    for (const BonePair& pair : symmetric_bone_pairs) {
        for (int idx : {pair.left[0], pair.left[1], pair.right[0], pair.right[1]}) {
            if (idx < 0 || idx >= j) {
                throw std::invalid_argument("bone pair joint index out of range");
            }
        }
        if (pair.left[0] == pair.left[1] || pair.right[0] == pair.right[1]) {
            throw std::invalid_argument("bone pair joins a joint to itself");
        }
        if (pair.left == pair.right) {
            throw std::invalid_argument("bone pair has identical left and right bones");
        }
    }
}

const JointConvention& human36m_convention() {
    static const JointConvention conv = [] {
        JointConvention c;
        c.joint_names = {"pelvis",     "right_hip",   "right_knee", "right_ankle",
                         "left_hip",   "left_knee",   "left_ankle", "spine",
                         "thorax",     "neck",        "head",       "left_shoulder",
                         "left_elbow", "left_wrist",  "right_shoulder",
                         "right_elbow", "right_wrist"};
        c.pelvis_index = 0;
        c.symmetric_bone_pairs = {
            {{11, 12}, {14, 15}},  // upper arm: shoulder-elbow
            {{12, 13}, {15, 16}},  // lower arm: elbow-wrist
            {{4, 5}, {1, 2}},      // upper leg: hip-knee
            {{5, 6}, {2, 3}},      // lower leg: knee-ankle
        };
        c.validate();
        return c;
    }();
    return conv;
}

Pose3D Pose3D::zeros(int joint_count) {
    Pose3D pose;
    pose.joints.assign(joint_count, Eigen::Vector3d::Zero());
    pose.confidence.assign(joint_count, 1.0);
    return pose;
}

double bone_length(const Pose3D& pose, int a, int b) {
    const int j = pose.joint_count();
    if (a < 0 || a >= j || b < 0 || b >= j) {
        throw std::out_of_range("bone_length: joint index out of range");
    }
    if (a == b) {
        throw std::invalid_argument("bone_length: identical joint indices");
    }
    return (pose.joints[a] - pose.joints[b]).norm();
}

std::vector<double> symmetry_residuals(const Pose3D& pose, const JointConvention& conv) {
    std::vector<double> residuals;
    residuals.reserve(conv.symmetric_bone_pairs.size());
    for (const BonePair& pair : conv.symmetric_bone_pairs) {
        const double left = bone_length(pose, pair.left[0], pair.left[1]);
        const double right = bone_length(pose, pair.right[0], pair.right[1]);
        residuals.push_back(left - right);
    }
    return residuals;
}

std::vector<std::string> validate(const Pose3D& pose) {
    std::vector<std::string> violations;
    for (int j = 0; j < pose.joint_count(); ++j) {
        if (!pose.joints[j].allFinite()) {
            std::ostringstream msg;
            msg << "joint " << j << ": non-finite coordinate";
            violations.push_back(msg.str());
        }
    }
    for (size_t j = 0; j < pose.confidence.size(); ++j) {
        const double c = pose.confidence[j];
        if (!(c >= 0.0 && c <= 1.0)) {
            std::ostringstream msg;
            msg << "joint " << j << ": confidence " << c << " outside [0,1]";
            violations.push_back(msg.str());
        }
    }
    if (pose.confidence.size() != pose.joints.size()) {
        violations.push_back("confidence count does not match joint count");
    }
    return violations;
}

}  // namespace mvpose::skel
