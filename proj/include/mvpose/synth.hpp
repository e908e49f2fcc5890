#pragma once

#include "mvpose/fusion.hpp"
#include "mvpose/geometry.hpp"
#include "mvpose/rng.hpp"
#include "mvpose/skeleton.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mvpose::synth {

struct RigSpec {
    int camera_count = 4;
    double radius = 4.0;                  // meters from ring center
    double height = 2.0;                  // camera z, meters
    Eigen::Vector3d look_at{0.0, 0.0, 1.0};
    double fov_deg = 60.0;                // horizontal, used when focal_px unset
    std::optional<double> focal_px;
    int image_width = 640;
    int image_height = 480;
};

struct CorruptionSpec {
    double sigma_2d_px = 3.0;             // detection noise
    double sigma_3d_mm = 20.0;            // per-joint prediction noise
    std::array<double, 2> ray_scale_range{0.9, 1.1};  // depth/size ambiguity
    int occluded_view_count = 3;          // views per frame with occlusion
    double occluded_joint_fraction = 0.5; // joints corrupted in an occluded view
    double sigma_occ_mm = 150.0;          // hallucination noise on occluded joints
    double detection_drop_prob = 0.5;     // occluded joint marked invisible
    uint64_t seed = 0;
};

struct MotionSpec {
    Eigen::Vector3d root_start{0.0, 0.0, 1.0};
    Eigen::Vector3d root_velocity{0.0, 0.0, 0.0};  // meters per frame
    double angle_amplitude_rad = 0.25;
    double min_cycles_per_frame = 0.004;
    double max_cycles_per_frame = 0.02;
    bool symmetric_bones = true;
    std::vector<double> bone_lengths;     // per joint, root entry ignored; empty = defaults
};

struct Frame {
    int64_t frame_id = 0;
    skel::Pose3D gt;
    std::vector<fusion::ViewPrediction> views;
    std::vector<std::string> occluded_views;
    std::map<std::string, std::vector<int>> occluded_joints;
};

struct SequenceManifest {
    int format_version = 1;
    uint64_t seed = 0;
    int length = 0;
    std::string convention = "human36m_17";
    RigSpec rig;
    MotionSpec motion;
    CorruptionSpec corruption;
};

struct GeneratedSequence {
    std::vector<geom::Camera> cameras;
    std::vector<Frame> frames;
    SequenceManifest manifest;
};

// Kinematic tree behind the default 17-joint convention: per-joint parent,
// unit rest direction (T-pose) and default bone length.
struct BodyModel {
    skel::JointConvention convention;
    std::vector<int> parent;                       // -1 for the root
    std::vector<Eigen::Vector3d> rest_direction;
    std::vector<double> default_bone_length;       // meters
    std::vector<int> mirror_joint;                 // left/right counterpart or -1

    int joint_count() const { return static_cast<int>(parent.size()); }
};

const BodyModel& default_body_model();

// Copies right-side lengths from their left counterparts.
std::vector<double> symmetrized_lengths(const BodyModel& model,
                                        std::vector<double> lengths);

geom::Camera make_look_at_camera(const std::string& id, const Eigen::Vector3d& position,
                                 const Eigen::Vector3d& target,
                                 const geom::CameraIntrinsics& intrinsics);

// camera_count cameras evenly spaced on a horizontal ring, each aimed at
// look_at. Throws when a camera position coincides with look_at.
std::vector<geom::Camera> make_rig(const RigSpec& spec);

// Forward-kinematic sample: every bone direction is the rest direction
// perturbed by two bounded random angles, so requested bone lengths hold
// exactly. Zero angle_range gives the deterministic T-pose.
skel::Pose3D sample_pose(Rng& rng, const skel::JointConvention& conv,
                         const std::vector<double>& bone_lengths,
                         double angle_range_rad, bool symmetric = true,
                         const Eigen::Vector3d& root = {0.0, 0.0, 1.0});

// Smooth per-bone sinusoidal joint-angle trajectories plus linear root
// motion; parameters are drawn once from the rng, poses are a closed-form
// function of the frame index afterwards.
class MotionModel {
public:
    MotionModel(const MotionSpec& spec, Rng& rng);

    skel::Pose3D pose_at(int64_t frame_index) const;
    const std::vector<double>& bone_lengths() const { return lengths_; }

private:
    struct BoneWave {
        double amp1, freq1, phase1;
        double amp2, freq2, phase2;
    };
    MotionSpec spec_;
    std::vector<double> lengths_;
    std::vector<BoneWave> waves_;
};

// One simulated view: the 3D prediction is the ground truth distorted by a
// per-view ray-preserving scale factor plus Gaussian noise, with extra
// hallucination noise and detection dropouts when the view is occluded.
// The 2D detection is the exact ground-truth projection plus sigma_2d noise.
fusion::ViewPrediction corrupt_view(const skel::Pose3D& gt, const geom::Camera& camera,
                                    const CorruptionSpec& spec, bool occluded, Rng& rng,
                                    std::vector<int>* occluded_joints_out = nullptr);

// Uniformly random size-count subset of {0..view_count-1}, sorted.
std::vector<int> choose_occluded_views(int view_count, int count, Rng& rng);

// Builds the full per-view set for one frame: a random size-count subset of
// cameras is occluded, every view passes through corrupt_view. count > C
// throws.
Frame occlude_views(int64_t frame_id, const skel::Pose3D& gt,
                    const std::vector<geom::Camera>& cameras,
                    const CorruptionSpec& spec, int count, Rng& rng);

// One of {-2, -1, +1, +2}, never 0.
int desync_offset(Rng& rng);

// Serves each desynced camera's predictions/detections from frame t+e with a
// fresh offset per frame per camera, clamped at the sequence bounds.
// Requires at least 5 frames so every offset can resolve.
std::vector<Frame> apply_desync(const std::vector<Frame>& sequence,
                                const std::vector<std::string>& desynced_camera_ids,
                                Rng& rng);

// Deterministic for a fixed corruption.seed: same spec, same bytes out.
GeneratedSequence generate_sequence(const RigSpec& rig, const MotionSpec& motion,
                                    const CorruptionSpec& corruption, int length);

}  // namespace mvpose::synth
