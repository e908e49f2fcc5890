#include "mvpose/synth.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mvpose::synth {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Vector3d any_orthogonal(const Eigen::Vector3d& v) {
    Eigen::Vector3d candidate = v.cross(Eigen::Vector3d::UnitZ());
    if (candidate.squaredNorm() < 1e-12) {
        candidate = v.cross(Eigen::Vector3d::UnitX());
    }
    return candidate.normalized();
}

Eigen::Vector3d perturbed_direction(const Eigen::Vector3d& rest, double angle1,
                                    double angle2) {
    const Eigen::Vector3d axis1 = any_orthogonal(rest);
    const Eigen::Vector3d axis2 = rest.cross(axis1).normalized();
    return Eigen::AngleAxisd(angle1, axis1) * (Eigen::AngleAxisd(angle2, axis2) * rest);
}

}  // namespace

const BodyModel& default_body_model() {
    static const BodyModel model = [] {
        BodyModel m;
        m.convention = skel::human36m_convention();
        //                 0   1  2  3  4  5  6  7  8  9 10 11 12 13 14 15 16
        m.parent        = {-1,  0, 1, 2, 0, 4, 5, 0, 7, 8, 9, 8, 11, 12, 8, 14, 15};
        m.mirror_joint  = {-1,  4, 5, 6, 1, 2, 3, -1, -1, -1, -1, 14, 15, 16, 11, 12, 13};
        m.rest_direction.assign(17, Eigen::Vector3d::Zero());
        m.default_bone_length.assign(17, 0.0);

        const Eigen::Vector3d down(0, 0, -1), up(0, 0, 1);
        const Eigen::Vector3d left(0, 1, 0), right(0, -1, 0);
        const auto set = [&](int j, const Eigen::Vector3d& dir, double len) {
            m.rest_direction[j] = dir;
            m.default_bone_length[j] = len;
        };
        set(1, right, 0.13);  set(2, down, 0.45);  set(3, down, 0.45);
        set(4, left, 0.13);   set(5, down, 0.45);  set(6, down, 0.45);
        set(7, up, 0.25);     set(8, up, 0.25);    set(9, up, 0.12);   set(10, up, 0.15);
        set(11, left, 0.20);  set(12, left, 0.28); set(13, left, 0.25);
        set(14, right, 0.20); set(15, right, 0.28); set(16, right, 0.25);
        return m;
    }();
    return model;
}

std::vector<double> symmetrized_lengths(const BodyModel& model,
                                        std::vector<double> lengths) {
    // The lower index of each mirror pair is the source, so both sides end
    // up with equal lengths.
    for (int j = 0; j < model.joint_count(); ++j) {
        const int mirror = model.mirror_joint[j];
        if (mirror >= 0 && mirror < j) {
            lengths[j] = lengths[mirror];
        }
    }
    return lengths;
}

geom::Camera make_look_at_camera(const std::string& id, const Eigen::Vector3d& position,
                                 const Eigen::Vector3d& target,
                                 const geom::CameraIntrinsics& intrinsics) {
    const Eigen::Vector3d forward = target - position;
    if (forward.norm() < 1e-9) {
        throw std::invalid_argument("camera '" + id + "': position coincides with look_at");
    }
    const Eigen::Vector3d z_cam = forward.normalized();
    Eigen::Vector3d x_cam = z_cam.cross(Eigen::Vector3d::UnitZ());
    if (x_cam.squaredNorm() < 1e-12) {
        x_cam = Eigen::Vector3d::UnitX();  // looking straight up or down
    } else {
        x_cam.normalize();
    }
    const Eigen::Vector3d y_cam = z_cam.cross(x_cam);  // points downward in world

    geom::Camera camera;
    camera.id = id;
    camera.intrinsics = intrinsics;
    camera.extrinsics.rotation.row(0) = x_cam;
    camera.extrinsics.rotation.row(1) = y_cam;
    camera.extrinsics.rotation.row(2) = z_cam;
    camera.extrinsics.translation = -camera.extrinsics.rotation * position;
    return camera;
}

std::vector<geom::Camera> make_rig(const RigSpec& spec) {
    if (spec.camera_count < 1) {
        throw std::invalid_argument("rig needs at least one camera");
    }
    if (spec.radius <= 0.0) {
        throw std::invalid_argument("rig radius must be positive");
    }
    geom::CameraIntrinsics intrinsics;
    intrinsics.width = spec.image_width;
    intrinsics.height = spec.image_height;
    const double focal =
        spec.focal_px ? *spec.focal_px
                      : (spec.image_width / 2.0) / std::tan(spec.fov_deg * kPi / 360.0);
    intrinsics.fx = focal;
    intrinsics.fy = focal;
    intrinsics.cx = spec.image_width / 2.0;
    intrinsics.cy = spec.image_height / 2.0;

    std::vector<geom::Camera> cameras;
    cameras.reserve(spec.camera_count);
    for (int i = 0; i < spec.camera_count; ++i) {
        const double angle = 2.0 * kPi * i / spec.camera_count;
        const Eigen::Vector3d position(spec.look_at.x() + spec.radius * std::cos(angle),
                                       spec.look_at.y() + spec.radius * std::sin(angle),
                                       spec.height);
        cameras.push_back(make_look_at_camera("cam" + std::to_string(i), position,
                                              spec.look_at, intrinsics));
        geom::validate_extrinsics(cameras.back().extrinsics, cameras.back().id);
    }
    return cameras;
}

skel::Pose3D sample_pose(Rng& rng, const skel::JointConvention& conv,
                         const std::vector<double>& bone_lengths,
                         double angle_range_rad, bool symmetric,
                         const Eigen::Vector3d& root) {
    const BodyModel& model = default_body_model();
    if (conv.joint_count() != model.joint_count()) {
        throw std::invalid_argument("sample_pose: convention does not match body model");
    }
    std::vector<double> lengths =
        bone_lengths.empty() ? model.default_bone_length : bone_lengths;
    if (static_cast<int>(lengths.size()) != model.joint_count()) {
        throw std::invalid_argument("sample_pose: need one length per joint");
    }
    for (int j = 1; j < model.joint_count(); ++j) {
        if (!(lengths[j] > 0.0)) {
            throw std::invalid_argument("sample_pose: bone lengths must be positive");
        }
    }
    if (symmetric) {
        lengths = symmetrized_lengths(model, lengths);
    }

    skel::Pose3D pose = skel::Pose3D::zeros(model.joint_count());
    pose.joints[0] = root;
    for (int j = 1; j < model.joint_count(); ++j) {
        const double angle1 = rng.uniform(-angle_range_rad, angle_range_rad);
        const double angle2 = rng.uniform(-angle_range_rad, angle_range_rad);
        const Eigen::Vector3d dir =
            perturbed_direction(model.rest_direction[j], angle1, angle2);
        pose.joints[j] = pose.joints[model.parent[j]] + lengths[j] * dir;
    }
    return pose;
}

MotionModel::MotionModel(const MotionSpec& spec, Rng& rng) : spec_(spec) {
    const BodyModel& model = default_body_model();
    lengths_ = spec.bone_lengths.empty() ? model.default_bone_length : spec.bone_lengths;
    if (static_cast<int>(lengths_.size()) != model.joint_count()) {
        throw std::invalid_argument("motion spec: need one bone length per joint");
    }
    if (spec.symmetric_bones) {
        lengths_ = symmetrized_lengths(model, lengths_);
    }
    waves_.resize(model.joint_count());
    for (int j = 1; j < model.joint_count(); ++j) {
        BoneWave& w = waves_[j];
        w.amp1 = rng.uniform(0.25, 1.0) * spec.angle_amplitude_rad;
        w.freq1 = rng.uniform(spec.min_cycles_per_frame, spec.max_cycles_per_frame);
        w.phase1 = rng.uniform(0.0, 2.0 * kPi);
        w.amp2 = rng.uniform(0.25, 1.0) * spec.angle_amplitude_rad;
        w.freq2 = rng.uniform(spec.min_cycles_per_frame, spec.max_cycles_per_frame);
        w.phase2 = rng.uniform(0.0, 2.0 * kPi);
    }
}

skel::Pose3D MotionModel::pose_at(int64_t frame_index) const {
    const BodyModel& model = default_body_model();
    skel::Pose3D pose = skel::Pose3D::zeros(model.joint_count());
    const double t = static_cast<double>(frame_index);
    pose.joints[0] = spec_.root_start + spec_.root_velocity * t;
    for (int j = 1; j < model.joint_count(); ++j) {
        const BoneWave& w = waves_[j];
        const double angle1 = w.amp1 * std::sin(2.0 * kPi * w.freq1 * t + w.phase1);
        const double angle2 = w.amp2 * std::sin(2.0 * kPi * w.freq2 * t + w.phase2);
        const Eigen::Vector3d dir =
            perturbed_direction(model.rest_direction[j], angle1, angle2);
        pose.joints[j] = pose.joints[model.parent[j]] + lengths_[j] * dir;
    }
    return pose;
}

fusion::ViewPrediction corrupt_view(const skel::Pose3D& gt, const geom::Camera& camera,
                                    const CorruptionSpec& spec, bool occluded, Rng& rng,
                                    std::vector<int>* occluded_joints_out) {
    const int joint_count = gt.joint_count();
    fusion::ViewPrediction view;
    view.camera_id = camera.id;
    view.pose3d = skel::Pose3D::zeros(joint_count);
    view.pose3d.source_camera = camera.id;
    view.detection2d.joints.assign(joint_count, Eigen::Vector2d::Zero());
    view.detection2d.confidence.assign(joint_count, 0.0);
    view.detection2d.visible.assign(joint_count, false);

    // Distance/size ambiguity: one scale factor per view, applied in the
    // camera frame so every joint slides along its own viewing ray and the
    // self-view projection is preserved.
    const double scale = rng.uniform(spec.ray_scale_range[0], spec.ray_scale_range[1]);
    const geom::CameraExtrinsics& ext = camera.extrinsics;
    const double sigma_3d = spec.sigma_3d_mm / 1000.0;
    for (int j = 0; j < joint_count; ++j) {
        const Eigen::Vector3d cam_point = geom::transform_to_camera(ext, gt.joints[j]);
        const Eigen::Vector3d scaled =
            ext.rotation.transpose() * (scale * cam_point - ext.translation);
        view.pose3d.joints[j] =
            scaled + Eigen::Vector3d(rng.gaussian(0.0, sigma_3d),
                                     rng.gaussian(0.0, sigma_3d),
                                     rng.gaussian(0.0, sigma_3d));
    }

    std::vector<bool> dropped(joint_count, false);
    std::vector<int> corrupted;
    if (occluded) {
        const double sigma_occ = spec.sigma_occ_mm / 1000.0;
        for (int j = 0; j < joint_count; ++j) {
            if (!rng.bernoulli(spec.occluded_joint_fraction)) continue;
            corrupted.push_back(j);
            view.pose3d.joints[j] += Eigen::Vector3d(rng.gaussian(0.0, sigma_occ),
                                                     rng.gaussian(0.0, sigma_occ),
                                                     rng.gaussian(0.0, sigma_occ));
            view.pose3d.confidence[j] = 0.5;
            if (rng.bernoulli(spec.detection_drop_prob)) {
                dropped[j] = true;
            }
        }
    }

    for (int j = 0; j < joint_count; ++j) {
        if (dropped[j]) continue;
        const auto projected = geom::project(camera, gt.joints[j]);
        if (!projected) {
            // Degenerate geometry counts as occluded for accounting purposes.
            if (std::find(corrupted.begin(), corrupted.end(), j) == corrupted.end()) {
                corrupted.push_back(j);
            }
            continue;
        }
        view.detection2d.joints[j] = *projected + Eigen::Vector2d(
                                                      rng.gaussian(0.0, spec.sigma_2d_px),
                                                      rng.gaussian(0.0, spec.sigma_2d_px));
        view.detection2d.visible[j] = true;
        view.detection2d.confidence[j] = 1.0;
    }
    for (int j = 0; j < joint_count; ++j) {
        if (dropped[j] &&
            std::find(corrupted.begin(), corrupted.end(), j) == corrupted.end()) {
            corrupted.push_back(j);
        }
    }
    std::sort(corrupted.begin(), corrupted.end());

    if (occluded_joints_out) {
        *occluded_joints_out = std::move(corrupted);
    }
    return view;
}

std::vector<int> choose_occluded_views(int view_count, int count, Rng& rng) {
    if (count < 0 || count > view_count) {
        throw std::invalid_argument("occluded view count " + std::to_string(count) +
                                    " exceeds rig size " + std::to_string(view_count));
    }
    std::vector<int> indices(view_count);
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < count; ++i) {
        const int pick = rng.uniform_int(i, view_count - 1);
        std::swap(indices[i], indices[pick]);
    }
    indices.resize(count);
    std::sort(indices.begin(), indices.end());
    return indices;
}

Frame occlude_views(int64_t frame_id, const skel::Pose3D& gt,
                    const std::vector<geom::Camera>& cameras,
                    const CorruptionSpec& spec, int count, Rng& rng) {
    const std::vector<int> occluded =
        choose_occluded_views(static_cast<int>(cameras.size()), count, rng);

    Frame frame;
    frame.frame_id = frame_id;
    frame.gt = gt;
    frame.views.reserve(cameras.size());
    for (int i = 0; i < static_cast<int>(cameras.size()); ++i) {
        const bool is_occluded =
            std::binary_search(occluded.begin(), occluded.end(), i);
        std::vector<int> mask;
        frame.views.push_back(
            corrupt_view(gt, cameras[i], spec, is_occluded, rng, &mask));
        if (is_occluded) {
            frame.occluded_views.push_back(cameras[i].id);
        }
        if (!mask.empty()) {
            frame.occluded_joints[cameras[i].id] = std::move(mask);
        }
    }
    return frame;
}

int desync_offset(Rng& rng) {
    static constexpr int kOffsets[4] = {-2, -1, +1, +2};
    return kOffsets[rng.uniform_int(0, 3)];
}

std::vector<Frame> apply_desync(const std::vector<Frame>& sequence,
                                const std::vector<std::string>& desynced_camera_ids,
                                Rng& rng) {
    const int length = static_cast<int>(sequence.size());
    if (length < 5) {
        throw std::invalid_argument("apply_desync: sequence must have at least 5 frames");
    }
    std::vector<std::string> ids = desynced_camera_ids;
    std::sort(ids.begin(), ids.end());

    std::vector<Frame> out = sequence;
    for (int t = 0; t < length; ++t) {
        for (const std::string& id : ids) {
            const int offset = desync_offset(rng);
            const int source = std::clamp(t + offset, 0, length - 1);
            const Frame& src_frame = sequence[source];
            const auto src_view =
                std::find_if(src_frame.views.begin(), src_frame.views.end(),
                             [&](const fusion::ViewPrediction& v) { return v.camera_id == id; });
            if (src_view == src_frame.views.end()) {
                throw std::invalid_argument("apply_desync: camera '" + id +
                                            "' missing from frame " +
                                            std::to_string(source));
            }
            Frame& dst_frame = out[t];
            const auto dst_view =
                std::find_if(dst_frame.views.begin(), dst_frame.views.end(),
                             [&](const fusion::ViewPrediction& v) { return v.camera_id == id; });
            if (dst_view == dst_frame.views.end()) {
                throw std::invalid_argument("apply_desync: camera '" + id +
                                            "' missing from frame " + std::to_string(t));
            }
            *dst_view = *src_view;

            // Occlusion bookkeeping travels with the served view.
            const bool src_occluded =
                std::find(src_frame.occluded_views.begin(), src_frame.occluded_views.end(),
                          id) != src_frame.occluded_views.end();
            auto& dst_list = dst_frame.occluded_views;
            const auto dst_pos = std::find(dst_list.begin(), dst_list.end(), id);
            if (src_occluded && dst_pos == dst_list.end()) dst_list.push_back(id);
            if (!src_occluded && dst_pos != dst_list.end()) dst_list.erase(dst_pos);
            const auto src_mask = src_frame.occluded_joints.find(id);
            if (src_mask != src_frame.occluded_joints.end()) {
                dst_frame.occluded_joints[id] = src_mask->second;
            } else {
                dst_frame.occluded_joints.erase(id);
            }
        }
        std::sort(out[t].occluded_views.begin(), out[t].occluded_views.end());
    }
    return out;
}

namespace {

void validate_corruption(const CorruptionSpec& spec) {
    if (spec.sigma_2d_px < 0.0 || spec.sigma_3d_mm < 0.0 || spec.sigma_occ_mm < 0.0) {
        throw std::invalid_argument("corruption sigmas must be non-negative");
    }
    if (spec.occluded_joint_fraction < 0.0 || spec.occluded_joint_fraction > 1.0 ||
        spec.detection_drop_prob < 0.0 || spec.detection_drop_prob > 1.0) {
        throw std::invalid_argument(
            "occluded_joint_fraction and detection_drop_prob must lie in [0,1]");
    }
    if (!(spec.ray_scale_range[0] <= spec.ray_scale_range[1]) ||
        spec.ray_scale_range[0] <= 0.0) {
        throw std::invalid_argument("ray_scale_range must be a positive interval");
    }
}

}  // namespace

GeneratedSequence generate_sequence(const RigSpec& rig, const MotionSpec& motion,
                                    const CorruptionSpec& corruption, int length) {
    if (length < 1) {
        throw std::invalid_argument("sequence length must be positive");
    }
    validate_corruption(corruption);
    if (corruption.occluded_view_count > rig.camera_count) {
        throw std::invalid_argument("occluded_view_count exceeds camera_count");
    }

    GeneratedSequence out;
    out.cameras = make_rig(rig);
    out.manifest.seed = corruption.seed;
    out.manifest.length = length;
    out.manifest.rig = rig;
    out.manifest.motion = motion;
    out.manifest.corruption = corruption;

    Rng rng(corruption.seed);
    const MotionModel motion_model(motion, rng);
    out.frames.reserve(length);
    for (int t = 0; t < length; ++t) {
        out.frames.push_back(occlude_views(t, motion_model.pose_at(t), out.cameras,
                                           corruption, corruption.occluded_view_count,
                                           rng));
    }
    return out;
}

}  // namespace mvpose::synth
