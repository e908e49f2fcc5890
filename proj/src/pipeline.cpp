#include "mvpose/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mvpose::pipeline {

namespace {

std::vector<fusion::ViewPrediction> usable_views(const synth::Frame& frame,
                                                 const std::vector<std::string>& dropped) {
    std::vector<fusion::ViewPrediction> views;
    views.reserve(frame.views.size());
    for (const fusion::ViewPrediction& view : frame.views) {
        if (std::find(dropped.begin(), dropped.end(), view.camera_id) == dropped.end()) {
            views.push_back(view);
        }
    }
    if (views.empty()) {
        throw std::runtime_error("frame " + std::to_string(frame.frame_id) +
                                 ": no views left after dropping cameras");
    }
    return views;
}

// Joints whose weight row is all zero get a uniform row over the views with
// finite predictions; fusion then cannot fail and metrics see every joint.
int patch_unresolvable_joints(const std::vector<fusion::ViewPrediction>& views,
                              fusion::WeightMatrix* weights) {
    int patched = 0;
    for (int j = 0; j < weights->weights.rows(); ++j) {
        if (weights->weights.row(j).sum() > 0.0) continue;
        ++patched;
        for (int i = 0; i < weights->weights.cols(); ++i) {
            if (views[i].pose3d.joints[j].allFinite()) {
                weights->weights(j, i) = 1.0;
            }
        }
    }
    return patched;
}

double signed_residual_sum(const skel::Pose3D& pose, const skel::JointConvention& conv) {
    double sum = 0.0;
    for (double r : skel::symmetry_residuals(pose, conv)) sum += r;
    return sum;
}

std::vector<std::string> sorted_camera_ids(const std::vector<geom::Camera>& cameras) {
    std::vector<std::string> ids;
    ids.reserve(cameras.size());
    for (const geom::Camera& cam : cameras) ids.push_back(cam.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::string> pick_ids(const std::vector<std::string>& ids, int count,
                                  Rng& rng) {
    std::vector<int> indices(ids.size());
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < count; ++i) {
        std::swap(indices[i], indices[rng.uniform_int(i, static_cast<int>(ids.size()) - 1)]);
    }
    indices.resize(count);
    std::sort(indices.begin(), indices.end());
    std::vector<std::string> picked;
    picked.reserve(count);
    for (int i : indices) picked.push_back(ids[i]);
    return picked;
}

}  // namespace

FrameResult run_frame(const synth::Frame& frame, const std::vector<geom::Camera>& cameras,
                      const skel::JointConvention& conv, const Options& options) {
    const std::vector<fusion::ViewPrediction> views =
        usable_views(frame, options.drop_cameras);

    const Eigen::MatrixXd errors = fusion::per_joint_errors(views, cameras);
    fusion::WeightMatrix weights =
        fusion::compute_weights(views, cameras, errors, options.fusion);

    FrameResult result;
    result.frame_id = frame.frame_id;
    result.fallback_joints = patch_unresolvable_joints(views, &weights);
    result.fused = fusion::fuse(views, weights, options.fusion);

    if (options.optimize) {
        std::vector<geom::Camera> view_cameras;
        std::vector<skel::Detection2D> detections;
        view_cameras.reserve(views.size());
        detections.reserve(views.size());
        for (const fusion::ViewPrediction& view : views) {
            const auto cam = std::find_if(cameras.begin(), cameras.end(),
                                          [&](const geom::Camera& c) { return c.id == view.camera_id; });
            if (cam == cameras.end()) {
                throw std::runtime_error("unknown camera id '" + view.camera_id + "'");
            }
            view_cameras.push_back(*cam);
            detections.push_back(view.detection2d);
        }
        result.optimization =
            opt::refine(result.fused, view_cameras, detections, conv, options.objective);
        result.final_pose = result.optimization->pose;
    } else {
        result.final_pose = result.fused;
    }

    result.fused_metrics =
        metrics::frame_metrics(frame.frame_id, result.fused, frame.gt, conv, options.metric);
    result.final_metrics = metrics::frame_metrics(frame.frame_id, result.final_pose,
                                                  frame.gt, conv, options.metric);
    result.fused_sym_abs_sum = std::abs(signed_residual_sum(result.fused, conv));
    result.final_sym_abs_sum = std::abs(signed_residual_sum(result.final_pose, conv));
    return result;
}

RunResult run_sequence(const std::vector<synth::Frame>& frames,
                       const std::vector<geom::Camera>& cameras,
                       const skel::JointConvention& conv, const Options& options,
                       const std::string& label) {
    RunResult result;
    result.label = label;
    result.frames.reserve(frames.size());
    for (const synth::Frame& frame : frames) {
        result.frames.push_back(run_frame(frame, cameras, conv, options));
    }
    return result;
}

namespace {

double mean_over_frames(const RunResult& result, int skip_front, int skip_back,
                        double metrics::FrameMetrics::*field) {
    const int n = static_cast<int>(result.frames.size());
    const int begin = skip_front;
    const int end = n - skip_back;
    if (begin >= end) {
        throw std::invalid_argument("no frames left after boundary exclusion");
    }
    double sum = 0.0;
    for (int i = begin; i < end; ++i) {
        sum += result.frames[i].final_metrics.*field;
    }
    return sum / (end - begin);
}

}  // namespace

double mean_final_abs(const RunResult& result, int skip_front, int skip_back) {
    return mean_over_frames(result, skip_front, skip_back,
                            &metrics::FrameMetrics::mpjpe_abs);
}

double mean_final_rel(const RunResult& result, int skip_front, int skip_back) {
    return mean_over_frames(result, skip_front, skip_back,
                            &metrics::FrameMetrics::mpjpe_rel);
}

std::vector<metrics::FrameMetrics> final_frame_metrics(const RunResult& result) {
    std::vector<metrics::FrameMetrics> out;
    out.reserve(result.frames.size());
    for (const FrameResult& frame : result.frames) out.push_back(frame.final_metrics);
    return out;
}

std::vector<AblationRow> run_desync_ablation(const std::vector<synth::Frame>& frames,
                                             const std::vector<geom::Camera>& cameras,
                                             const skel::JointConvention& conv,
                                             const Options& options, uint64_t seed) {
    const std::vector<std::string> ids = sorted_camera_ids(cameras);
    const int camera_count = static_cast<int>(ids.size());
    constexpr int kBoundary = 2;  // clamped offsets live in the first/last 2 frames

    Rng rng(seed);
    std::vector<AblationRow> rows;
    for (int count = 0; count < camera_count; ++count) {
        std::vector<synth::Frame> scenario;
        const std::vector<synth::Frame>* input = &frames;
        if (count > 0) {
            const std::vector<std::string> desynced = pick_ids(ids, count, rng);
            scenario = synth::apply_desync(frames, desynced, rng);
            input = &scenario;
        }
        const RunResult result = run_sequence(*input, cameras, conv, options);
        rows.push_back({count, mean_final_abs(result, kBoundary, kBoundary),
                        mean_final_rel(result, kBoundary, kBoundary)});
    }
    return rows;
}

std::vector<AblationRow> run_view_ablation(const std::vector<synth::Frame>& frames,
                                           const std::vector<geom::Camera>& cameras,
                                           const skel::JointConvention& conv,
                                           const Options& options, uint64_t seed) {
    const std::vector<std::string> ids = sorted_camera_ids(cameras);
    const int camera_count = static_cast<int>(ids.size());
    if (camera_count < 2) {
        throw std::invalid_argument("view ablation needs at least 2 cameras");
    }

    Rng rng(seed);
    std::vector<AblationRow> rows;
    for (int count = camera_count; count >= 2; --count) {
        Options scenario_options = options;
        if (count < camera_count) {
            const std::vector<std::string> kept = pick_ids(ids, count, rng);
            for (const std::string& id : ids) {
                if (std::find(kept.begin(), kept.end(), id) == kept.end()) {
                    scenario_options.drop_cameras.push_back(id);
                }
            }
        }
        const RunResult result = run_sequence(frames, cameras, conv, scenario_options);
        rows.push_back({count, mean_final_abs(result), mean_final_rel(result)});
    }
    return rows;
}

}  // namespace mvpose::pipeline
