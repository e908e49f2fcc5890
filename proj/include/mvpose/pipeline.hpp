#pragma once

#include "mvpose/fusion.hpp"
#include "mvpose/metrics.hpp"
#include "mvpose/optimizer.hpp"
#include "mvpose/rng.hpp"
#include "mvpose/synth.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mvpose::pipeline {

struct Options {
    fusion::FusionConfig fusion;
    opt::ObjectiveConfig objective;
    metrics::MetricConfig metric;
    bool optimize = true;
    std::vector<std::string> drop_cameras;
};

struct FrameResult {
    int64_t frame_id = 0;
    skel::Pose3D fused;
    skel::Pose3D final_pose;  // refined pose, or the fused pose when optimize is off
    std::optional<opt::OptimizationResult> optimization;
    metrics::FrameMetrics fused_metrics;
    metrics::FrameMetrics final_metrics;
    double fused_sym_abs_sum = 0.0;  // |sum of limb-length residuals|, meters
    double final_sym_abs_sum = 0.0;
    int fallback_joints = 0;  // joints fused with the uniform fallback
};

struct RunResult {
    std::string label;
    std::vector<FrameResult> frames;
};

// Fuse one frame's views, optionally refine, and score against ground truth.
// Joints with no usable view under the configured strategy fall back to a
// uniform average over the views with finite predictions, so every joint is
// filled before metric time.
FrameResult run_frame(const synth::Frame& frame,
                      const std::vector<geom::Camera>& cameras,
                      const skel::JointConvention& conv, const Options& options);

RunResult run_sequence(const std::vector<synth::Frame>& frames,
                       const std::vector<geom::Camera>& cameras,
                       const skel::JointConvention& conv, const Options& options,
                       const std::string& label = "seq");

// Mean final MPJPE-abs (mm) over frames, optionally skipping boundary frames.
double mean_final_abs(const RunResult& result, int skip_front = 0, int skip_back = 0);
double mean_final_rel(const RunResult& result, int skip_front = 0, int skip_back = 0);

std::vector<metrics::FrameMetrics> final_frame_metrics(const RunResult& result);

struct AblationRow {
    int count = 0;  // desynced cameras, or cameras in use
    double mean_abs_mm = 0.0;
    double mean_rel_mm = 0.0;
};

// Desynced-camera counts 0..C-1 with fresh per-frame offsets. The first and
// last two frames are excluded from every row's mean: offsets clamp there,
// so those frames are not comparable across counts.
std::vector<AblationRow> run_desync_ablation(const std::vector<synth::Frame>& frames,
                                             const std::vector<geom::Camera>& cameras,
                                             const skel::JointConvention& conv,
                                             const Options& options, uint64_t seed);

// Camera subsets of size C, C-1, ..., 2 (random seeded subsets; occluded
// views stay occluded).
std::vector<AblationRow> run_view_ablation(const std::vector<synth::Frame>& frames,
                                           const std::vector<geom::Camera>& cameras,
                                           const skel::JointConvention& conv,
                                           const Options& options, uint64_t seed);

}  // namespace mvpose::pipeline
