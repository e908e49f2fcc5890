#pragma once

#include "mvpose/skeleton.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mvpose::metrics {

struct MetricConfig {
    // The pelvis is zero by construction after alignment; reports state
    // whether it was averaged in.
    bool include_pelvis_in_relative = true;
};

struct FrameMetrics {
    int64_t frame_id = 0;
    double mpjpe_abs = 0.0;               // mm
    double mpjpe_rel = 0.0;               // mm
    std::vector<double> per_joint_abs;    // mm
};

struct SequenceSummary {
    std::string label;
    int frame_count = 0;
    double mean_abs = 0.0;
    double median_abs = 0.0;
    double mean_rel = 0.0;
    double median_rel = 0.0;
};

// Mean per-joint Euclidean distance, mm. Throws on joint-count mismatch or
// non-finite coordinates; the pipeline must fill every joint before scoring.
double mpjpe_absolute(const skel::Pose3D& pred, const skel::Pose3D& gt);

// Translates pred so its pelvis coincides with gt's (no rotation or scale),
// then measures mpjpe_absolute.
double mpjpe_relative(const skel::Pose3D& pred, const skel::Pose3D& gt,
                      const skel::JointConvention& conv,
                      const MetricConfig& config = {});

FrameMetrics frame_metrics(int64_t frame_id, const skel::Pose3D& pred,
                           const skel::Pose3D& gt, const skel::JointConvention& conv,
                           const MetricConfig& config = {});

// Group frames by label (parallel array) into per-label summaries, ordered
// by label. Throws on empty input or length mismatch.
std::vector<SequenceSummary> aggregate(const std::vector<FrameMetrics>& frames,
                                       const std::vector<std::string>& labels);

}  // namespace mvpose::metrics
