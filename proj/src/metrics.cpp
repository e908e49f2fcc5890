#include "mvpose/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mvpose::metrics {

namespace {

void check_pair(const skel::Pose3D& pred, const skel::Pose3D& gt) {
    if (pred.joint_count() != gt.joint_count()) {
        throw std::invalid_argument("joint count mismatch: pred " +
                                    std::to_string(pred.joint_count()) + " vs gt " +
                                    std::to_string(gt.joint_count()));
    }
    if (pred.joint_count() == 0) {
        throw std::invalid_argument("empty pose");
    }
    for (int j = 0; j < pred.joint_count(); ++j) {
        if (!pred.joints[j].allFinite() || !gt.joints[j].allFinite()) {
            throw std::invalid_argument("non-finite joint " + std::to_string(j) +
                                        " at metric time");
        }
    }
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double mpjpe_absolute(const skel::Pose3D& pred, const skel::Pose3D& gt) {
    check_pair(pred, gt);
    double sum = 0.0;
    for (int j = 0; j < pred.joint_count(); ++j) {
        sum += (pred.joints[j] - gt.joints[j]).norm();
    }
    return sum / pred.joint_count() * 1000.0;
}

double mpjpe_relative(const skel::Pose3D& pred, const skel::Pose3D& gt,
                      const skel::JointConvention& conv, const MetricConfig& config) {
    check_pair(pred, gt);
    const int pelvis = conv.pelvis_index;
    if (pelvis < 0 || pelvis >= pred.joint_count()) {
        throw std::invalid_argument("pelvis index out of range");
    }
    const Eigen::Vector3d shift = gt.joints[pelvis] - pred.joints[pelvis];
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < pred.joint_count(); ++j) {
        if (!config.include_pelvis_in_relative && j == pelvis) continue;
        sum += (pred.joints[j] + shift - gt.joints[j]).norm();
        ++count;
    }
    if (count == 0) {
        throw std::invalid_argument("no joints left after pelvis exclusion");
    }
    return sum / count * 1000.0;
}

FrameMetrics frame_metrics(int64_t frame_id, const skel::Pose3D& pred,
                           const skel::Pose3D& gt, const skel::JointConvention& conv,
                           const MetricConfig& config) {
    FrameMetrics out;
    out.frame_id = frame_id;
    out.mpjpe_abs = mpjpe_absolute(pred, gt);
    out.mpjpe_rel = mpjpe_relative(pred, gt, conv, config);
    out.per_joint_abs.reserve(pred.joint_count());
    for (int j = 0; j < pred.joint_count(); ++j) {
        out.per_joint_abs.push_back((pred.joints[j] - gt.joints[j]).norm() * 1000.0);
    }
    return out;
}

std::vector<SequenceSummary> aggregate(const std::vector<FrameMetrics>& frames,
                                       const std::vector<std::string>& labels) {
    if (frames.empty()) {
        throw std::invalid_argument("aggregate: no frames");
    }
    if (frames.size() != labels.size()) {
        throw std::invalid_argument("aggregate: labels must pair with frames");
    }

    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (size_t i = 0; i < frames.size(); ++i) {
        auto& [abs_values, rel_values] = groups[labels[i]];
        abs_values.push_back(frames[i].mpjpe_abs);
        rel_values.push_back(frames[i].mpjpe_rel);
    }

    std::vector<SequenceSummary> summaries;
    summaries.reserve(groups.size());
    for (const auto& [label, values] : groups) {
        const auto& [abs_values, rel_values] = values;
        SequenceSummary s;
        s.label = label;
        s.frame_count = static_cast<int>(abs_values.size());
        s.mean_abs = 0.0;
        s.mean_rel = 0.0;
        for (double v : abs_values) s.mean_abs += v;
        for (double v : rel_values) s.mean_rel += v;
        s.mean_abs /= s.frame_count;
        s.mean_rel /= s.frame_count;
        s.median_abs = median(abs_values);
        s.median_rel = median(rel_values);
        summaries.push_back(std::move(s));
    }
    return summaries;
}

}  // namespace mvpose::metrics
