#pragma once

#include "mvpose/fusion.hpp"
#include "mvpose/geometry.hpp"
#include "mvpose/metrics.hpp"
#include "mvpose/optimizer.hpp"
#include "mvpose/skeleton.hpp"
#include "mvpose/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace mvpose::io {

inline constexpr int kFormatVersion = 1;

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Calibration file: JSON array of {id, fx, fy, cx, cy, width, height,
// R (row-major 9), t (3)}. An optional nonzero distortion block is rejected.
// Validates orthonormality and id uniqueness; errors name the camera.
std::vector<geom::Camera> load_cameras(const std::filesystem::path& path);
void save_cameras(const std::vector<geom::Camera>& cameras,
                  const std::filesystem::path& path);

skel::JointConvention load_convention(const std::filesystem::path& path);
void save_convention(const skel::JointConvention& conv,
                     const std::filesystem::path& path);

// Sequence JSONL: a header object carrying format version and seed, then one
// frame per line. Loading validates per line and reports the line number.
void save_sequence(const std::vector<synth::Frame>& frames,
                   const std::filesystem::path& path, uint64_t seed);
std::vector<synth::Frame> load_sequence(const std::filesystem::path& path,
                                        int expected_joint_count = -1);

void save_manifest(const synth::SequenceManifest& manifest,
                   const std::filesystem::path& path);
synth::SequenceManifest load_manifest(const std::filesystem::path& path);

// Dataset directory bundle: manifest.json, cameras.json, convention.json,
// sequence.jsonl.
struct Dataset {
    std::vector<geom::Camera> cameras;
    skel::JointConvention convention;
    std::vector<synth::Frame> frames;
    synth::SequenceManifest manifest;
};
void save_dataset(const synth::GeneratedSequence& generated,
                  const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

// Per-frame CSV row: frame_id,label,mpjpe_abs_mm,mpjpe_rel_mm,joint_0_mm,...
// Summary CSV row: label,frames,mean_abs_mm,median_abs_mm,mean_rel_mm,median_rel_mm
// Both start with a comment line carrying format version and seed.
// Empty input is an error and creates no file.
void write_metrics(const std::vector<metrics::FrameMetrics>& frames,
                   const std::vector<std::string>& labels,
                   const std::vector<metrics::SequenceSummary>& summaries,
                   const std::filesystem::path& per_frame_csv,
                   const std::filesystem::path& summary_csv, uint64_t seed);
std::vector<metrics::FrameMetrics> read_metrics_csv(const std::filesystem::path& path);
std::vector<metrics::SequenceSummary> read_summary_csv(const std::filesystem::path& path);

// Refined pose JSONL, one {frame_id, joints, conf} per line after the header.
void save_poses(const std::vector<std::pair<int64_t, skel::Pose3D>>& poses,
                const std::filesystem::path& path, uint64_t seed);
std::vector<std::pair<int64_t, skel::Pose3D>> load_poses(const std::filesystem::path& path);

// Flat key-value run configuration; unset keys keep defaults. Referenced
// files must exist.
struct RunConfig {
    std::filesystem::path cameras;
    std::filesystem::path sequence;
    std::filesystem::path convention;
    std::filesystem::path output_dir = "out";
    fusion::FusionConfig fusion;
    opt::ObjectiveConfig objective;
    metrics::MetricConfig metric;
    bool optimize = true;
    uint64_t seed = 0;
    std::string label = "seq";
};
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace mvpose::io
