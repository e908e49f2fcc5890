#include "mvpose/io.hpp"
#include "mvpose/pipeline.hpp"
#include "mvpose/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace mvpose;

namespace {

struct PipelineFlags {
    std::string config_path;
    std::string strategy;
    double epsilon = -1.0;
    int min_views = -1;
    double lambda_sym = -1.0;
    int max_iters = -1;
    bool no_optimize = false;
    std::string drop_cameras;
    bool exclude_pelvis_rel = false;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags* flags) {
    cmd->add_option("--config", flags->config_path, "Run configuration file (JSON)")
        ->envname("MVPOSE_CONFIG");
    cmd->add_option("--weights-strategy", flags->strategy,
                    "per_joint_reprojection|confidence|inverse_distance|uniform");
    cmd->add_option("--epsilon", flags->epsilon, "Reprojection error floor, px^2");
    cmd->add_option("--min-views", flags->min_views, "Minimum usable views per joint");
    cmd->add_option("--lambda-sym", flags->lambda_sym, "Symmetry cost multiplier");
    cmd->add_option("--max-iters", flags->max_iters, "Refinement iteration budget");
    cmd->add_flag("--no-optimize", flags->no_optimize, "Stop after fusion");
    cmd->add_option("--drop-cameras", flags->drop_cameras,
                    "Comma-separated camera ids to ignore");
    cmd->add_flag("--exclude-pelvis-rel", flags->exclude_pelvis_rel,
                  "Exclude the pelvis from relative MPJPE");
}

std::vector<std::string> split_ids(const std::string& text) {
    std::vector<std::string> ids;
    std::istringstream in(text);
    std::string id;
    while (std::getline(in, id, ',')) {
        if (!id.empty()) ids.push_back(id);
    }
    return ids;
}

pipeline::Options make_options(const PipelineFlags& flags) {
    io::RunConfig base;
    if (!flags.config_path.empty()) {
        base = io::load_run_config(flags.config_path);
    }
    pipeline::Options options;
    options.fusion = base.fusion;
    options.objective = base.objective;
    options.metric = base.metric;
    options.optimize = base.optimize;
    if (!flags.strategy.empty()) {
        options.fusion.strategy = fusion::weight_strategy_from_string(flags.strategy);
    }
    if (flags.epsilon >= 0.0) options.fusion.epsilon = flags.epsilon;
    if (flags.min_views >= 0) options.fusion.min_views = flags.min_views;
    if (flags.lambda_sym >= 0.0) options.objective.lambda_sym = flags.lambda_sym;
    if (flags.max_iters >= 0) options.objective.max_iters = flags.max_iters;
    if (flags.no_optimize) options.optimize = false;
    if (flags.exclude_pelvis_rel) options.metric.include_pelvis_in_relative = false;
    options.drop_cameras = split_ids(flags.drop_cameras);
    return options;
}

void print_summaries(const std::vector<metrics::SequenceSummary>& summaries) {
    std::printf("%-16s %8s %14s %16s %14s %16s\n", "label", "frames", "mean_abs_mm",
                "median_abs_mm", "mean_rel_mm", "median_rel_mm");
    for (const metrics::SequenceSummary& s : summaries) {
        std::printf("%-16s %8d %14.4f %16.4f %14.4f %16.4f\n", s.label.c_str(),
                    s.frame_count, s.mean_abs, s.median_abs, s.mean_rel, s.median_rel);
    }
}

void write_run_outputs(const pipeline::RunResult& result, const fs::path& out_dir,
                       uint64_t seed) {
    std::vector<metrics::FrameMetrics> frame_metrics = final_frame_metrics(result);
    std::vector<std::string> labels(frame_metrics.size(), result.label);
    const auto summaries = metrics::aggregate(frame_metrics, labels);
    io::write_metrics(frame_metrics, labels, summaries, out_dir / "metrics.csv",
                      out_dir / "summary.csv", seed);

    std::vector<std::pair<int64_t, skel::Pose3D>> poses;
    poses.reserve(result.frames.size());
    for (const pipeline::FrameResult& frame : result.frames) {
        poses.emplace_back(frame.frame_id, frame.final_pose);
    }
    io::save_poses(poses, out_dir / "poses.jsonl", seed);
    print_summaries(summaries);
}

void write_ablation_csv(const std::vector<pipeline::AblationRow>& rows,
                        const fs::path& path, const std::string& count_column,
                        uint64_t seed) {
    std::ostringstream out;
    out << "# mvpose_ablation v" << io::kFormatVersion << " seed=" << seed << "\n";
    out << count_column << ",mean_abs_mm,mean_rel_mm\n";
    for (const pipeline::AblationRow& row : rows) {
        out << row.count << ',' << io::format_double(row.mean_abs_mm) << ','
            << io::format_double(row.mean_rel_mm) << '\n';
    }
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
    file << out.str();
    std::cout << out.str();
}

int cmd_synth(const fs::path& output, const synth::RigSpec& rig,
              const synth::MotionSpec& motion, const synth::CorruptionSpec& corruption,
              int frames) {
    const synth::GeneratedSequence generated =
        synth::generate_sequence(rig, motion, corruption, frames);
    io::save_dataset(generated, output);
    std::cout << "wrote " << frames << " frames, " << rig.camera_count
              << " cameras to " << output.string() << "\n";
    return 0;
}

int cmd_run(const fs::path& dataset_dir, const fs::path& output,
            const PipelineFlags& flags, const std::string& label, uint64_t seed,
            bool seed_given) {
    const io::Dataset dataset = io::load_dataset(dataset_dir);
    const pipeline::Options options = make_options(flags);
    pipeline::RunResult result =
        pipeline::run_sequence(dataset.frames, dataset.cameras, dataset.convention,
                               options, label);
    write_run_outputs(result, output, seed_given ? seed : dataset.manifest.seed);
    return 0;
}

int cmd_evaluate(const fs::path& dataset_dir, const fs::path& poses_path,
                 const fs::path& output, const std::string& label,
                 bool exclude_pelvis) {
    const io::Dataset dataset = io::load_dataset(dataset_dir);
    const auto poses = io::load_poses(poses_path);
    metrics::MetricConfig metric_config;
    metric_config.include_pelvis_in_relative = !exclude_pelvis;

    std::map<int64_t, const synth::Frame*> frames_by_id;
    for (const synth::Frame& frame : dataset.frames) frames_by_id[frame.frame_id] = &frame;

    std::vector<metrics::FrameMetrics> frame_metrics;
    for (const auto& [frame_id, pose] : poses) {
        const auto it = frames_by_id.find(frame_id);
        if (it == frames_by_id.end()) {
            throw std::runtime_error("poses reference frame " + std::to_string(frame_id) +
                                     " absent from the dataset");
        }
        frame_metrics.push_back(metrics::frame_metrics(
            frame_id, pose, it->second->gt, dataset.convention, metric_config));
    }
    std::vector<std::string> labels(frame_metrics.size(), label);
    const auto summaries = metrics::aggregate(frame_metrics, labels);
    io::write_metrics(frame_metrics, labels, summaries, output / "metrics.csv",
                      output / "summary.csv", dataset.manifest.seed);
    print_summaries(summaries);
    return 0;
}

int cmd_compare(const std::vector<std::string>& inputs, const fs::path& output,
                const std::vector<std::string>& names) {
    std::vector<std::string> run_names;
    for (size_t i = 0; i < inputs.size(); ++i) {
        run_names.push_back(i < names.size() ? names[i] : inputs[i]);
    }

    std::vector<std::vector<metrics::SequenceSummary>> runs;
    for (const std::string& input : inputs) {
        runs.push_back(io::read_summary_csv(input));
        if (runs.back().empty()) {
            throw std::runtime_error(input + ": no summary rows");
        }
    }

    const auto label_set = [](const std::vector<metrics::SequenceSummary>& run) {
        std::set<std::string> labels;
        for (const auto& s : run) labels.insert(s.label);
        return labels;
    };
    const std::set<std::string> reference = label_set(runs.front());
    for (size_t i = 1; i < runs.size(); ++i) {
        const std::set<std::string> other = label_set(runs[i]);
        if (other != reference) {
            std::ostringstream msg;
            msg << inputs[i] << ": label mismatch vs " << inputs.front() << ";";
            for (const std::string& l : reference) {
                if (!other.count(l)) msg << " missing '" << l << "'";
            }
            for (const std::string& l : other) {
                if (!reference.count(l)) msg << " extra '" << l << "'";
            }
            throw std::runtime_error(msg.str());
        }
    }

    std::ostringstream out;
    out << "metric,run";
    for (const std::string& label : reference) out << ',' << label;
    out << ",Avg\n";
    for (const char* metric : {"abs_mm", "rel_mm"}) {
        for (size_t i = 0; i < runs.size(); ++i) {
            out << metric << ',' << run_names[i];
            double total = 0.0;
            for (const std::string& label : reference) {
                const auto it =
                    std::find_if(runs[i].begin(), runs[i].end(),
                                 [&](const auto& s) { return s.label == label; });
                const double value = std::string(metric) == "abs_mm" ? it->mean_abs
                                                                     : it->mean_rel;
                total += value;
                out << ',' << io::format_double(value);
            }
            out << ',' << io::format_double(total / reference.size()) << '\n';
        }
    }

    std::cout << out.str();
    if (!output.empty()) {
        if (output.has_parent_path()) fs::create_directories(output.parent_path());
        std::ofstream file(output, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write '" + output.string() + "'");
        file << out.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Occlusion-aware multi-view 3D human pose fusion"};
    app.require_subcommand(1);

    // --- synth ---
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
    fs::path synth_output;
    int synth_frames = 100;
    synth::RigSpec rig;
    synth::MotionSpec motion;
    synth::CorruptionSpec corruption;
    std::vector<double> velocity;
    bool asymmetric_bones = false;
    bool static_pose = false;
    synth_cmd->add_option("--output,-o", synth_output, "Dataset directory")->required();
    synth_cmd->add_option("--frames", synth_frames, "Sequence length");
    synth_cmd->add_option("--cameras", rig.camera_count, "Ring camera count");
    synth_cmd->add_option("--radius", rig.radius, "Ring radius, m");
    synth_cmd->add_option("--height", rig.height, "Camera height, m");
    synth_cmd->add_option("--fov", rig.fov_deg, "Horizontal field of view, deg");
    synth_cmd->add_option("--image-width", rig.image_width, "Image width, px");
    synth_cmd->add_option("--image-height", rig.image_height, "Image height, px");
    synth_cmd->add_option("--occluded-views", corruption.occluded_view_count,
                          "Occluded views per frame");
    synth_cmd->add_option("--sigma-2d", corruption.sigma_2d_px, "Detection noise, px");
    synth_cmd->add_option("--sigma-3d", corruption.sigma_3d_mm, "Prediction noise, mm");
    synth_cmd->add_option("--sigma-occ", corruption.sigma_occ_mm,
                          "Occluded-joint noise, mm");
    synth_cmd->add_option("--joint-fraction", corruption.occluded_joint_fraction,
                          "Fraction of joints corrupted in an occluded view");
    synth_cmd->add_option("--drop-prob", corruption.detection_drop_prob,
                          "Probability an occluded joint loses its detection");
    synth_cmd->add_option("--ray-scale-min", corruption.ray_scale_range[0],
                          "Ray scale lower bound");
    synth_cmd->add_option("--ray-scale-max", corruption.ray_scale_range[1],
                          "Ray scale upper bound");
    synth_cmd->add_option("--seed", corruption.seed, "RNG seed");
    synth_cmd->add_option("--velocity", velocity, "Root velocity, m/frame")
        ->expected(3);
    synth_cmd->add_option("--amplitude", motion.angle_amplitude_rad,
                          "Joint angle amplitude, rad");
    synth_cmd->add_flag("--asymmetric-bones", asymmetric_bones,
                        "Keep left/right bone lengths independent");
    synth_cmd->add_flag("--static", static_pose, "Freeze the pose over time");

    // --- run ---
    auto* run_cmd = app.add_subcommand("run", "Fuse, refine and evaluate a dataset");
    fs::path run_dataset, run_output;
    std::string run_label = "seq";
    uint64_t run_seed = 0;
    PipelineFlags run_flags;
    run_cmd->add_option("--dataset", run_dataset, "Dataset directory")->required();
    run_cmd->add_option("--output,-o", run_output, "Output directory")->required();
    run_cmd->add_option("--label", run_label, "Sequence label for reports");
    auto* run_seed_opt = run_cmd->add_option("--seed", run_seed,
                                             "Seed stamped into outputs "
                                             "(defaults to the dataset seed)");
    add_pipeline_flags(run_cmd, &run_flags);

    // --- evaluate ---
    auto* eval_cmd = app.add_subcommand("evaluate", "Score saved poses against a dataset");
    fs::path eval_dataset, eval_poses, eval_output;
    std::string eval_label = "seq";
    bool eval_exclude_pelvis = false;
    eval_cmd->add_option("--dataset", eval_dataset, "Dataset directory")->required();
    eval_cmd->add_option("--poses", eval_poses, "Poses JSONL from a run")->required();
    eval_cmd->add_option("--output,-o", eval_output, "Output directory")->required();
    eval_cmd->add_option("--label", eval_label, "Sequence label for reports");
    eval_cmd->add_flag("--exclude-pelvis-rel", eval_exclude_pelvis,
                       "Exclude the pelvis from relative MPJPE");

    // --- ablate-desync ---
    auto* desync_cmd =
        app.add_subcommand("ablate-desync", "MPJPE vs number of desynchronized cameras");
    fs::path desync_dataset, desync_output;
    uint64_t desync_seed = 0;
    PipelineFlags desync_flags;
    desync_cmd->add_option("--dataset", desync_dataset, "Dataset directory")->required();
    desync_cmd->add_option("--output,-o", desync_output, "CSV path")->required();
    desync_cmd->add_option("--seed", desync_seed, "Seed for camera picks and offsets");
    add_pipeline_flags(desync_cmd, &desync_flags);

    // --- ablate-views ---
    auto* views_cmd =
        app.add_subcommand("ablate-views", "MPJPE vs number of available cameras");
    fs::path views_dataset, views_output;
    uint64_t views_seed = 0;
    PipelineFlags views_flags;
    views_cmd->add_option("--dataset", views_dataset, "Dataset directory")->required();
    views_cmd->add_option("--output,-o", views_output, "CSV path")->required();
    views_cmd->add_option("--seed", views_seed, "Seed for camera subset picks");
    add_pipeline_flags(views_cmd, &views_flags);

    // --- compare ---
    auto* compare_cmd = app.add_subcommand("compare", "Merge summary CSVs side by side");
    std::vector<std::string> compare_inputs, compare_names;
    fs::path compare_output;
    compare_cmd->add_option("inputs", compare_inputs, "Summary CSV files")
        ->required()
        ->expected(-2);
    compare_cmd->add_option("--output,-o", compare_output, "Merged CSV path");
    compare_cmd->add_option("--names", compare_names, "Run names, one per input");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            if (velocity.size() == 3) {
                motion.root_velocity = Eigen::Vector3d(velocity[0], velocity[1], velocity[2]);
            }
            if (static_pose) {
                motion.root_velocity.setZero();
                motion.angle_amplitude_rad = 0.0;
            }
            motion.symmetric_bones = !asymmetric_bones;
            return cmd_synth(synth_output, rig, motion, corruption, synth_frames);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run_dataset, run_output, run_flags, run_label, run_seed,
                           run_seed_opt->count() > 0);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(eval_dataset, eval_poses, eval_output, eval_label,
                                eval_exclude_pelvis);
        }
        if (desync_cmd->parsed()) {
            const io::Dataset dataset = io::load_dataset(desync_dataset);
            const auto rows =
                pipeline::run_desync_ablation(dataset.frames, dataset.cameras,
                                              dataset.convention, make_options(desync_flags),
                                              desync_seed);
            write_ablation_csv(rows, desync_output, "desynced_cameras", desync_seed);
            return 0;
        }
        if (views_cmd->parsed()) {
            const io::Dataset dataset = io::load_dataset(views_dataset);
            const auto rows =
                pipeline::run_view_ablation(dataset.frames, dataset.cameras,
                                            dataset.convention, make_options(views_flags),
                                            views_seed);
            write_ablation_csv(rows, views_output, "cameras", views_seed);
            return 0;
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(compare_inputs, compare_output, compare_names);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
