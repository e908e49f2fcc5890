#include "mvpose/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace mvpose::io {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

json parse_json(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

json vec3_to_json(const Eigen::Vector3d& v) {
    return json::array({v.x(), v.y(), v.z()});
}

Eigen::Vector3d json_to_vec3(const json& value) {
    if (!value.is_array() || value.size() != 3) {
        throw std::runtime_error("expected a 3-element array");
    }
    return {value[0].get<double>(), value[1].get<double>(), value[2].get<double>()};
}

json pose_to_json(const skel::Pose3D& pose) {
    json joints = json::array();
    for (const Eigen::Vector3d& p : pose.joints) joints.push_back(vec3_to_json(p));
    return json{{"joints", std::move(joints)}, {"conf", pose.confidence}};
}

skel::Pose3D json_to_pose(const json& value) {
    skel::Pose3D pose;
    for (const json& p : value.at("joints")) pose.joints.push_back(json_to_vec3(p));
    pose.confidence = value.at("conf").get<std::vector<double>>();
    if (pose.confidence.size() != pose.joints.size()) {
        throw std::runtime_error("conf length does not match joints");
    }
    return pose;
}

json detection_to_json(const skel::Detection2D& det) {
    json joints = json::array();
    for (const Eigen::Vector2d& p : det.joints) joints.push_back(json::array({p.x(), p.y()}));
    std::vector<bool> visible(det.visible.begin(), det.visible.end());
    return json{{"joints", std::move(joints)}, {"conf", det.confidence}, {"visible", visible}};
}

skel::Detection2D json_to_detection(const json& value) {
    skel::Detection2D det;
    for (const json& p : value.at("joints")) {
        if (!p.is_array() || p.size() != 2) {
            throw std::runtime_error("det2d joint must be a 2-element array");
        }
        det.joints.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    det.confidence = value.at("conf").get<std::vector<double>>();
    det.visible = value.at("visible").get<std::vector<bool>>();
    if (det.confidence.size() != det.joints.size() ||
        det.visible.size() != det.joints.size()) {
        throw std::runtime_error("det2d field lengths disagree");
    }
    return det;
}

json frame_to_json(const synth::Frame& frame) {
    json views = json::array();
    for (const fusion::ViewPrediction& view : frame.views) {
        views.push_back(json{{"camera_id", view.camera_id},
                             {"pose3d", pose_to_json(view.pose3d)},
                             {"det2d", detection_to_json(view.detection2d)}});
    }
    json occluded_joints = json::object();
    for (const auto& [camera_id, mask] : frame.occluded_joints) {
        occluded_joints[camera_id] = mask;
    }
    return json{{"frame_id", frame.frame_id},
                {"gt", pose_to_json(frame.gt)},
                {"views", std::move(views)},
                {"occluded_views", frame.occluded_views},
                {"occluded_joints", std::move(occluded_joints)}};
}

synth::Frame json_to_frame(const json& value) {
    synth::Frame frame;
    frame.frame_id = value.at("frame_id").get<int64_t>();
    frame.gt = json_to_pose(value.at("gt"));
    for (const json& v : value.at("views")) {
        fusion::ViewPrediction view;
        view.camera_id = v.at("camera_id").get<std::string>();
        view.pose3d = json_to_pose(v.at("pose3d"));
        view.pose3d.source_camera = view.camera_id;
        view.detection2d = json_to_detection(v.at("det2d"));
        frame.views.push_back(std::move(view));
    }
    frame.occluded_views = value.at("occluded_views").get<std::vector<std::string>>();
    if (value.contains("occluded_joints")) {
        for (const auto& [camera_id, mask] : value.at("occluded_joints").items()) {
            frame.occluded_joints[camera_id] = mask.get<std::vector<int>>();
        }
    }
    return frame;
}

json rig_to_json(const synth::RigSpec& rig) {
    json out{{"camera_count", rig.camera_count},
             {"radius", rig.radius},
             {"height", rig.height},
             {"look_at", vec3_to_json(rig.look_at)},
             {"fov_deg", rig.fov_deg},
             {"image_width", rig.image_width},
             {"image_height", rig.image_height}};
    if (rig.focal_px) out["focal_px"] = *rig.focal_px;
    return out;
}

synth::RigSpec json_to_rig(const json& value) {
    synth::RigSpec rig;
    rig.camera_count = value.at("camera_count").get<int>();
    rig.radius = value.at("radius").get<double>();
    rig.height = value.at("height").get<double>();
    rig.look_at = json_to_vec3(value.at("look_at"));
    rig.fov_deg = value.at("fov_deg").get<double>();
    if (value.contains("focal_px")) rig.focal_px = value.at("focal_px").get<double>();
    rig.image_width = value.at("image_width").get<int>();
    rig.image_height = value.at("image_height").get<int>();
    return rig;
}

json motion_to_json(const synth::MotionSpec& motion) {
    return json{{"root_start", vec3_to_json(motion.root_start)},
                {"root_velocity", vec3_to_json(motion.root_velocity)},
                {"angle_amplitude_rad", motion.angle_amplitude_rad},
                {"min_cycles_per_frame", motion.min_cycles_per_frame},
                {"max_cycles_per_frame", motion.max_cycles_per_frame},
                {"symmetric_bones", motion.symmetric_bones},
                {"bone_lengths", motion.bone_lengths}};
}

synth::MotionSpec json_to_motion(const json& value) {
    synth::MotionSpec motion;
    motion.root_start = json_to_vec3(value.at("root_start"));
    motion.root_velocity = json_to_vec3(value.at("root_velocity"));
    motion.angle_amplitude_rad = value.at("angle_amplitude_rad").get<double>();
    motion.min_cycles_per_frame = value.at("min_cycles_per_frame").get<double>();
    motion.max_cycles_per_frame = value.at("max_cycles_per_frame").get<double>();
    motion.symmetric_bones = value.at("symmetric_bones").get<bool>();
    motion.bone_lengths = value.at("bone_lengths").get<std::vector<double>>();
    return motion;
}

json corruption_to_json(const synth::CorruptionSpec& spec) {
    return json{{"sigma_2d_px", spec.sigma_2d_px},
                {"sigma_3d_mm", spec.sigma_3d_mm},
                {"ray_scale_range", json::array({spec.ray_scale_range[0], spec.ray_scale_range[1]})},
                {"occluded_view_count", spec.occluded_view_count},
                {"occluded_joint_fraction", spec.occluded_joint_fraction},
                {"sigma_occ_mm", spec.sigma_occ_mm},
                {"detection_drop_prob", spec.detection_drop_prob},
                {"seed", spec.seed}};
}

synth::CorruptionSpec json_to_corruption(const json& value) {
    synth::CorruptionSpec spec;
    spec.sigma_2d_px = value.at("sigma_2d_px").get<double>();
    spec.sigma_3d_mm = value.at("sigma_3d_mm").get<double>();
    const json& range = value.at("ray_scale_range");
    spec.ray_scale_range = {range.at(0).get<double>(), range.at(1).get<double>()};
    spec.occluded_view_count = value.at("occluded_view_count").get<int>();
    spec.occluded_joint_fraction = value.at("occluded_joint_fraction").get<double>();
    spec.sigma_occ_mm = value.at("sigma_occ_mm").get<double>();
    spec.detection_drop_prob = value.at("detection_drop_prob").get<double>();
    spec.seed = value.at("seed").get<uint64_t>();
    return spec;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::vector<geom::Camera> load_cameras(const std::filesystem::path& path) {
    const json doc = parse_json(read_file(path), path.string());
    if (!doc.is_array()) {
        throw std::runtime_error(path.string() + ": expected a JSON array of cameras");
    }
    std::vector<geom::Camera> cameras;
    std::set<std::string> seen_ids;
    for (size_t i = 0; i < doc.size(); ++i) {
        const json& c = doc[i];
        geom::Camera camera;
        try {
            camera.id = c.at("id").get<std::string>();
            camera.intrinsics.fx = c.at("fx").get<double>();
            camera.intrinsics.fy = c.at("fy").get<double>();
            camera.intrinsics.cx = c.at("cx").get<double>();
            camera.intrinsics.cy = c.at("cy").get<double>();
            camera.intrinsics.width = c.at("width").get<int>();
            camera.intrinsics.height = c.at("height").get<int>();
            const json& r = c.at("R");
            const json& t = c.at("t");
            if (!r.is_array() || r.size() != 9) {
                throw std::runtime_error("R must hold 9 row-major floats");
            }
            if (!t.is_array() || t.size() != 3) {
                throw std::runtime_error("t must hold 3 floats");
            }
            for (int row = 0; row < 3; ++row) {
                for (int col = 0; col < 3; ++col) {
                    camera.extrinsics.rotation(row, col) = r[3 * row + col].get<double>();
                }
                camera.extrinsics.translation(row) = t[row].get<double>();
            }
        } catch (const json::exception& e) {
            throw std::runtime_error(path.string() + ": camera " + std::to_string(i) +
                                     ": " + e.what());
        }
        if (c.contains("distortion")) {
            for (const json& coeff : c.at("distortion")) {
                if (coeff.get<double>() != 0.0) {
                    throw std::runtime_error(path.string() + ": camera '" + camera.id +
                                             "': nonzero distortion is not supported; "
                                             "undistort inputs first");
                }
            }
        }
        if (!seen_ids.insert(camera.id).second) {
            throw std::runtime_error(path.string() + ": duplicate camera id '" +
                                     camera.id + "'");
        }
        geom::validate_intrinsics(camera.intrinsics, camera.id);
        geom::validate_extrinsics(camera.extrinsics, camera.id);
        cameras.push_back(std::move(camera));
    }
    return cameras;
}

void save_cameras(const std::vector<geom::Camera>& cameras,
                  const std::filesystem::path& path) {
    json doc = json::array();
    for (const geom::Camera& camera : cameras) {
        json r = json::array();
        for (int row = 0; row < 3; ++row) {
            for (int col = 0; col < 3; ++col) {
                r.push_back(camera.extrinsics.rotation(row, col));
            }
        }
        doc.push_back(json{{"id", camera.id},
                           {"fx", camera.intrinsics.fx},
                           {"fy", camera.intrinsics.fy},
                           {"cx", camera.intrinsics.cx},
                           {"cy", camera.intrinsics.cy},
                           {"width", camera.intrinsics.width},
                           {"height", camera.intrinsics.height},
                           {"R", std::move(r)},
                           {"t", vec3_to_json(camera.extrinsics.translation)}});
    }
    write_file(path, doc.dump(2) + "\n");
}

skel::JointConvention load_convention(const std::filesystem::path& path) {
    const json doc = parse_json(read_file(path), path.string());
    skel::JointConvention conv;
    try {
        conv.joint_names = doc.at("joint_names").get<std::vector<std::string>>();
        conv.pelvis_index = doc.at("pelvis_index").get<int>();
        for (const json& pair : doc.at("symmetric_bone_pairs")) {
            if (!pair.is_array() || pair.size() != 2 || pair[0].size() != 2 ||
                pair[1].size() != 2) {
                throw std::runtime_error("each pair must be [[uL,vL],[uR,vR]]");
            }
            skel::BonePair bp;
            bp.left = {pair[0][0].get<int>(), pair[0][1].get<int>()};
            bp.right = {pair[1][0].get<int>(), pair[1][1].get<int>()};
            conv.symmetric_bone_pairs.push_back(bp);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    try {
        conv.validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return conv;
}

void save_convention(const skel::JointConvention& conv,
                     const std::filesystem::path& path) {
    json pairs = json::array();
    for (const skel::BonePair& pair : conv.symmetric_bone_pairs) {
        pairs.push_back(json::array(
            {json::array({pair.left[0], pair.left[1]}),
             json::array({pair.right[0], pair.right[1]})}));
    }
    const json doc{{"joint_names", conv.joint_names},
                   {"pelvis_index", conv.pelvis_index},
                   {"symmetric_bone_pairs", std::move(pairs)}};
    write_file(path, doc.dump(2) + "\n");
}

void save_sequence(const std::vector<synth::Frame>& frames,
                   const std::filesystem::path& path, uint64_t seed) {
    std::ostringstream out;
    out << json{{"format", "mvpose_sequence"},
                {"format_version", kFormatVersion},
                {"seed", seed}}
               .dump()
        << '\n';
    for (const synth::Frame& frame : frames) {
        out << frame_to_json(frame).dump() << '\n';
    }
    write_file(path, out.str());
}

std::vector<synth::Frame> load_sequence(const std::filesystem::path& path,
                                        int expected_joint_count) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::vector<synth::Frame> frames;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_number);
        const json value = parse_json(line, where);
        if (line_number == 1 && value.contains("format_version") &&
            !value.contains("frame_id")) {
            continue;  // header line
        }
        synth::Frame frame;
        try {
            frame = json_to_frame(value);
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        const int j = frame.gt.joint_count();
        if (expected_joint_count >= 0 && j != expected_joint_count) {
            throw std::runtime_error(where + ": expected " +
                                     std::to_string(expected_joint_count) +
                                     " joints, found " + std::to_string(j));
        }
        for (const fusion::ViewPrediction& view : frame.views) {
            if (view.pose3d.joint_count() != j || view.detection2d.joint_count() != j) {
                throw std::runtime_error(where + ": view '" + view.camera_id +
                                         "' joint count differs from gt");
            }
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

void save_manifest(const synth::SequenceManifest& manifest,
                   const std::filesystem::path& path) {
    const json doc{{"format", "mvpose_sequence_manifest"},
                   {"format_version", manifest.format_version},
                   {"seed", manifest.seed},
                   {"length", manifest.length},
                   {"convention", manifest.convention},
                   {"rig", rig_to_json(manifest.rig)},
                   {"motion", motion_to_json(manifest.motion)},
                   {"corruption", corruption_to_json(manifest.corruption)}};
    write_file(path, doc.dump(2) + "\n");
}

synth::SequenceManifest load_manifest(const std::filesystem::path& path) {
    const json doc = parse_json(read_file(path), path.string());
    synth::SequenceManifest manifest;
    try {
        manifest.format_version = doc.at("format_version").get<int>();
        manifest.seed = doc.at("seed").get<uint64_t>();
        manifest.length = doc.at("length").get<int>();
        manifest.convention = doc.at("convention").get<std::string>();
        manifest.rig = json_to_rig(doc.at("rig"));
        manifest.motion = json_to_motion(doc.at("motion"));
        manifest.corruption = json_to_corruption(doc.at("corruption"));
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    return manifest;
}

void save_dataset(const synth::GeneratedSequence& generated,
                  const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_manifest(generated.manifest, dir / "manifest.json");
    save_cameras(generated.cameras, dir / "cameras.json");
    save_convention(skel::human36m_convention(), dir / "convention.json");
    save_sequence(generated.frames, dir / "sequence.jsonl", generated.manifest.seed);
}

Dataset load_dataset(const std::filesystem::path& dir) {
    Dataset dataset;
    dataset.manifest = load_manifest(dir / "manifest.json");
    dataset.cameras = load_cameras(dir / "cameras.json");
    dataset.convention = load_convention(dir / "convention.json");
    dataset.frames =
        load_sequence(dir / "sequence.jsonl", dataset.convention.joint_count());
    return dataset;
}

void write_metrics(const std::vector<metrics::FrameMetrics>& frames,
                   const std::vector<std::string>& labels,
                   const std::vector<metrics::SequenceSummary>& summaries,
                   const std::filesystem::path& per_frame_csv,
                   const std::filesystem::path& summary_csv, uint64_t seed) {
    if (frames.empty() || summaries.empty()) {
        throw std::invalid_argument("write_metrics: no rows to write");
    }
    if (frames.size() != labels.size()) {
        throw std::invalid_argument("write_metrics: labels must pair with frames");
    }

    const size_t joint_count = frames.front().per_joint_abs.size();
    std::ostringstream per_frame;
    per_frame << "# mvpose_metrics v" << kFormatVersion << " seed=" << seed << "\n";
    per_frame << "frame_id,label,mpjpe_abs_mm,mpjpe_rel_mm";
    for (size_t j = 0; j < joint_count; ++j) per_frame << ",joint_" << j << "_mm";
    per_frame << "\n";
    for (size_t i = 0; i < frames.size(); ++i) {
        const metrics::FrameMetrics& f = frames[i];
        per_frame << f.frame_id << ',' << labels[i] << ',' << format_double(f.mpjpe_abs)
                  << ',' << format_double(f.mpjpe_rel);
        for (double v : f.per_joint_abs) per_frame << ',' << format_double(v);
        per_frame << "\n";
    }
    write_file(per_frame_csv, per_frame.str());

    std::ostringstream summary;
    summary << "# mvpose_summary v" << kFormatVersion << " seed=" << seed << "\n";
    summary << "label,frames,mean_abs_mm,median_abs_mm,mean_rel_mm,median_rel_mm\n";
    for (const metrics::SequenceSummary& s : summaries) {
        summary << s.label << ',' << s.frame_count << ',' << format_double(s.mean_abs)
                << ',' << format_double(s.median_abs) << ',' << format_double(s.mean_rel)
                << ',' << format_double(s.median_rel) << "\n";
    }
    write_file(summary_csv, summary.str());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        return std::stod(text);
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": bad number '" + text + "'");
    }
}

}  // namespace

std::vector<metrics::FrameMetrics> read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::vector<metrics::FrameMetrics> out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#' || line.rfind("frame_id", 0) == 0) continue;
        const std::string where = path.string() + ":" + std::to_string(line_number);
        const auto fields = split_csv_line(line);
        if (fields.size() < 4) {
            throw std::runtime_error(where + ": expected at least 4 columns");
        }
        metrics::FrameMetrics m;
        m.frame_id = static_cast<int64_t>(parse_double(fields[0], where));
        m.mpjpe_abs = parse_double(fields[2], where);
        m.mpjpe_rel = parse_double(fields[3], where);
        for (size_t i = 4; i < fields.size(); ++i) {
            m.per_joint_abs.push_back(parse_double(fields[i], where));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<metrics::SequenceSummary> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::vector<metrics::SequenceSummary> out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line[0] == '#' || line.rfind("label,", 0) == 0) continue;
        const std::string where = path.string() + ":" + std::to_string(line_number);
        const auto fields = split_csv_line(line);
        if (fields.size() != 6) {
            throw std::runtime_error(where + ": expected 6 columns");
        }
        metrics::SequenceSummary s;
        s.label = fields[0];
        s.frame_count = static_cast<int>(parse_double(fields[1], where));
        s.mean_abs = parse_double(fields[2], where);
        s.median_abs = parse_double(fields[3], where);
        s.mean_rel = parse_double(fields[4], where);
        s.median_rel = parse_double(fields[5], where);
        out.push_back(std::move(s));
    }
    return out;
}

void save_poses(const std::vector<std::pair<int64_t, skel::Pose3D>>& poses,
                const std::filesystem::path& path, uint64_t seed) {
    std::ostringstream out;
    out << json{{"format", "mvpose_poses"},
                {"format_version", kFormatVersion},
                {"seed", seed}}
               .dump()
        << '\n';
    for (const auto& [frame_id, pose] : poses) {
        json value = pose_to_json(pose);
        value["frame_id"] = frame_id;
        out << value.dump() << '\n';
    }
    write_file(path, out.str());
}

std::vector<std::pair<int64_t, skel::Pose3D>> load_poses(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::vector<std::pair<int64_t, skel::Pose3D>> out;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_number);
        const json value = parse_json(line, where);
        if (line_number == 1 && value.contains("format_version") &&
            !value.contains("frame_id")) {
            continue;
        }
        try {
            out.emplace_back(value.at("frame_id").get<int64_t>(), json_to_pose(value));
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
    }
    return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    const json doc = parse_json(read_file(path), path.string());
    RunConfig config;
    const auto get_path = [&](const char* key, std::filesystem::path* out,
                              bool must_exist) {
        if (!doc.contains(key)) return;
        *out = doc.at(key).get<std::string>();
        if (must_exist && !std::filesystem::exists(*out)) {
            throw std::runtime_error(path.string() + ": " + key + " '" + out->string() +
                                     "' does not exist");
        }
    };
    get_path("cameras", &config.cameras, true);
    get_path("sequence", &config.sequence, true);
    get_path("convention", &config.convention, true);
    get_path("output_dir", &config.output_dir, false);
    if (doc.contains("strategy")) {
        config.fusion.strategy =
            fusion::weight_strategy_from_string(doc.at("strategy").get<std::string>());
    }
    if (doc.contains("epsilon")) config.fusion.epsilon = doc.at("epsilon").get<double>();
    if (doc.contains("min_views")) config.fusion.min_views = doc.at("min_views").get<int>();
    if (doc.contains("lambda_sym"))
        config.objective.lambda_sym = doc.at("lambda_sym").get<double>();
    if (doc.contains("max_iters"))
        config.objective.max_iters = doc.at("max_iters").get<int>();
    if (doc.contains("grad_tol")) config.objective.grad_tol = doc.at("grad_tol").get<double>();
    if (doc.contains("step_tol")) config.objective.step_tol = doc.at("step_tol").get<double>();
    if (doc.contains("initial_damping"))
        config.objective.initial_damping = doc.at("initial_damping").get<double>();
    if (doc.contains("optimize")) config.optimize = doc.at("optimize").get<bool>();
    if (doc.contains("include_pelvis_in_relative"))
        config.metric.include_pelvis_in_relative =
            doc.at("include_pelvis_in_relative").get<bool>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("label")) config.label = doc.at("label").get<std::string>();
    return config;
}

}  // namespace mvpose::io
