/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// pickplace command-line front end. Machine-readable records go to stdout,
// diagnostics to stderr. Exit codes: 0 success; 1 episode finished with
// pieces not placed; 2 target unreachable / empty workspace; 3 degenerate
// target; 64 usage; 65 malformed data; 66 unreadable input; 70 internal.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "pickplace.h"

namespace {

constexpr int kExitIncomplete = 1;
constexpr int kExitUnreachable = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

int exit_code_for(pp_status status) {
    switch (status) {
        case PP_OK:                      return 0;
        case PP_ERR_TARGET_UNREACHABLE:  return kExitUnreachable;
        case PP_ERR_EMPTY_WORKSPACE:     return kExitUnreachable;
        case PP_ERR_DEGENERATE_TARGET:   return kExitDegenerate;
        case PP_ERR_PARSE:               return kExitData;
        case PP_ERR_ROI_OUT_OF_BOUNDS:   return kExitData;
        case PP_ERR_IMAGE_TOO_SMALL:     return kExitData;
        case PP_ERR_PIECE_OUT_OF_FRAME:  return kExitData;
        case PP_ERR_PLAN_SCENE_MISMATCH: return kExitData;
        case PP_ERR_IO:                  return kExitNoInput;
        case PP_ERR_INVALID_ARGUMENT:    return kExitUsage;
        default:                         return kExitInternal;
    }
}

int report_failure(pp_status status) {
    std::fprintf(stderr, "pickplace: %s: %s\n", pp_status_name(status),
                 pp_last_error_message());
    return exit_code_for(status);
}

using ConfigPtr = std::unique_ptr<pp_config, decltype(&pp_config_free)>;

int load_config(const std::string& path, ConfigPtr& out) {
    pp_config* raw = nullptr;
    const pp_status status = pp_config_load(path.c_str(), &raw);
    if (status != PP_OK) return report_failure(status);
    out = ConfigPtr(raw, &pp_config_free);
    return 0;
}

int run_solve(const std::string& config_path, double x_cm, double y_cm) {
    ConfigPtr config(nullptr, &pp_config_free);
    if (int rc = load_config(config_path, config)) return rc;

    double q[5] = {0, 0, 0, 0, 0};
    const pp_status status = pp_solve_ik(config.get(), x_cm, y_cm, q);
    if (status != PP_OK) return report_failure(status);

    char line[192];
    if (pp_joints_json(q, line, sizeof(line)) != PP_OK) return kExitInternal;
    std::printf("%s\n", line);
    return 0;
}

int run_detect(const std::string& config_path, const std::string& image_path,
               bool dump_stages, const std::string& out_dir) {
    ConfigPtr config(nullptr, &pp_config_free);
    if (int rc = load_config(config_path, config)) return rc;

    pp_detections* detections = nullptr;
    const pp_status status = pp_detect_image_file(
        config.get(), image_path.c_str(), dump_stages ? out_dir.c_str() : nullptr,
        &detections);
    if (status != PP_OK) return report_failure(status);

    const size_t count = pp_detections_count(detections);
    for (size_t i = 0; i < count; ++i) {
        pp_detection d;
        if (pp_detections_get(detections, i, &d) != PP_OK) break;
        std::printf("{\"label\":%d,\"area\":%lld,\"cx\":%.6f,\"cy\":%.6f}\n", d.label,
                    d.area_px, d.cx_px, d.cy_px);
    }
    pp_detections_free(detections);
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& scene_path,
                 const pp_simulate_opts& opts) {
    ConfigPtr config(nullptr, &pp_config_free);
    if (int rc = load_config(config_path, config)) return rc;

    pp_scene* scene = nullptr;
    pp_status status = pp_scene_load(scene_path.c_str(), &scene);
    if (status != PP_OK) return report_failure(status);
    std::unique_ptr<pp_scene, decltype(&pp_scene_free)> scene_guard(scene, &pp_scene_free);

    pp_episode* episode = nullptr;
    status = pp_simulate(config.get(), scene, &opts, &episode);
    if (status != PP_OK) return report_failure(status);

    std::printf("%s\n", pp_episode_report_json(episode));
    const bool complete = pp_episode_placed(episode) == pp_episode_steps(episode);
    if (!complete) {
        std::fprintf(stderr, "pickplace: episode incomplete: %d placed, %d dropped, %d unreachable\n",
                     pp_episode_placed(episode), pp_episode_dropped(episode),
                     pp_episode_unreachable(episode));
    }
    pp_episode_free(episode);
    return complete ? 0 : kExitIncomplete;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vision-guided pick-and-place: IK solver, object detection, simulator"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "arm/camera/pipeline config file")
        ->required();

    double x_cm = 0.0, y_cm = 0.0;
    auto* solve = app.add_subcommand("solve", "solve joint angles for a plan target");
    solve->add_option("x_cm", x_cm, "target x, cm (robot-base frame)")->required();
    solve->add_option("y_cm", y_cm, "target y, cm")->required();

    std::string image_path;
    bool dump_stages = false;
    std::string out_dir = ".";
    auto* detect = app.add_subcommand("detect", "detect objects in a PPM/PGM image");
    detect->add_option("image", image_path, "input image (P6 PPM or P5 PGM)")->required();
    detect->add_flag("--dump-stages", dump_stages, "write the five stage images");
    detect->add_option("--out-dir", out_dir, "directory for stage dumps (default .)");

    std::string scene_path;
    std::uint64_t seed = 0;
    double grasp_tol = 0.0;
    int noise_amp = 0;
    std::string frames_dir;
    std::string commands_path;
    auto* simulate = app.add_subcommand("simulate", "run a full pick-and-place episode");
    simulate->add_option("scene", scene_path, "scene file")->required();
    auto* seed_opt = simulate->add_option("--seed", seed, "override the scene seed");
    auto* tol_opt = simulate->add_option("--grasp-tol", grasp_tol, "override grasp tolerance, cm");
    auto* noise_opt = simulate->add_option("--noise-amp", noise_amp, "override noise amplitude");
    simulate->add_option("--frames-out", frames_dir, "write before/after PPM frames here");
    simulate->add_option("--commands-out", commands_path, "write the servo command log here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (solve->parsed()) return run_solve(config_path, x_cm, y_cm);
    if (detect->parsed()) return run_detect(config_path, image_path, dump_stages, out_dir);
    if (simulate->parsed()) {
        pp_simulate_opts opts{};
        opts.has_seed = seed_opt->count() > 0;
        opts.seed = seed;
        opts.has_grasp_tol = tol_opt->count() > 0;
        opts.grasp_tol_cm = grasp_tol;
        opts.has_noise_amplitude = noise_opt->count() > 0;
        opts.noise_amplitude = noise_amp;
        opts.frames_dir = frames_dir.empty() ? nullptr : frames_dir.c_str();
        opts.commands_path = commands_path.empty() ? nullptr : commands_path.c_str();
        return run_simulate(config_path, scene_path, opts);
    }
    return kExitUsage;
}
