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
#include "pickplace.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/geometry.hpp"
#include "core/netpbm.hpp"
#include "core/pipeline.hpp"
#include "core/scene.hpp"
#include "core/simulator.hpp"

// Thin bridge from the C++ core to the flat C surface: exceptions become
// status codes, objects hide behind opaque handles.

struct pp_config {
    pp::AppConfig cfg;
};

struct pp_detections {
    std::vector<pp::DetectedObject> items;
};

struct pp_scene {
    pp::Scene scene;
};

struct pp_episode {
    pp::EpisodeOutput output;
};

namespace {

thread_local std::string t_last_error;

pp_status status_from(const pp::Error& e) {
    using pp::ErrorCode;
    switch (e.code()) {
        case ErrorCode::InvalidArgument:   return PP_ERR_INVALID_ARGUMENT;
        case ErrorCode::ParseError:        return PP_ERR_PARSE;
        case ErrorCode::IoError:           return PP_ERR_IO;
        case ErrorCode::TargetUnreachable: return PP_ERR_TARGET_UNREACHABLE;
        case ErrorCode::DegenerateTarget:  return PP_ERR_DEGENERATE_TARGET;
        case ErrorCode::EmptyWorkspace:    return PP_ERR_EMPTY_WORKSPACE;
        case ErrorCode::RoiOutOfBounds:    return PP_ERR_ROI_OUT_OF_BOUNDS;
        case ErrorCode::ImageTooSmall:     return PP_ERR_IMAGE_TOO_SMALL;
        case ErrorCode::PieceOutOfFrame:   return PP_ERR_PIECE_OUT_OF_FRAME;
        case ErrorCode::PlanSceneMismatch: return PP_ERR_PLAN_SCENE_MISMATCH;
    }
    return PP_ERR_INTERNAL;
}

pp_status fail(pp_status status, const char* message) {
    t_last_error = message;
    return status;
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return PP_OK;
    } catch (const pp::Error& e) {
        t_last_error = e.what();
        return status_from(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return PP_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return PP_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* pp_status_name(pp_status status) {
    switch (status) {
        case PP_OK:                        return "Ok";
        case PP_ERR_INVALID_ARGUMENT:      return "InvalidArgument";
        case PP_ERR_PARSE:                 return "ParseError";
        case PP_ERR_IO:                    return "IoError";
        case PP_ERR_TARGET_UNREACHABLE:    return "TargetUnreachable";
        case PP_ERR_DEGENERATE_TARGET:     return "DegenerateTarget";
        case PP_ERR_EMPTY_WORKSPACE:       return "EmptyWorkspace";
        case PP_ERR_ROI_OUT_OF_BOUNDS:     return "RoiOutOfBounds";
        case PP_ERR_IMAGE_TOO_SMALL:       return "ImageTooSmall";
        case PP_ERR_PIECE_OUT_OF_FRAME:    return "PieceOutOfFrame";
        case PP_ERR_PLAN_SCENE_MISMATCH:   return "PlanSceneMismatch";
        case PP_ERR_BUFFER_TOO_SMALL:      return "BufferTooSmall";
        case PP_ERR_INTERNAL:              return "InternalError";
    }
    return "Unknown";
}

const char* pp_last_error_message(void) {
    return t_last_error.c_str();
}

pp_status pp_config_load(const char* path, pp_config** out_config) {
    if (!path || !out_config) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    *out_config = nullptr;
    return guarded([&] { *out_config = new pp_config{pp::load_config_file(path)}; });
}

pp_status pp_config_loads(const char* text, pp_config** out_config) {
    if (!text || !out_config) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    *out_config = nullptr;
    return guarded([&] {
        *out_config = new pp_config{pp::load_config_text(text, "<string>")};
    });
}

void pp_config_free(pp_config* config) {
    delete config;
}

pp_status pp_solve_ik(const pp_config* config, double x_cm, double y_cm,
                      double out_q[5]) {
    if (!config || !out_q) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const pp::JointSolution s = pp::solve_ik(config->cfg.arm, pp::PlanPoint{x_cm, y_cm},
                                                 config->cfg.gripper_open_deg);
        out_q[0] = s.q1_deg;
        out_q[1] = s.q2_deg;
        out_q[2] = s.q3_deg;
        out_q[3] = s.q4_deg;
        out_q[4] = s.q5_deg;
    });
}

pp_status pp_forward_kinematics(const pp_config* config, const double q[5],
                                double* out_x_cm, double* out_y_cm,
                                double* out_wrist_height_cm) {
    if (!config || !q || !out_x_cm || !out_y_cm || !out_wrist_height_cm) {
        return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        pp::JointSolution s;
        s.q1_deg = q[0];
        s.q2_deg = q[1];
        s.q3_deg = q[2];
        s.q4_deg = q[3];
        s.q5_deg = q[4];
        const pp::WristPose pose = pp::forward_kinematics(config->cfg.arm, s);
        *out_x_cm = pose.plan.x_cm;
        *out_y_cm = pose.plan.y_cm;
        *out_wrist_height_cm = pose.wrist_height_cm;
    });
}

pp_status pp_reachable_annulus(const pp_config* config, double* out_r_min_cm,
                               double* out_r_max_cm) {
    if (!config || !out_r_min_cm || !out_r_max_cm) {
        return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&] {
        const pp::ReachableAnnulus annulus = pp::reachable_annulus(config->cfg.arm);
        *out_r_min_cm = annulus.r_min_cm;
        *out_r_max_cm = annulus.r_max_cm;
    });
}

pp_status pp_joints_json(const double q[5], char* buf, size_t buf_len) {
    if (!q || !buf) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    pp::JointSolution s;
    s.q1_deg = q[0];
    s.q2_deg = q[1];
    s.q3_deg = q[2];
    s.q4_deg = q[3];
    s.q5_deg = q[4];
    const std::string json = pp::joint_solution_json(s);
    if (json.size() + 1 > buf_len) {
        return fail(PP_ERR_BUFFER_TOO_SMALL, "joints_json buffer too small");
    }
    std::memcpy(buf, json.c_str(), json.size() + 1);
    t_last_error.clear();
    return PP_OK;
}

pp_status pp_detect_image_file(const pp_config* config, const char* image_path,
                               const char* dump_dir, pp_detections** out) {
    if (!config || !image_path || !out) {
        return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&] {
        // Accept PPM frames or plain PGM (promoted to gray RGB).
        pp::RgbImage frame;
        const std::string path(image_path);
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".pgm") == 0) {
            const pp::GrayImage gray = pp::read_pgm(path);
            frame = pp::RgbImage(gray.width, gray.height);
            for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
                frame.pixels[i * 3] = frame.pixels[i * 3 + 1] = frame.pixels[i * 3 + 2] =
                    gray.pixels[i];
            }
        } else {
            frame = pp::read_ppm(path);
        }

        const pp::RegionOfInterest roi =
            config->cfg.effective_roi(frame.width, frame.height);

        if (dump_dir) {
            const std::string dir(dump_dir);
            const pp::RgbImage sub = pp::crop_roi(frame, roi);
            const pp::GrayImage gray = pp::to_grayscale(sub);
            const pp::GrayImage equalized = pp::equalize_histogram(gray);
            const pp::ThresholdResult thresholded =
                pp::otsu_threshold(equalized, config->cfg.pipeline.dark_foreground);
            const pp::GrayImage edges = pp::sobel_edges(equalized);
            const pp::BinaryImage opened =
                pp::morph_open(thresholded.mask, config->cfg.pipeline.morph_radius_px);
            pp::write_pgm(dir + "/stage_1_gray.pgm", gray);
            pp::write_pgm(dir + "/stage_2_equalized.pgm", equalized);
            pp::write_binary_pgm(dir + "/stage_3_binary.pgm", thresholded.mask);
            pp::write_pgm(dir + "/stage_4_edges.pgm", edges);
            pp::write_binary_pgm(dir + "/stage_5_opened.pgm", opened);
        }

        auto detections = new pp_detections;
        detections->items = pp::detect_objects(frame, roi, config->cfg.pipeline);
        *out = detections;
    });
}

size_t pp_detections_count(const pp_detections* detections) {
    return detections ? detections->items.size() : 0;
}

pp_status pp_detections_get(const pp_detections* detections, size_t index,
                            pp_detection* out) {
    if (!detections || !out) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= detections->items.size()) {
        return fail(PP_ERR_INVALID_ARGUMENT, "detection index out of range");
    }
    const pp::DetectedObject& obj = detections->items[index];
    out->label = obj.label;
    out->area_px = obj.area;
    out->cx_px = obj.centroid_x;
    out->cy_px = obj.centroid_y;
    t_last_error.clear();
    return PP_OK;
}

void pp_detections_free(pp_detections* detections) {
    delete detections;
}

pp_status pp_scene_load(const char* path, pp_scene** out_scene) {
    if (!path || !out_scene) return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    *out_scene = nullptr;
    return guarded([&] { *out_scene = new pp_scene{pp::load_scene_file(path)}; });
}

void pp_scene_free(pp_scene* scene) {
    delete scene;
}

pp_status pp_simulate(const pp_config* config, const pp_scene* scene,
                      const pp_simulate_opts* opts, pp_episode** out_episode) {
    if (!config || !scene || !out_episode) {
        return fail(PP_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out_episode = nullptr;
    return guarded([&] {
        pp::EpisodeOptions options;
        if (opts) {
            if (opts->has_seed) options.seed_override = opts->seed;
            if (opts->has_grasp_tol) options.grasp_tol_override = opts->grasp_tol_cm;
            if (opts->has_noise_amplitude) options.noise_override = opts->noise_amplitude;
            if (opts->frames_dir) options.frames_dir = opts->frames_dir;
            if (opts->commands_path) options.commands_path = opts->commands_path;
        }
        *out_episode = new pp_episode{pp::run_episode(config->cfg, scene->scene, options)};
    });
}

const char* pp_episode_report_json(const pp_episode* episode) {
    return episode ? episode->output.report_json.c_str() : "";
}

int pp_episode_steps(const pp_episode* episode) {
    return episode ? static_cast<int>(episode->output.report.steps.size()) : 0;
}

int pp_episode_placed(const pp_episode* episode) {
    return episode ? episode->output.report.placed : 0;
}

int pp_episode_dropped(const pp_episode* episode) {
    return episode ? episode->output.report.dropped : 0;
}

int pp_episode_unreachable(const pp_episode* episode) {
    return episode ? episode->output.report.unreachable : 0;
}

void pp_episode_free(pp_episode* episode) {
    delete episode;
}

} // extern "C"
