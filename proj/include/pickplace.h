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

/*
 * pickplace C API.
 *
 * A vision-guided pick-and-place toolkit behind a flat C interface: a
 * closed-form geometric inverse-kinematics solver for a 5-revolute-joint
 * arm, a raster pipeline that locates objects by centroid, and a closed-loop
 * overhead-camera simulator. Handles are opaque; every call returns a
 * pp_status, and pp_last_error_message() describes the most recent failure
 * on the calling thread.
 *
 * Units: lengths in centimeters, angles in degrees. Joint angle arrays are
 * ordered q1 (base), q2 (shoulder), q3 (elbow), q4 (wrist), q5 (gripper).
 */

#ifndef PICKPLACE_H
#define PICKPLACE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PP_API __declspec(dllexport)
#else
#define PP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
    PP_OK = 0,
    PP_ERR_INVALID_ARGUMENT = 1,
    PP_ERR_PARSE = 2,
    PP_ERR_IO = 3,
    PP_ERR_TARGET_UNREACHABLE = 4,
    PP_ERR_DEGENERATE_TARGET = 5,
    PP_ERR_EMPTY_WORKSPACE = 6,
    PP_ERR_ROI_OUT_OF_BOUNDS = 7,
    PP_ERR_IMAGE_TOO_SMALL = 8,
    PP_ERR_PIECE_OUT_OF_FRAME = 9,
    PP_ERR_PLAN_SCENE_MISMATCH = 10,
    PP_ERR_BUFFER_TOO_SMALL = 11,
    PP_ERR_INTERNAL = 12
} pp_status;

/* Stable name of a status value, e.g. "TargetUnreachable". */
PP_API const char* pp_status_name(pp_status status);

/* Message of the last failure on this thread; empty string if none. */
PP_API const char* pp_last_error_message(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct pp_config pp_config;

/* Loads an arm/camera/pipeline config file (key=value text). */
PP_API pp_status pp_config_load(const char* path, pp_config** out_config);
PP_API pp_status pp_config_loads(const char* text, pp_config** out_config);
PP_API void pp_config_free(pp_config* config);

/* ---- kinematics -------------------------------------------------------- */

/* Solves joint angles for a target on the work plane (robot-base frame).
 * out_q5 receives the configured gripper-open angle. */
PP_API pp_status pp_solve_ik(const pp_config* config, double x_cm, double y_cm,
                             double out_q[5]);

/* Wrist position implied by joint angles under the solver's convention. */
PP_API pp_status pp_forward_kinematics(const pp_config* config, const double q[5],
                                       double* out_x_cm, double* out_y_cm,
                                       double* out_wrist_height_cm);

/* Plan-view annulus of reachable distances. */
PP_API pp_status pp_reachable_annulus(const pp_config* config, double* out_r_min_cm,
                                      double* out_r_max_cm);

/* Single-line JSON record {"q1":...,"q5":...} with six decimal places.
 * Needs a buffer of at least 128 bytes. */
PP_API pp_status pp_joints_json(const double q[5], char* buf, size_t buf_len);

/* ---- detection --------------------------------------------------------- */

typedef struct pp_detections pp_detections;

typedef struct pp_detection {
    int label;
    long long area_px;
    double cx_px;
    double cy_px;
} pp_detection;

/* Runs the detection pipeline on a PPM (P6) or PGM (P5) image file.
 * dump_dir, when non-NULL, receives the five intermediate stage images
 * (gray, equalized, binary, edges, opened). */
PP_API pp_status pp_detect_image_file(const pp_config* config, const char* image_path,
                                      const char* dump_dir, pp_detections** out);
PP_API size_t pp_detections_count(const pp_detections* detections);
PP_API pp_status pp_detections_get(const pp_detections* detections, size_t index,
                                   pp_detection* out);
PP_API void pp_detections_free(pp_detections* detections);

/* ---- simulation -------------------------------------------------------- */

typedef struct pp_scene pp_scene;
typedef struct pp_episode pp_episode;

PP_API pp_status pp_scene_load(const char* path, pp_scene** out_scene);
PP_API void pp_scene_free(pp_scene* scene);

typedef struct pp_simulate_opts {
    int has_seed;            /* nonzero: use seed instead of the scene's */
    uint64_t seed;
    int has_grasp_tol;
    double grasp_tol_cm;
    int has_noise_amplitude;
    int noise_amplitude;
    const char* frames_dir;    /* optional: writes frame_before/after.ppm */
    const char* commands_path; /* optional: writes the servo command log */
} pp_simulate_opts;

/* Runs a full episode: render, detect, plan, execute. */
PP_API pp_status pp_simulate(const pp_config* config, const pp_scene* scene,
                             const pp_simulate_opts* opts, pp_episode** out_episode);

/* Episode report as a JSON document; owned by the episode handle. */
PP_API const char* pp_episode_report_json(const pp_episode* episode);
PP_API int pp_episode_steps(const pp_episode* episode);
PP_API int pp_episode_placed(const pp_episode* episode);
PP_API int pp_episode_dropped(const pp_episode* episode);
PP_API int pp_episode_unreachable(const pp_episode* episode);
PP_API void pp_episode_free(pp_episode* episode);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PICKPLACE_H */
