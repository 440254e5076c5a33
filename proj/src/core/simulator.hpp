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
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/pipeline.hpp"
#include "core/scene.hpp"

// Closed-loop episode: render an overhead frame, detect pieces, solve joint
// angles per piece, emit servo commands, and relocate the pieces to their
// slots. The gripper has no sensing; a grasp succeeds only when the wrist
// lands within grasp_tol of the piece's true centroid, otherwise the piece
// drops and stays put.

namespace pp {

/// Hobby-servo command: 0 deg -> 500 us, 180 deg -> 2500 us, clamped.
struct ServoCommand {
    int channel = 0;  // 0..6
    double angle_deg = 0.0;
    int pulse_us = 1500;
};

ServoCommand angle_to_pulse(int channel, double angle_deg);

/// "ch=<n> angle=<f> pulse_us=<n>"
std::string servo_command_line(const ServoCommand& cmd);

/// One planned pick-and-place action.
struct TaskStep {
    int detection_label = 0;
    PlanPoint target_cm;  // detected centroid, world coordinates
    PlanPoint slot_cm;
    bool reachable = false;
    JointSolution pick;   // valid when reachable
    JointSolution place;  // valid when reachable
};

struct TaskPlan {
    std::vector<TaskStep> steps;
    double gripper_open_deg = 60.0;
    double gripper_closed_deg = 10.0;
};

/// Plans one step per detection, nearest-first by reach (ties by ascending
/// world x); the i-th detection in that order takes the i-th slot.
/// Unreachable targets are kept in the plan but marked.
TaskPlan plan_task(const std::vector<DetectedObject>& detections,
                   const OverheadCalibration& calib, const ArmGeometry& g,
                   const std::vector<PlanPoint>& slots,
                   double gripper_open_deg = 60.0,
                   double gripper_closed_deg = 10.0);

enum class StepOutcome { Placed, Dropped, Unreachable };

const char* step_outcome_name(StepOutcome outcome);

struct StepResult {
    TaskStep step;
    int piece_id = 0;               // ground-truth piece the step acted on
    StepOutcome outcome = StepOutcome::Unreachable;
    double detection_error_cm = 0.0;  // |detected - true centroid|
    double grasp_distance_cm = 0.0;   // |FK(pick) plan - true centroid|
};

struct EpisodeReport {
    std::vector<StepResult> steps;
    std::vector<Piece> final_pieces;
    std::vector<ServoCommand> commands;
    int placed = 0;
    int dropped = 0;
    int unreachable = 0;

    bool all_placed() const {
        return placed == static_cast<int>(steps.size());
    }
};

/// Runs the plan against the scene's ground truth. Steps are matched to the
/// nearest unclaimed piece; a plan with more steps than the scene has pieces
/// throws PlanSceneMismatch.
EpisodeReport execute(const TaskPlan& plan, const Scene& scene,
                      const ArmGeometry& g, double grasp_tol_cm);

struct EpisodeOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<double> grasp_tol_override;
    std::optional<int> noise_override;
    std::string frames_dir;     // when set, writes frame_before/after.ppm
    std::string commands_path;  // when set, writes the line-delimited log
};

struct EpisodeOutput {
    Scene scene;  // scene as simulated (overrides applied)
    std::vector<DetectedObject> detections;
    EpisodeReport report;
    std::string report_json;
};

/// Full closed loop: render -> detect -> plan -> execute, one frame per
/// episode, captured before any motion.
EpisodeOutput run_episode(const AppConfig& cfg, const Scene& scene,
                          const EpisodeOptions& opts = {});

std::string episode_report_json(const EpisodeOutput& out);

} // namespace pp
