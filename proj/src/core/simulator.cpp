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
#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "core/netpbm.hpp"
#include "core/render.hpp"

#include <json.hpp>

namespace pp {

namespace {

double distance_cm(const PlanPoint& a, const PlanPoint& b) {
    return std::hypot(a.x_cm - b.x_cm, a.y_cm - b.y_cm);
}

double round6(double v) {
    return std::round(v * 1e6) / 1e6;
}

} // namespace

ServoCommand angle_to_pulse(int channel, double angle_deg) {
    if (channel < 0 || channel > 6) {
        raise(ErrorCode::InvalidArgument, "servo channel must be in 0..6");
    }
    ServoCommand cmd;
    cmd.channel = channel;
    cmd.angle_deg = angle_deg;
    const double clamped = std::clamp(angle_deg, 0.0, 180.0);
    cmd.pulse_us = static_cast<int>(std::lround(500.0 + clamped / 180.0 * 2000.0));
    return cmd;
}

std::string servo_command_line(const ServoCommand& cmd) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "ch=%d angle=%.3f pulse_us=%d", cmd.channel,
                  cmd.angle_deg, cmd.pulse_us);
    return std::string(buf);
}

TaskPlan plan_task(const std::vector<DetectedObject>& detections,
                   const OverheadCalibration& calib, const ArmGeometry& g,
                   const std::vector<PlanPoint>& slots, double gripper_open_deg,
                   double gripper_closed_deg) {
    if (slots.size() < detections.size()) {
        raise(ErrorCode::InvalidArgument, "fewer slots than detections");
    }

    struct Target {
        int label;
        PlanPoint world;
        double reach;
    };
    std::vector<Target> targets;
    targets.reserve(detections.size());
    for (const auto& det : detections) {
        Target t;
        t.label = det.label;
        t.world = pixel_to_world(calib, PixelPoint{det.centroid_x, det.centroid_y});
        t.reach = std::hypot(t.world.x_cm, t.world.y_cm);
        targets.push_back(t);
    }
    std::stable_sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) {
        if (a.reach != b.reach) return a.reach < b.reach;
        return a.world.x_cm < b.world.x_cm;
    });

    TaskPlan plan;
    plan.gripper_open_deg = gripper_open_deg;
    plan.gripper_closed_deg = gripper_closed_deg;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        TaskStep step;
        step.detection_label = targets[i].label;
        step.target_cm = targets[i].world;
        step.slot_cm = slots[i];
        try {
            step.pick = solve_ik(g, step.target_cm, gripper_open_deg);
            step.place = solve_ik(g, step.slot_cm, gripper_closed_deg);
            step.reachable = true;
        } catch (const Error&) {
            step.reachable = false;
        }
        plan.steps.push_back(step);
    }
    return plan;
}

const char* step_outcome_name(StepOutcome outcome) {
    switch (outcome) {
        case StepOutcome::Placed:      return "placed";
        case StepOutcome::Dropped:     return "dropped";
        case StepOutcome::Unreachable: return "unreachable";
    }
    return "unknown";
}

EpisodeReport execute(const TaskPlan& plan, const Scene& scene,
                      const ArmGeometry& g, double grasp_tol_cm) {
    if (plan.steps.size() > scene.pieces.size()) {
        raise(ErrorCode::PlanSceneMismatch,
              "plan has more steps than the scene has pieces");
    }

    EpisodeReport report;
    report.final_pieces = scene.pieces;

    // Match each step to the nearest unclaimed ground-truth piece at its
    // frame-time pose; the single captured frame defines the whole episode.
    std::vector<bool> claimed(scene.pieces.size(), false);

    auto emit = [&report](int channel, double angle) {
        report.commands.push_back(angle_to_pulse(channel, angle));
    };
    auto emit_home = [&](double gripper_open) {
        for (int ch = 0; ch <= 3; ++ch) emit(ch, 0.0);
        emit(4, gripper_open);
    };

    for (const auto& step : plan.steps) {
        std::size_t best = claimed.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < scene.pieces.size(); ++i) {
            if (claimed[i]) continue;
            const double d = distance_cm(scene.pieces[i].pose, step.target_cm);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        if (best == claimed.size()) {
            raise(ErrorCode::PlanSceneMismatch, "no scene piece left to match a plan step");
        }
        claimed[best] = true;
        const Piece& truth = scene.pieces[best];

        StepResult result;
        result.step = step;
        result.piece_id = truth.id;
        result.detection_error_cm = distance_cm(step.target_cm, truth.pose);

        if (!step.reachable) {
            result.outcome = StepOutcome::Unreachable;
            ++report.unreachable;
            report.steps.push_back(result);
            continue;
        }

        // home -> rotate -> reach -> close -> lift -> slot pose -> open -> home
        emit_home(plan.gripper_open_deg);
        emit(0, step.pick.q1_deg);
        emit(1, step.pick.q2_deg);
        emit(2, step.pick.q3_deg);
        emit(3, step.pick.q4_deg);
        emit(4, plan.gripper_closed_deg);
        for (int ch = 1; ch <= 3; ++ch) emit(ch, 0.0);
        emit(0, step.place.q1_deg);
        emit(1, step.place.q2_deg);
        emit(2, step.place.q3_deg);
        emit(3, step.place.q4_deg);
        emit(4, plan.gripper_open_deg);
        emit_home(plan.gripper_open_deg);

        const WristPose wrist = forward_kinematics(g, step.pick);
        result.grasp_distance_cm = distance_cm(wrist.plan, truth.pose);
        if (result.grasp_distance_cm <= grasp_tol_cm) {
            result.outcome = StepOutcome::Placed;
            ++report.placed;
            report.final_pieces[best].pose = step.slot_cm;
        } else {
            result.outcome = StepOutcome::Dropped;
            ++report.dropped;
        }
        report.steps.push_back(result);
    }
    return report;
}

namespace {

nlohmann::ordered_json joints_json(const JointSolution& s) {
    nlohmann::ordered_json j;
    j["q1"] = round6(s.q1_deg);
    j["q2"] = round6(s.q2_deg);
    j["q3"] = round6(s.q3_deg);
    j["q4"] = round6(s.q4_deg);
    j["q5"] = round6(s.q5_deg);
    return j;
}

std::vector<PlanPoint> episode_slots(const Scene& scene) {
    std::vector<PlanPoint> slots = scene.slots;
    if (scene.shuffle_slots && slots.size() > 1) {
        // Hand-rolled Fisher-Yates so the order is stable across platforms.
        std::mt19937 rng(static_cast<std::uint32_t>(scene.rng_seed * 2654435761u + 1));
        for (std::size_t i = slots.size() - 1; i > 0; --i) {
            const std::size_t j = rng() % (i + 1);
            std::swap(slots[i], slots[j]);
        }
    }
    return slots;
}

} // namespace

std::string episode_report_json(const EpisodeOutput& out) {
    nlohmann::ordered_json j;
    j["seed"] = out.scene.rng_seed;
    j["noise_amplitude"] = out.scene.noise_amplitude;
    j["grasp_tol_cm"] = round6(out.scene.grasp_tol_cm);

    nlohmann::ordered_json detections = nlohmann::ordered_json::array();
    for (const auto& det : out.detections) {
        nlohmann::ordered_json d;
        d["label"] = det.label;
        d["area"] = det.area;
        d["cx"] = round6(det.centroid_x);
        d["cy"] = round6(det.centroid_y);
        detections.push_back(d);
    }
    j["detections"] = detections;

    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& r : out.report.steps) {
        nlohmann::ordered_json s;
        s["label"] = r.step.detection_label;
        s["piece_id"] = r.piece_id;
        s["target_cm"] = {round6(r.step.target_cm.x_cm), round6(r.step.target_cm.y_cm)};
        s["slot_cm"] = {round6(r.step.slot_cm.x_cm), round6(r.step.slot_cm.y_cm)};
        s["outcome"] = step_outcome_name(r.outcome);
        s["detection_error_cm"] = round6(r.detection_error_cm);
        if (r.step.reachable) {
            s["grasp_distance_cm"] = round6(r.grasp_distance_cm);
            s["pick"] = joints_json(r.step.pick);
            s["place"] = joints_json(r.step.place);
        } else {
            s["pick"] = nullptr;
            s["place"] = nullptr;
        }
        steps.push_back(s);
    }
    j["steps"] = steps;

    j["outcomes"] = {{"placed", out.report.placed},
                     {"dropped", out.report.dropped},
                     {"unreachable", out.report.unreachable}};

    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (const auto& p : out.report.final_pieces) {
        nlohmann::ordered_json e;
        e["id"] = p.id;
        e["x_cm"] = round6(p.pose.x_cm);
        e["y_cm"] = round6(p.pose.y_cm);
        pieces.push_back(e);
    }
    j["final_pieces"] = pieces;

    nlohmann::ordered_json log = nlohmann::ordered_json::array();
    for (const auto& cmd : out.report.commands) log.push_back(servo_command_line(cmd));
    j["command_log"] = log;

    return j.dump(2);
}

EpisodeOutput run_episode(const AppConfig& cfg, const Scene& scene,
                          const EpisodeOptions& opts) {
    EpisodeOutput out;
    out.scene = scene;
    if (opts.seed_override) out.scene.rng_seed = *opts.seed_override;
    if (opts.grasp_tol_override) out.scene.grasp_tol_cm = *opts.grasp_tol_override;
    if (opts.noise_override) out.scene.noise_amplitude = *opts.noise_override;

    const RgbImage frame = render_scene(out.scene, cfg.calibration,
                                        out.scene.frame_width_px,
                                        out.scene.frame_height_px);
    const RegionOfInterest roi =
        cfg.effective_roi(out.scene.frame_width_px, out.scene.frame_height_px);
    out.detections = detect_objects(frame, roi, cfg.pipeline);

    const std::vector<PlanPoint> slots = episode_slots(out.scene);
    const TaskPlan plan = plan_task(out.detections, cfg.calibration, cfg.arm, slots,
                                    cfg.gripper_open_deg, cfg.gripper_closed_deg);
    out.report = execute(plan, out.scene, cfg.arm, out.scene.grasp_tol_cm);
    out.report_json = episode_report_json(out);

    if (!opts.frames_dir.empty()) {
        write_ppm(opts.frames_dir + "/frame_before.ppm", frame);
        Scene after = out.scene;
        after.pieces = out.report.final_pieces;
        after.rng_seed = out.scene.rng_seed + 1;
        const RgbImage frame_after = render_scene(after, cfg.calibration,
                                                  after.frame_width_px,
                                                  after.frame_height_px);
        write_ppm(opts.frames_dir + "/frame_after.ppm", frame_after);
    }
    if (!opts.commands_path.empty()) {
        std::ofstream cmd_out(opts.commands_path, std::ios::trunc);
        if (!cmd_out) raise(ErrorCode::IoError, opts.commands_path + ": cannot write");
        for (const auto& cmd : out.report.commands) {
            cmd_out << servo_command_line(cmd) << '\n';
        }
    }
    return out;
}

} // namespace pp
