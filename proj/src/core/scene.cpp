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
#include "core/scene.hpp"

#include <set>

#include "core/error.hpp"
#include "core/textconfig.hpp"

namespace pp {

namespace {

double require_key(const ConfigView& view, const std::string& section,
                   const std::string& key, const std::string& origin) {
    auto v = view.find(section, key);
    if (!v) raise(ErrorCode::ParseError, origin + ": missing [" + section + "] " + key);
    return parse_double_value(*v, key);
}

Scene from_entries(const std::vector<ConfigEntry>& entries, const std::string& origin) {
    Scene scene;
    const ConfigView view(entries);

    scene.board.x0_cm = require_key(view, "board", "x0_cm", origin);
    scene.board.y0_cm = require_key(view, "board", "y0_cm", origin);
    scene.board.w_cm = require_key(view, "board", "w_cm", origin);
    scene.board.h_cm = require_key(view, "board", "h_cm", origin);
    if (!(scene.board.w_cm > 0.0) || !(scene.board.h_cm > 0.0)) {
        raise(ErrorCode::ParseError, origin + ": board extent must be positive");
    }

    scene.frame_width_px = static_cast<int>(view.get_int("frame", "width_px", 640));
    scene.frame_height_px = static_cast<int>(view.get_int("frame", "height_px", 480));
    scene.noise_amplitude = static_cast<int>(view.get_int("frame", "noise_amplitude", 5));
    if (scene.frame_width_px < 1 || scene.frame_height_px < 1) {
        raise(ErrorCode::ParseError, origin + ": frame size must be positive");
    }
    if (scene.noise_amplitude < 0 || scene.noise_amplitude > 127) {
        raise(ErrorCode::ParseError, origin + ": noise_amplitude out of range [0,127]");
    }

    scene.rng_seed = static_cast<std::uint64_t>(view.get_int("sim", "seed", 0));
    scene.grasp_tol_cm = view.get_double("sim", "grasp_tol_cm", 0.5);
    scene.shuffle_slots = view.get_bool("sim", "shuffle_slots", false);
    if (scene.grasp_tol_cm < 0.0) {
        raise(ErrorCode::ParseError, origin + ": grasp_tol_cm must be nonnegative");
    }

    // Pieces and slots come from repeated sections; walk entries in order.
    Piece piece;
    bool in_piece = false;
    PlanPoint slot;
    bool in_slot = false;
    bool slot_has_x = false, slot_has_y = false;

    auto flush_piece = [&]() {
        if (!in_piece) return;
        if (piece.id == 0) raise(ErrorCode::ParseError, origin + ": piece missing id");
        if (!(piece.size_cm > 0.0)) {
            raise(ErrorCode::ParseError, origin + ": piece size_cm must be positive");
        }
        scene.pieces.push_back(piece);
        in_piece = false;
    };
    auto flush_slot = [&]() {
        if (!in_slot) return;
        if (!slot_has_x || !slot_has_y) {
            raise(ErrorCode::ParseError, origin + ": slot needs x_cm and y_cm");
        }
        scene.slots.push_back(slot);
        in_slot = false;
    };

    for (const auto& e : entries) {
        if (e.key.empty()) {  // section marker
            flush_piece();
            flush_slot();
            if (e.section == "piece") {
                piece = Piece{};
                in_piece = true;
            } else if (e.section == "slot") {
                slot = PlanPoint{};
                slot_has_x = slot_has_y = false;
                in_slot = true;
            }
            continue;
        }
        if (in_piece && e.section == "piece") {
            if (e.key == "id") piece.id = static_cast<int>(parse_int_value(e.value, "id"));
            else if (e.key == "shape") {
                if (e.value == "rect" || e.value == "rectangle") piece.shape = PieceShape::Rectangle;
                else if (e.value == "disk" || e.value == "circle") piece.shape = PieceShape::Disk;
                else raise(ErrorCode::ParseError, origin + ": unknown shape '" + e.value + "'");
            }
            else if (e.key == "size_cm") piece.size_cm = parse_double_value(e.value, "size_cm");
            else if (e.key == "x_cm") piece.pose.x_cm = parse_double_value(e.value, "x_cm");
            else if (e.key == "y_cm") piece.pose.y_cm = parse_double_value(e.value, "y_cm");
            else if (e.key == "intensity") {
                piece.intensity = static_cast<int>(parse_int_value(e.value, "intensity"));
                if (piece.intensity < 0 || piece.intensity > 255) {
                    raise(ErrorCode::ParseError, origin + ": intensity out of range [0,255]");
                }
            }
            else raise(ErrorCode::ParseError, origin + ": unknown [piece] key '" + e.key + "'");
        } else if (in_slot && e.section == "slot") {
            if (e.key == "x_cm") { slot.x_cm = parse_double_value(e.value, "x_cm"); slot_has_x = true; }
            else if (e.key == "y_cm") { slot.y_cm = parse_double_value(e.value, "y_cm"); slot_has_y = true; }
            else raise(ErrorCode::ParseError, origin + ": unknown [slot] key '" + e.key + "'");
        }
    }
    flush_piece();
    flush_slot();

    std::set<int> ids;
    for (const auto& p : scene.pieces) {
        if (!ids.insert(p.id).second) {
            raise(ErrorCode::ParseError, origin + ": duplicate piece id " +
                                             std::to_string(p.id));
        }
        if (!scene.board.contains(p.pose)) {
            raise(ErrorCode::ParseError, origin + ": piece " + std::to_string(p.id) +
                                             " lies outside the board extent");
        }
    }
    return scene;
}

} // namespace

Scene load_scene_file(const std::string& path) {
    return from_entries(parse_config_file(path), path);
}

Scene load_scene_text(const std::string& text, const std::string& origin) {
    return from_entries(parse_config_text(text, origin), origin);
}

} // namespace pp
