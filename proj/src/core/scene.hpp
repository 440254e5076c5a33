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

#include <cstdint>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace pp {

enum class PieceShape { Rectangle, Disk };

/// One pick-and-place object on the board. size_cm is the square side or
/// the disk diameter; intensity is the rendered gray level.
struct Piece {
    int id = 0;
    PieceShape shape = PieceShape::Rectangle;
    double size_cm = 0.0;
    PlanPoint pose;
    int intensity = 60;
};

/// Axis-aligned board rectangle in plan coordinates.
struct BoardExtent {
    double x0_cm = 0.0;
    double y0_cm = 0.0;
    double w_cm = 0.0;
    double h_cm = 0.0;

    bool contains(const PlanPoint& p) const {
        return p.x_cm >= x0_cm && p.x_cm <= x0_cm + w_cm &&
               p.y_cm >= y0_cm && p.y_cm <= y0_cm + h_cm;
    }
};

/// Simulator world state: pieces on the board, placement slots, frame and
/// noise settings, and the episode seed.
struct Scene {
    BoardExtent board;
    std::vector<Piece> pieces;
    std::vector<PlanPoint> slots;
    std::uint64_t rng_seed = 0;
    int frame_width_px = 640;
    int frame_height_px = 480;
    int noise_amplitude = 5;
    double grasp_tol_cm = 0.5;
    bool shuffle_slots = false;
};

Scene load_scene_file(const std::string& path);
Scene load_scene_text(const std::string& text, const std::string& origin);

} // namespace pp
