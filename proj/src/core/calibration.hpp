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

#include "core/geometry.hpp"

// Overhead-camera mapping between image pixels and robot-base plan
// coordinates: rigid scale + translation, with the image row axis flipped
// so world +y grows away from the base.

namespace pp {

struct PixelPoint {
    double x = 0.0;
    double y = 0.0;
};

struct OverheadCalibration {
    double base_px_x = 0.0;       ///< robot base axis in the frame
    double base_px_y = 0.0;
    double scale_cm_per_px = 1.0;
    bool axis_flip_y = true;      ///< rows grow downward; world +y away from base
};

inline PlanPoint pixel_to_world(const OverheadCalibration& c, const PixelPoint& px) {
    PlanPoint p;
    p.x_cm = (px.x - c.base_px_x) * c.scale_cm_per_px;
    p.y_cm = c.axis_flip_y ? (c.base_px_y - px.y) * c.scale_cm_per_px
                           : (px.y - c.base_px_y) * c.scale_cm_per_px;
    return p;
}

inline PixelPoint world_to_pixel(const OverheadCalibration& c, const PlanPoint& p) {
    PixelPoint px;
    px.x = p.x_cm / c.scale_cm_per_px + c.base_px_x;
    px.y = c.axis_flip_y ? c.base_px_y - p.y_cm / c.scale_cm_per_px
                         : p.y_cm / c.scale_cm_per_px + c.base_px_y;
    return px;
}

} // namespace pp
