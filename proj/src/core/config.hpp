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

#include <string>

#include "core/calibration.hpp"
#include "core/geometry.hpp"
#include "core/image.hpp"
#include "core/pipeline.hpp"

namespace pp {

/// Arm, camera and pipeline settings loaded from one config file.
///
/// Required keys: link_shoulder_cm, link_forearm_cm, base_height_cm,
/// wrist_height_cm, base_px_x, base_px_y, scale_cm_per_px. Everything else
/// has documented defaults. A zero-extent ROI means the full frame.
struct AppConfig {
    ArmGeometry arm;
    double gripper_open_deg = 60.0;
    double gripper_closed_deg = 10.0;
    OverheadCalibration calibration;
    PipelineParams pipeline;
    RegionOfInterest roi;  // w == 0 / h == 0 -> full frame

    RegionOfInterest effective_roi(int frame_w, int frame_h) const {
        if (roi.w > 0 && roi.h > 0) return roi;
        return RegionOfInterest{0, 0, frame_w, frame_h};
    }
};

AppConfig load_config_file(const std::string& path);
AppConfig load_config_text(const std::string& text, const std::string& origin);

} // namespace pp
