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
#include "core/config.hpp"

#include "core/textconfig.hpp"

namespace pp {

namespace {

AppConfig from_entries(const std::vector<ConfigEntry>& entries) {
    const ConfigView view(entries);
    AppConfig cfg;

    cfg.arm.link_shoulder_cm = view.require_double("", "link_shoulder_cm");
    cfg.arm.link_forearm_cm = view.require_double("", "link_forearm_cm");
    cfg.arm.base_height_cm = view.require_double("", "base_height_cm");
    cfg.arm.wrist_height_cm = view.require_double("", "wrist_height_cm");
    cfg.gripper_open_deg = view.get_double("", "gripper_open_deg", 60.0);
    cfg.gripper_closed_deg = view.get_double("", "gripper_closed_deg", 10.0);

    cfg.calibration.base_px_x = view.require_double("", "base_px_x");
    cfg.calibration.base_px_y = view.require_double("", "base_px_y");
    cfg.calibration.scale_cm_per_px = view.require_double("", "scale_cm_per_px");
    cfg.calibration.axis_flip_y = view.get_bool("", "axis_flip_y", true);

    cfg.pipeline.min_area_px = view.get_int("", "min_area", 30);
    cfg.pipeline.morph_radius_px = static_cast<int>(view.get_int("", "morph_radius", 1));
    cfg.pipeline.dark_foreground = view.get_bool("", "dark_foreground", true);

    cfg.roi.x0 = static_cast<int>(view.get_int("", "roi_x0", 0));
    cfg.roi.y0 = static_cast<int>(view.get_int("", "roi_y0", 0));
    cfg.roi.w = static_cast<int>(view.get_int("", "roi_w", 0));
    cfg.roi.h = static_cast<int>(view.get_int("", "roi_h", 0));

    if (!(cfg.arm.link_shoulder_cm > 0.0) || !(cfg.arm.link_forearm_cm > 0.0)) {
        raise(ErrorCode::ParseError, "link lengths must be positive");
    }
    if (cfg.arm.base_height_cm < 0.0 || cfg.arm.wrist_height_cm < 0.0) {
        raise(ErrorCode::ParseError, "mount heights must be nonnegative");
    }
    if (!(cfg.calibration.scale_cm_per_px > 0.0)) {
        raise(ErrorCode::ParseError, "scale_cm_per_px must be positive");
    }
    if (cfg.pipeline.min_area_px < 0) {
        raise(ErrorCode::ParseError, "min_area must be nonnegative");
    }
    if (cfg.pipeline.morph_radius_px < 1) {
        raise(ErrorCode::ParseError, "morph_radius must be >= 1");
    }
    if (cfg.roi.x0 < 0 || cfg.roi.y0 < 0 || cfg.roi.w < 0 || cfg.roi.h < 0) {
        raise(ErrorCode::ParseError, "ROI values must be nonnegative");
    }
    return cfg;
}

} // namespace

AppConfig load_config_file(const std::string& path) {
    return from_entries(parse_config_file(path));
}

AppConfig load_config_text(const std::string& text, const std::string& origin) {
    return from_entries(parse_config_text(text, origin));
}

} // namespace pp
