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
#include "core/render.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pp {

namespace {

struct PieceRaster {
    double cx_px;
    double cy_px;
    double radius_px;  // half side for rectangles, radius for disks
    bool disk;
    std::uint8_t intensity;
};

bool covers(const PieceRaster& p, int x, int y) {
    const double dx = x - p.cx_px;
    const double dy = y - p.cy_px;
    if (p.disk) return dx * dx + dy * dy <= p.radius_px * p.radius_px;
    return std::fabs(dx) <= p.radius_px && std::fabs(dy) <= p.radius_px;
}

} // namespace

RgbImage render_scene(const Scene& scene, const OverheadCalibration& calib,
                      int width_px, int height_px) {
    std::vector<PieceRaster> rasters;
    rasters.reserve(scene.pieces.size());
    for (const auto& piece : scene.pieces) {
        const PixelPoint c = world_to_pixel(calib, piece.pose);
        PieceRaster r;
        r.cx_px = c.x;
        r.cy_px = c.y;
        r.radius_px = 0.5 * piece.size_cm / calib.scale_cm_per_px;
        r.disk = piece.shape == PieceShape::Disk;
        r.intensity = static_cast<std::uint8_t>(piece.intensity);
        if (r.cx_px - r.radius_px < 0.0 || r.cx_px + r.radius_px > width_px - 1 ||
            r.cy_px - r.radius_px < 0.0 || r.cy_px + r.radius_px > height_px - 1) {
            raise(ErrorCode::PieceOutOfFrame,
                  "piece " + std::to_string(piece.id) + " projects outside the frame");
        }
        rasters.push_back(r);
    }

    RgbImage frame(width_px, height_px, kBoardIntensity);
    for (const auto& r : rasters) {
        const int x_lo = std::max(0, static_cast<int>(std::floor(r.cx_px - r.radius_px)));
        const int x_hi = std::min(width_px - 1, static_cast<int>(std::ceil(r.cx_px + r.radius_px)));
        const int y_lo = std::max(0, static_cast<int>(std::floor(r.cy_px - r.radius_px)));
        const int y_hi = std::min(height_px - 1, static_cast<int>(std::ceil(r.cy_px + r.radius_px)));
        for (int y = y_lo; y <= y_hi; ++y) {
            for (int x = x_lo; x <= x_hi; ++x) {
                if (covers(r, x, y)) {
                    std::uint8_t* px = frame.at(x, y);
                    px[0] = px[1] = px[2] = r.intensity;
                }
            }
        }
    }

    if (scene.noise_amplitude > 0) {
        std::mt19937 rng(static_cast<std::uint32_t>(scene.rng_seed ^
                                                    (scene.rng_seed >> 32)));
        const int span = 2 * scene.noise_amplitude + 1;
        std::uint8_t* px = frame.pixels.data();
        const std::size_t count = static_cast<std::size_t>(width_px) * height_px;
        for (std::size_t i = 0; i < count; ++i, px += 3) {
            const int noise = static_cast<int>(rng() % static_cast<std::uint32_t>(span)) -
                              scene.noise_amplitude;
            const int v = std::clamp(px[0] + noise, 0, 255);
            px[0] = px[1] = px[2] = static_cast<std::uint8_t>(v);
        }
    }
    return frame;
}

} // namespace pp
