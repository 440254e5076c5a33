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

#include "core/calibration.hpp"
#include "core/image.hpp"
#include "core/scene.hpp"

namespace pp {

inline constexpr int kBoardIntensity = 230;

/// Renders the overhead frame: light board, pieces as filled dark shapes,
/// plus seeded uniform pixel noise of amplitude scene.noise_amplitude.
/// A pixel belongs to a piece when its center projects inside the shape.
/// Throws PieceOutOfFrame when a piece does not project fully inside.
RgbImage render_scene(const Scene& scene, const OverheadCalibration& calib,
                      int width_px, int height_px);

} // namespace pp
