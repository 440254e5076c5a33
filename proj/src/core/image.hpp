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
#include <vector>

#include "core/error.hpp"

namespace pp {

/// 8-bit RGB raster, row-major interleaved triples.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    RgbImage() = default;
    RgbImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, fill) {
        if (w < 1 || h < 1) raise(ErrorCode::InvalidArgument, "image must be at least 1x1");
    }

    std::uint8_t* at(int x, int y) {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
};

/// 8-bit single-channel raster.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) raise(ErrorCode::InvalidArgument, "image must be at least 1x1");
    }

    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

/// Foreground/background mask; pixel values are 0 or 1.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height, 0/1

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) raise(ErrorCode::InvalidArgument, "image must be at least 1x1");
    }

    std::uint8_t& at(int x, int y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

/// Sub-rectangle of a frame the pipeline operates on.
struct RegionOfInterest {
    int x0 = 0;
    int y0 = 0;
    int w = 0;
    int h = 0;
};

/// Labeled connected component with its pixel statistics.
struct DetectedObject {
    int label = 0;       // raster-scan order of first encounter, from 1
    long long area = 0;  // pixel count
    double centroid_x = 0.0;
    double centroid_y = 0.0;
};

} // namespace pp
