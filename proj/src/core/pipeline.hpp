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
#include <vector>

#include "core/image.hpp"

// Raster pipeline that locates objects by centroid: ROI crop, grayscale,
// histogram equalization, Otsu binarization, morphological opening,
// connected-component labeling and small-area removal. Edge extraction is
// available for stage dumps but takes no part in labeling.

namespace pp {

struct PipelineParams {
    long long min_area_px = 30;    ///< components below this are discarded
    int morph_radius_px = 1;       ///< opening structuring-element radius
    bool dark_foreground = true;   ///< objects darker than the threshold
};

/// Sub-image copy; output (0,0) is input (roi.x0, roi.y0).
RgbImage crop_roi(const RgbImage& img, const RegionOfInterest& roi);

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B).
GrayImage to_grayscale(const RgbImage& img);

/// CDF remapping out(v) = round(255 (cdf(v) - cdf_min) / (N - cdf_min));
/// constant images are returned unchanged.
GrayImage equalize_histogram(const GrayImage& img);

struct ThresholdResult {
    BinaryImage mask;
    int threshold = 0;  // class split: {v <= t} vs {v > t}
};

/// Otsu's method over all 256 split points, maximizing between-class
/// variance; first maximum wins. Foreground is the dark class ({v <= t})
/// unless dark_foreground is false.
ThresholdResult otsu_threshold(const GrayImage& img, bool dark_foreground = true);

/// 3x3 Sobel gradient magnitude, replicate-padded borders, clamped to 255.
GrayImage sobel_edges(const GrayImage& img);

/// Erosion then dilation with a square element of side 2*radius+1;
/// out-of-bounds counts as background.
BinaryImage morph_open(const BinaryImage& img, int radius_px);

/// 8-connected labeling; labels follow raster-scan order of first
/// encounter, starting at 1. Centroids are means of member pixel
/// coordinates (pixel centers at integer coordinates).
std::vector<DetectedObject> connected_components(const BinaryImage& img);

/// Keeps objects with area >= min_area, order preserved.
std::vector<DetectedObject> filter_small(const std::vector<DetectedObject>& objects,
                                         long long min_area_px);

/// Full pipeline; centroids are reported in full-frame coordinates.
std::vector<DetectedObject> detect_objects(const RgbImage& img,
                                           const RegionOfInterest& roi,
                                           const PipelineParams& params);

/// Line-delimited JSON record {"label":n,"area":n,"cx":f,"cy":f}.
std::string detection_json_line(const DetectedObject& obj);

} // namespace pp
