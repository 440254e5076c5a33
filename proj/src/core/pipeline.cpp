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
#include "core/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace pp {

RgbImage crop_roi(const RgbImage& img, const RegionOfInterest& roi) {
    if (roi.w < 1 || roi.h < 1 || roi.x0 < 0 || roi.y0 < 0 ||
        roi.x0 + roi.w > img.width || roi.y0 + roi.h > img.height) {
        raise(ErrorCode::RoiOutOfBounds, "ROI exceeds image bounds");
    }
    RgbImage out(roi.w, roi.h);
    for (int y = 0; y < roi.h; ++y) {
        std::memcpy(out.at(0, y), img.at(roi.x0, roi.y0 + y),
                    static_cast<std::size_t>(roi.w) * 3);
    }
    return out;
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    const std::uint8_t* src = img.pixels.data();
    for (std::size_t i = 0; i < out.pixels.size(); ++i, src += 3) {
        const double luma = 0.299 * src[0] + 0.587 * src[1] + 0.114 * src[2];
        long v = std::lround(luma);
        out.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    return out;
}

GrayImage equalize_histogram(const GrayImage& img) {
    std::array<long long, 256> hist{};
    for (std::uint8_t v : img.pixels) ++hist[v];

    const long long n = static_cast<long long>(img.pixels.size());
    long long cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
        if (hist[v] > 0) {
            cdf_min = hist[v];
            break;
        }
    }
    if (cdf_min == n) return img;  // constant image

    std::array<std::uint8_t, 256> lut{};
    long long cdf = 0;
    for (int v = 0; v < 256; ++v) {
        cdf += hist[v];
        const double mapped =
            255.0 * static_cast<double>(cdf - cdf_min) / static_cast<double>(n - cdf_min);
        lut[v] = static_cast<std::uint8_t>(std::clamp(std::lround(mapped), 0L, 255L));
    }

    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = lut[img.pixels[i]];
    return out;
}

ThresholdResult otsu_threshold(const GrayImage& img, bool dark_foreground) {
    std::array<long long, 256> hist{};
    for (std::uint8_t v : img.pixels) ++hist[v];
    const long long n = static_cast<long long>(img.pixels.size());

    long long sum_total = 0;
    for (int v = 0; v < 256; ++v) sum_total += static_cast<long long>(v) * hist[v];

    // Between-class variance up to a constant factor:
    //   (s0*n1 - s1*n0)^2 / (n0*n1).
    // The integer accumulations are exact, so the sweep is a faithful
    // argmax with first-maximum tie breaking.
    int best_t = 0;
    double best_score = -1.0;
    long long n0 = 0, s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += static_cast<long long>(t) * hist[t];
        const long long n1 = n - n0;
        if (n0 == 0 || n1 == 0) continue;
        const long long s1 = sum_total - s0;
        const double cross = static_cast<double>(s0 * n1 - s1 * n0);
        const double score = cross * cross / (static_cast<double>(n0) * static_cast<double>(n1));
        if (score > best_score) {
            best_score = score;
            best_t = t;
        }
    }

    ThresholdResult result;
    result.threshold = best_t;
    result.mask = BinaryImage(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const bool dark = img.pixels[i] <= best_t;
        result.mask.pixels[i] = (dark == dark_foreground) ? 1 : 0;
    }
    return result;
}

GrayImage sobel_edges(const GrayImage& img) {
    if (img.width < 3 || img.height < 3) {
        raise(ErrorCode::ImageTooSmall, "Sobel needs at least a 3x3 image");
    }
    GrayImage out(img.width, img.height);
    auto sample = [&](int x, int y) -> int {
        x = std::clamp(x, 0, img.width - 1);
        y = std::clamp(y, 0, img.height - 1);
        return img.at(x, y);
    };
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const int p00 = sample(x - 1, y - 1), p10 = sample(x, y - 1), p20 = sample(x + 1, y - 1);
            const int p01 = sample(x - 1, y),                             p21 = sample(x + 1, y);
            const int p02 = sample(x - 1, y + 1), p12 = sample(x, y + 1), p22 = sample(x + 1, y + 1);
            const int gx = (p20 + 2 * p21 + p22) - (p00 + 2 * p01 + p02);
            const int gy = (p02 + 2 * p12 + p22) - (p00 + 2 * p10 + p20);
            const long mag = std::lround(std::sqrt(static_cast<double>(gx) * gx +
                                                   static_cast<double>(gy) * gy));
            out.at(x, y) = static_cast<std::uint8_t>(std::min(mag, 255L));
        }
    }
    return out;
}

namespace {

BinaryImage erode(const BinaryImage& img, int r) {
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::uint8_t keep = 1;
            for (int dy = -r; keep && dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height ||
                        !img.at(nx, ny)) {
                        keep = 0;
                        break;
                    }
                }
            }
            out.at(x, y) = keep;
        }
    }
    return out;
}

BinaryImage dilate(const BinaryImage& img, int r) {
    BinaryImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            std::uint8_t hit = 0;
            for (int dy = -r; !hit && dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx >= 0 && ny >= 0 && nx < img.width && ny < img.height &&
                        img.at(nx, ny)) {
                        hit = 1;
                        break;
                    }
                }
            }
            out.at(x, y) = hit;
        }
    }
    return out;
}

} // namespace

BinaryImage morph_open(const BinaryImage& img, int radius_px) {
    if (radius_px < 1) raise(ErrorCode::InvalidArgument, "morph radius must be >= 1");
    return dilate(erode(img, radius_px), radius_px);
}

std::vector<DetectedObject> connected_components(const BinaryImage& img) {
    std::vector<DetectedObject> objects;
    std::vector<int> labels(img.pixels.size(), 0);
    std::vector<std::pair<int, int>> stack;
    int next_label = 1;

    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * img.width + x;
            if (!img.pixels[idx] || labels[idx]) continue;

            const int label = next_label++;
            long long area = 0;
            long long sum_x = 0, sum_y = 0;
            labels[idx] = label;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                ++area;
                sum_x += cx;
                sum_y += cy;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = cx + dx, ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
                        const std::size_t nidx = static_cast<std::size_t>(ny) * img.width + nx;
                        if (img.pixels[nidx] && !labels[nidx]) {
                            labels[nidx] = label;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }

            DetectedObject obj;
            obj.label = label;
            obj.area = area;
            obj.centroid_x = static_cast<double>(sum_x) / static_cast<double>(area);
            obj.centroid_y = static_cast<double>(sum_y) / static_cast<double>(area);
            objects.push_back(obj);
        }
    }
    return objects;
}

std::vector<DetectedObject> filter_small(const std::vector<DetectedObject>& objects,
                                         long long min_area_px) {
    if (min_area_px < 0) raise(ErrorCode::InvalidArgument, "min_area must be >= 0");
    std::vector<DetectedObject> kept;
    for (const auto& obj : objects) {
        if (obj.area >= min_area_px) kept.push_back(obj);
    }
    return kept;
}

std::vector<DetectedObject> detect_objects(const RgbImage& img,
                                           const RegionOfInterest& roi,
                                           const PipelineParams& params) {
    const RgbImage sub = crop_roi(img, roi);
    const GrayImage gray = to_grayscale(sub);
    const GrayImage equalized = equalize_histogram(gray);
    const ThresholdResult thresholded = otsu_threshold(equalized, params.dark_foreground);
    const BinaryImage opened = morph_open(thresholded.mask, params.morph_radius_px);
    std::vector<DetectedObject> objects =
        filter_small(connected_components(opened), params.min_area_px);
    for (auto& obj : objects) {
        obj.centroid_x += roi.x0;
        obj.centroid_y += roi.y0;
    }
    return objects;
}

std::string detection_json_line(const DetectedObject& obj) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "{\"label\":%d,\"area\":%lld,\"cx\":%.6f,\"cy\":%.6f}",
                  obj.label, obj.area, obj.centroid_x, obj.centroid_y);
    return std::string(buf);
}

} // namespace pp
