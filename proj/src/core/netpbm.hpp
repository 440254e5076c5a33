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

#include "core/image.hpp"

// Binary netpbm I/O: PGM (P5) for grayscale, PPM (P6) for color, maxval 255.
// The writers emit a canonical header ("P5\n<w> <h>\n255\n") so files
// round-trip bit for bit.

namespace pp {

GrayImage read_pgm(const std::string& path);
RgbImage read_ppm(const std::string& path);

void write_pgm(const std::string& path, const GrayImage& img);
void write_ppm(const std::string& path, const RgbImage& img);

/// Binary masks serialize as PGM with values {0, 255}.
void write_binary_pgm(const std::string& path, const BinaryImage& img);
BinaryImage read_binary_pgm(const std::string& path);

std::string pgm_bytes(const GrayImage& img);
std::string ppm_bytes(const RgbImage& img);

} // namespace pp
