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
#include "core/netpbm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pp {

namespace {

// Skips whitespace and '#' comment lines between header tokens.
void skip_separators(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in.get();
        } else {
            return;
        }
    }
}

long read_header_int(std::istream& in, const std::string& path, const char* field) {
    skip_separators(in);
    long value = 0;
    if (!(in >> value)) {
        raise(ErrorCode::ParseError, path + ": malformed netpbm header (" + field + ")");
    }
    return value;
}

struct Header {
    int width;
    int height;
};

Header read_header(std::istream& in, const std::string& path, const char* magic) {
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != magic[0] || m1 != magic[1]) {
        raise(ErrorCode::ParseError, path + ": not a " + magic + " netpbm file");
    }
    const long w = read_header_int(in, path, "width");
    const long h = read_header_int(in, path, "height");
    const long maxval = read_header_int(in, path, "maxval");
    if (w < 1 || h < 1 || w > 1 << 20 || h > 1 << 20) {
        raise(ErrorCode::ParseError, path + ": bad image dimensions");
    }
    if (maxval < 1 || maxval > 255) {
        raise(ErrorCode::ParseError, path + ": unsupported maxval (8-bit only)");
    }
    // Exactly one whitespace byte separates the header from the raster.
    const int sep = in.get();
    if (sep != ' ' && sep != '\t' && sep != '\r' && sep != '\n') {
        raise(ErrorCode::ParseError, path + ": missing raster separator");
    }
    return {static_cast<int>(w), static_cast<int>(h)};
}

void read_raster(std::istream& in, const std::string& path, std::uint8_t* dst,
                 std::size_t n) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        raise(ErrorCode::ParseError, path + ": truncated raster data");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoError, path + ": cannot open for reading");
    return in;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoError, path + ": cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) raise(ErrorCode::IoError, path + ": write failed");
}

std::string header_bytes(const char* magic, int w, int h) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s\n%d %d\n255\n", magic, w, h);
    return std::string(buf);
}

} // namespace

GrayImage read_pgm(const std::string& path) {
    auto in = open_input(path);
    const Header hd = read_header(in, path, "P5");
    GrayImage img(hd.width, hd.height);
    read_raster(in, path, img.pixels.data(), img.pixels.size());
    return img;
}

RgbImage read_ppm(const std::string& path) {
    auto in = open_input(path);
    const Header hd = read_header(in, path, "P6");
    RgbImage img(hd.width, hd.height);
    read_raster(in, path, img.pixels.data(), img.pixels.size());
    return img;
}

std::string pgm_bytes(const GrayImage& img) {
    std::string out = header_bytes("P5", img.width, img.height);
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

std::string ppm_bytes(const RgbImage& img) {
    std::string out = header_bytes("P6", img.width, img.height);
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

void write_pgm(const std::string& path, const GrayImage& img) {
    write_file(path, pgm_bytes(img));
}

void write_ppm(const std::string& path, const RgbImage& img) {
    write_file(path, ppm_bytes(img));
}

void write_binary_pgm(const std::string& path, const BinaryImage& img) {
    GrayImage g(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        g.pixels[i] = img.pixels[i] ? 255 : 0;
    }
    write_pgm(path, g);
}

BinaryImage read_binary_pgm(const std::string& path) {
    const GrayImage g = read_pgm(path);
    BinaryImage b(g.width, g.height);
    for (std::size_t i = 0; i < g.pixels.size(); ++i) {
        b.pixels[i] = g.pixels[i] >= 128 ? 1 : 0;
    }
    return b;
}

} // namespace pp
