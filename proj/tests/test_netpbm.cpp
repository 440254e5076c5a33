#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "core/netpbm.hpp"

using namespace pp;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "pp_netpbm_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("pgm writes a canonical header") {
    GrayImage img(3, 2);
    for (int i = 0; i < 6; ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 40);
    const std::string bytes = pgm_bytes(img);
    CHECK(bytes.substr(0, 11) == "P5\n3 2\n255\n");
    CHECK(bytes.size() == 11 + 6);
}

TEST_CASE("pgm and ppm round-trip bit for bit") {
    std::mt19937 rng(5);
    const auto dir = temp_dir();

    GrayImage gray(17, 9);
    for (auto& v : gray.pixels) v = static_cast<std::uint8_t>(rng() & 0xff);
    const std::string gray_path = (dir / "roundtrip.pgm").string();
    write_pgm(gray_path, gray);
    const std::string first = slurp(gray_path);
    const GrayImage gray_back = read_pgm(gray_path);
    CHECK(gray_back.width == gray.width);
    CHECK(gray_back.height == gray.height);
    CHECK(gray_back.pixels == gray.pixels);
    write_pgm(gray_path, gray_back);
    CHECK(slurp(gray_path) == first);

    RgbImage rgb(11, 13);
    for (auto& v : rgb.pixels) v = static_cast<std::uint8_t>(rng() & 0xff);
    const std::string rgb_path = (dir / "roundtrip.ppm").string();
    write_ppm(rgb_path, rgb);
    const std::string rgb_first = slurp(rgb_path);
    const RgbImage rgb_back = read_ppm(rgb_path);
    CHECK(rgb_back.pixels == rgb.pixels);
    write_ppm(rgb_path, rgb_back);
    CHECK(slurp(rgb_path) == rgb_first);
}

TEST_CASE("binary masks serialize as 0/255 pgm") {
    const auto dir = temp_dir();
    BinaryImage mask(4, 3);
    mask.at(1, 1) = 1;
    mask.at(2, 2) = 1;
    const std::string path = (dir / "mask.pgm").string();
    write_binary_pgm(path, mask);

    const GrayImage as_gray = read_pgm(path);
    for (auto v : as_gray.pixels) CHECK((v == 0 || v == 255));

    const BinaryImage back = read_binary_pgm(path);
    CHECK(back.pixels == mask.pixels);
}

TEST_CASE("reader accepts comments and rejects malformed files") {
    const auto dir = temp_dir();
    const std::string path = (dir / "weird.pgm").string();
    const std::string raster4("\x00\x01\x02\x03", 4);

    spit(path, "P5\n# a comment\n2 2\n255\n" + raster4);
    const GrayImage ok = read_pgm(path);
    CHECK(ok.width == 2);
    CHECK(ok.height == 2);

    spit(path, "P7\n2 2\n255\nxxxx");
    CHECK_THROWS_AS(read_pgm(path), Error);

    spit(path, "P5\n2 2\n255\n" + raster4.substr(0, 2));  // truncated raster
    CHECK_THROWS_AS(read_pgm(path), Error);

    spit(path, "P5\n2 2\n70000\n" + raster4);  // 16-bit maxval unsupported
    CHECK_THROWS_AS(read_pgm(path), Error);

    CHECK_THROWS_AS(read_pgm((dir / "missing.pgm").string()), Error);
}
