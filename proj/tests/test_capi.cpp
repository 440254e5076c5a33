#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "pickplace.h"

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "pp_capi_tests";
    fs::create_directories(dir);
    return dir;
}

void spit(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

const char* kConfig =
    "link_shoulder_cm = 12\n"
    "link_forearm_cm = 12\n"
    "base_height_cm = 6\n"
    "wrist_height_cm = 2\n"
    "gripper_open_deg = 60\n"
    "gripper_closed_deg = 10\n"
    "base_px_x = 160\n"
    "base_px_y = 230\n"
    "scale_cm_per_px = 0.1\n";

const char* kScene =
    "[board]\n"
    "x0_cm = -15\ny0_cm = 2\nw_cm = 30\nh_cm = 14\n"
    "[frame]\n"
    "width_px = 320\nheight_px = 240\nnoise_amplitude = 0\n"
    "[sim]\n"
    "seed = 5\ngrasp_tol_cm = 0.5\n"
    "[piece]\n"
    "id = 1\nshape = rect\nsize_cm = 4\nx_cm = -8\ny_cm = 12\n"
    "[slot]\n"
    "x_cm = 8\ny_cm = 12\n";

// 6x4 P6 frame: light background, one 2x2 dark block.
std::string tiny_ppm() {
    std::string bytes = "P6\n6 4\n255\n";
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 6; ++x) {
            const bool dark = (x >= 2 && x <= 3 && y >= 1 && y <= 2);
            const char v = dark ? '\x28' : '\xdc';
            bytes.push_back(v);
            bytes.push_back(v);
            bytes.push_back(v);
        }
    }
    return bytes;
}

} // namespace

TEST_CASE("status names are stable") {
    CHECK(std::string(pp_status_name(PP_OK)) == "Ok");
    CHECK(std::string(pp_status_name(PP_ERR_TARGET_UNREACHABLE)) == "TargetUnreachable");
    CHECK(std::string(pp_status_name(PP_ERR_DEGENERATE_TARGET)) == "DegenerateTarget");
    CHECK(std::string(pp_status_name(PP_ERR_PARSE)) == "ParseError");
}

TEST_CASE("config load and error reporting") {
    pp_config* config = nullptr;
    CHECK(pp_config_loads(kConfig, &config) == PP_OK);
    REQUIRE(config != nullptr);
    pp_config_free(config);

    config = nullptr;
    CHECK(pp_config_loads("link_forearm_cm = 10\n", &config) == PP_ERR_PARSE);
    CHECK(config == nullptr);
    CHECK(std::string(pp_last_error_message()).find("link_shoulder_cm") !=
          std::string::npos);

    CHECK(pp_config_load("/nonexistent/nope.cfg", &config) == PP_ERR_IO);
    CHECK(pp_config_loads(nullptr, &config) == PP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solve, forward kinematics and the annulus through the C surface") {
    pp_config* config = nullptr;
    REQUIRE(pp_config_loads(kConfig, &config) == PP_OK);

    double q[5] = {0};
    CHECK(pp_solve_ik(config, 0.0, 14.0, q) == PP_OK);
    CHECK(q[4] == doctest::Approx(60.0));

    double x = 0, y = 0, h = 0;
    CHECK(pp_forward_kinematics(config, q, &x, &y, &h) == PP_OK);
    CHECK(x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(y == doctest::Approx(14.0).epsilon(1e-9));
    CHECK(h == doctest::Approx(2.0).epsilon(1e-9));

    double r_min = -1, r_max = -1;
    CHECK(pp_reachable_annulus(config, &r_min, &r_max) == PP_OK);
    CHECK(r_min == doctest::Approx(0.0));
    CHECK(r_max == doctest::Approx(std::sqrt(24.0 * 24.0 - 16.0)));

    CHECK(pp_solve_ik(config, 0.0, 40.0, q) == PP_ERR_TARGET_UNREACHABLE);
    CHECK(pp_solve_ik(config, 0.0, 0.0, q) == PP_ERR_DEGENERATE_TARGET);

    double good[5] = {0.0, 90.0, -90.0, 90.0, 60.0};
    char line[160];
    CHECK(pp_joints_json(good, line, sizeof(line)) == PP_OK);
    CHECK(std::string(line).find("\"q2\":90.000000") != std::string::npos);
    char tiny[8];
    CHECK(pp_joints_json(good, tiny, sizeof(tiny)) == PP_ERR_BUFFER_TOO_SMALL);

    pp_config_free(config);
}

TEST_CASE("detection over a PPM file with stage dumps") {
    const auto dir = temp_dir();
    const auto image = dir / "frame.ppm";
    spit(image, tiny_ppm());

    pp_config* config = nullptr;
    REQUIRE(pp_config_loads(kConfig, &config) == PP_OK);

    pp_detections* detections = nullptr;
    // min_area default 30 would reject the 2x2 block; use a permissive config.
    pp_config* permissive = nullptr;
    const std::string text = std::string(kConfig) + "min_area = 1\nmorph_radius = 1\n";
    REQUIRE(pp_config_loads(text.c_str(), &permissive) == PP_OK);

    const auto stages = dir / "stages";
    std::filesystem::remove_all(stages);
    std::filesystem::create_directories(stages);
    CHECK(pp_detect_image_file(permissive, image.string().c_str(),
                               stages.string().c_str(), &detections) == PP_OK);
    REQUIRE(detections != nullptr);
    // Opening with radius 1 erases the 2x2 block: no detections, but the
    // five stage files exist.
    CHECK(pp_detections_count(detections) == 0);
    int stage_files = 0;
    for (auto const& entry : std::filesystem::directory_iterator(stages)) {
        (void)entry;
        ++stage_files;
    }
    CHECK(stage_files == 5);
    pp_detections_free(detections);

    CHECK(pp_detect_image_file(config, (dir / "missing.ppm").string().c_str(), nullptr,
                               &detections) == PP_ERR_IO);

    pp_config_free(permissive);
    pp_config_free(config);
}

TEST_CASE("scene load and a full episode") {
    const auto dir = temp_dir();
    const auto scene_path = dir / "one.scene";
    spit(scene_path, kScene);

    pp_config* config = nullptr;
    REQUIRE(pp_config_loads(kConfig, &config) == PP_OK);
    pp_scene* scene = nullptr;
    REQUIRE(pp_scene_load(scene_path.string().c_str(), &scene) == PP_OK);

    pp_simulate_opts opts{};
    const auto frames = dir / "frames";
    std::filesystem::create_directories(frames);
    const std::string frames_str = frames.string();
    const std::string commands_str = (dir / "commands.log").string();
    opts.frames_dir = frames_str.c_str();
    opts.commands_path = commands_str.c_str();

    pp_episode* episode = nullptr;
    REQUIRE(pp_simulate(config, scene, &opts, &episode) == PP_OK);
    CHECK(pp_episode_steps(episode) == 1);
    CHECK(pp_episode_placed(episode) == 1);
    CHECK(pp_episode_dropped(episode) == 0);
    CHECK(pp_episode_unreachable(episode) == 0);
    const std::string json = pp_episode_report_json(episode);
    CHECK(json.find("\"outcome\": \"placed\"") != std::string::npos);

    CHECK(std::filesystem::exists(frames / "frame_before.ppm"));
    CHECK(std::filesystem::exists(frames / "frame_after.ppm"));
    CHECK(std::filesystem::exists(commands_str));

    pp_episode_free(episode);
    pp_scene_free(scene);
    pp_config_free(config);

    CHECK(pp_scene_load((dir / "no.scene").string().c_str(), &scene) == PP_ERR_IO);
}
