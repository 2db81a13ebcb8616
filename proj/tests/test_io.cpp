#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "svr/io.hpp"
#include "svr/raster.hpp"
#include "svr/synth.hpp"

using namespace svr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("svr_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

SparseScene random_scene(std::mt19937_64& rng, int sh_degree) {
    SparseScene s;
    s.bounds = {{0.1, -0.2, 0.05}, 1.5};
    std::uniform_int_distribution<uint32_t> ui(0, 3);
    std::set<uint64_t> seen;
    for (int i = 0; i < 40; ++i) {
        OctPath p = to_octpath({ui(rng), ui(rng), ui(rng), 2});
        if (seen.insert(p.code).second) s.voxels.push_back(p);
    }
    rebuild_corner_indexing(s, {});
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (auto& d : s.density) d = float(u(rng));
    s.sh_degree = sh_degree;
    s.sh.resize(s.voxel_count() * s.sh_stride());
    for (auto& c : s.sh) c = float(u(rng)) * 0.2f;
    return s;
}

}  // namespace

TEST_CASE("png roundtrip is exact on quantized intensities") {
    TempDir dir;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> q(0, 255);
    Image img(9, 7, 3);
    for (auto& v : img.data) v = q(rng) / 255.0;
    save_png(img, dir / "a.png");
    Image back = load_png(dir / "a.png");
    REQUIRE(back.same_shape(img));
    for (size_t i = 0; i < img.data.size(); ++i)
        CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(1e-12));

    // Out-of-range values clamp on save.
    Image hot(4, 4, 3);
    for (size_t i = 0; i < hot.data.size(); ++i) hot.data[i] = (i % 2) ? 2.0 : -1.0;
    save_png(hot, dir / "b.png");
    Image hb = load_png(dir / "b.png");
    for (size_t i = 0; i < hb.data.size(); ++i) CHECK(hb.data[i] == ((i % 2) ? 1.0 : 0.0));

    CHECK_THROWS_AS(save_png(Image(4, 4, 1), dir / "c.png"), std::invalid_argument);
    CHECK_THROWS_AS(load_png(dir / "missing.png"), std::runtime_error);
    write_text_file(dir / "junk.png", "this is not a png");
    CHECK_THROWS_AS(load_png(dir / "junk.png"), std::runtime_error);
}

TEST_CASE("depth roundtrip is bit-exact") {
    TempDir dir;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    Image img(11, 6, 1);
    for (auto& v : img.data) v = double(float(u(rng)));
    img.data[3] = double(1e30f);  // far sentinel survives (f32 storage)
    save_depth(img, dir / "a.depth");
    Image back = load_depth(dir / "a.depth");
    REQUIRE(back.same_shape(img));
    for (size_t i = 0; i < img.data.size(); ++i) CHECK(back.data[i] == img.data[i]);

    CHECK_THROWS_AS(save_depth(Image(4, 4, 3), dir / "b.depth"), std::invalid_argument);
    write_text_file(dir / "junk.depth", "XXXX1234");
    CHECK_THROWS_AS(load_depth(dir / "junk.depth"), std::runtime_error);
    save_depth(img, dir / "trunc.depth");
    fs::resize_file(fs::path(dir / "trunc.depth"), 20);
    CHECK_THROWS_AS(load_depth(dir / "trunc.depth"), std::runtime_error);
}

TEST_CASE("cameras.json canonical roundtrip") {
    TempDir dir;
    std::vector<CameraFrame> frames;
    auto cams = ring_cameras(3, 64, 48);
    for (size_t i = 0; i < cams.size(); ++i)
        frames.push_back({"frame_" + std::to_string(i) + ".png", cams[i]});
    save_cameras(frames, dir / "cameras.json");
    auto back = load_cameras(dir / "cameras.json");
    REQUIRE(back.size() == frames.size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].image == frames[i].image);
        CHECK(back[i].cam.fx == frames[i].cam.fx);
        CHECK(norm(back[i].cam.pos - frames[i].cam.pos) < 1e-12);
    }
    // Load followed by save is byte-identical.
    save_cameras(back, dir / "cameras2.json");
    CHECK(read_text_file(dir / "cameras.json") == read_text_file(dir / "cameras2.json"));
}

TEST_CASE("cameras.json rejects malformed input") {
    TempDir dir;
    write_text_file(dir / "bad.json", "{nope");
    CHECK_THROWS_WITH_AS(load_cameras(dir / "bad.json"),
                         doctest::Contains("malformed JSON"), std::runtime_error);
    write_text_file(dir / "noframes.json", R"({"cameras": []})");
    CHECK_THROWS_WITH_AS(load_cameras(dir / "noframes.json"),
                         doctest::Contains("frames"), std::runtime_error);

    // A sheared c2w is not a rigid pose.
    std::string frame = R"({"frames": [{"image": "x.png", "width": 8, "height": 8,
        "fx": 8.0, "fy": 8.0, "cx": 4.0, "cy": 4.0,
        "c2w": [1,0.5,0,0, 0,1,0,0, 0,0,1,2, 0,0,0,1]}]})";
    write_text_file(dir / "shear.json", frame);
    CHECK_THROWS_AS(load_cameras(dir / "shear.json"), std::runtime_error);

    std::string badrow = R"({"frames": [{"image": "x.png", "width": 8, "height": 8,
        "fx": 8.0, "fy": 8.0, "cx": 4.0, "cy": 4.0,
        "c2w": [1,0,0,0, 0,1,0,0, 0,0,1,2, 0,0,1,1]}]})";
    write_text_file(dir / "badrow.json", badrow);
    CHECK_THROWS_WITH_AS(load_cameras(dir / "badrow.json"),
                         doctest::Contains("last row"), std::runtime_error);

    std::string badfx = R"({"frames": [{"image": "x.png", "width": 8, "height": 8,
        "fx": -1.0, "fy": 8.0, "cx": 4.0, "cy": 4.0,
        "c2w": [1,0,0,0, 0,1,0,0, 0,0,1,2, 0,0,0,1]}]})";
    write_text_file(dir / "badfx.json", badfx);
    CHECK_THROWS_AS(load_cameras(dir / "badfx.json"), std::runtime_error);
}

TEST_CASE("load_dataset stitches cameras and images") {
    TempDir dir;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> q(0, 255);
    auto cams = ring_cameras(2, 16, 12);
    std::vector<CameraFrame> frames;
    for (size_t i = 0; i < cams.size(); ++i) {
        Image img(16, 12, 3);
        for (auto& v : img.data) v = q(rng) / 255.0;
        std::string name = "f" + std::to_string(i) + ".png";
        save_png(img, dir / name);
        frames.push_back({name, cams[i]});
    }
    save_cameras(frames, dir / "cameras.json");
    Dataset d = load_dataset(dir.path.string());
    REQUIRE(d.frames.size() == 2);
    CHECK(d.frames[0].name == "f0.png");
    CHECK(d.frames[1].image.width == 16);

    // Size mismatch between image file and header is rejected.
    save_png(Image(8, 8, 3), dir / "f1.png");
    CHECK_THROWS_WITH_AS(load_dataset(dir.path.string()), doctest::Contains("disagrees"),
                         std::runtime_error);
}

TEST_CASE("checkpoint roundtrip renders bit-identically") {
    TempDir dir;
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 3; ++trial) {
        SparseScene s = random_scene(rng, trial);
        save_checkpoint(s, dir / "s.svrx");
        SparseScene back = load_checkpoint(dir / "s.svrx");
        REQUIRE(back.voxel_count() == s.voxel_count());
        CHECK(back.sh_degree == s.sh_degree);
        CHECK(back.bounds.size == s.bounds.size);
        for (size_t vi = 0; vi < s.voxel_count(); ++vi) {
            CHECK(back.voxels[vi] == s.voxels[vi]);
            CHECK(back.corner_index[vi] == s.corner_index[vi]);
        }
        CHECK(back.density == s.density);
        CHECK(back.sh == s.sh);

        Camera cam = ring_cameras(1, 24, 24)[0];
        RenderOptions o;
        o.supersample = 1.0;
        RenderOutput a = render(s, cam, o);
        RenderOutput b = render(back, cam, o);
        CHECK(a.color.data == b.color.data);
        CHECK(a.depth.data == b.depth.data);
    }

    // Empty scene survives too.
    SparseScene empty;
    empty.bounds = {{0, 0, 0}, 2.0};
    save_checkpoint(empty, dir / "e.svrx");
    CHECK(load_checkpoint(dir / "e.svrx").voxel_count() == 0);
}

TEST_CASE("checkpoint rejects corruption") {
    TempDir dir;
    std::mt19937_64 rng(5);
    SparseScene s = random_scene(rng, 1);
    save_checkpoint(s, dir / "s.svrx");

    auto corrupt = [&](size_t offset, char delta, const std::string& out) {
        std::string bytes = read_text_file(dir / "s.svrx");
        bytes[offset] = char(bytes[offset] + delta);
        write_text_file(out, bytes);
    };
    corrupt(0, 1, dir / "magic.svrx");
    CHECK_THROWS_WITH_AS(load_checkpoint(dir / "magic.svrx"), doctest::Contains("magic"),
                         std::runtime_error);
    size_t mid = read_text_file(dir / "s.svrx").size() / 2;
    corrupt(mid, 1, dir / "flip.svrx");
    CHECK_THROWS_WITH_AS(load_checkpoint(dir / "flip.svrx"), doctest::Contains("checksum"),
                         std::runtime_error);
    write_text_file(dir / "tiny.svrx", "SVRX");
    CHECK_THROWS_AS(load_checkpoint(dir / "tiny.svrx"), std::runtime_error);
    CHECK_THROWS_AS(load_checkpoint(dir / "absent.svrx"), std::runtime_error);
}

TEST_CASE("obj output") {
    TempDir dir;
    TriangleMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 0.5, -0.25}};
    m.triangles = {{0, 1, 2}};
    save_obj(m, dir / "m.obj");
    CHECK(read_text_file(dir / "m.obj") ==
          "v 0 0 0\nv 1 0 0\nv 0 0.5 -0.25\nf 1 2 3\n");
}
