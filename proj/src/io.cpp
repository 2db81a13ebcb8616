#include "svr/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <png.h>
#include <zlib.h>

#include "json.hpp"

namespace svr {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("failed to decode PNG " + path);
    }
    png_init_io(png, fp.get());
    png_read_png(png, info,
                 PNG_TRANSFORM_STRIP_16 | PNG_TRANSFORM_STRIP_ALPHA | PNG_TRANSFORM_EXPAND |
                     PNG_TRANSFORM_GRAY_TO_RGB,
                 nullptr);
    int w = int(png_get_image_width(png, info));
    int h = int(png_get_image_height(png, info));
    png_bytepp rows = png_get_rows(png, info);
    size_t rowbytes = png_get_rowbytes(png, info);
    Image img(w, h, 3);
    if (rowbytes != size_t(w) * 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("unsupported PNG layout in " + path);
    }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = rows[y][x * 3 + c] / 255.0;
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const Image& img, const std::string& path) {
    if (img.channels != 3) throw std::invalid_argument("save_png expects a 3-channel image");
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    std::vector<png_byte> buf(size_t(img.width) * img.height * 3);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = buf.data() + size_t(y) * img.width * 3;
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                double v = std::clamp(img.at(x, y, c), 0.0, 1.0);
                rows[y][x * 3 + c] = png_byte(std::lround(v * 255.0));
            }
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to encode PNG " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
}

Image load_depth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[4];
    uint32_t w = 0, h = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&w), 4);
    in.read(reinterpret_cast<char*>(&h), 4);
    if (!in || std::memcmp(magic, "DPTH", 4) != 0)
        throw std::runtime_error("not a depth file: " + path);
    Image img(int(w), int(h), 1);
    std::vector<float> data(size_t(w) * h);
    in.read(reinterpret_cast<char*>(data.data()), std::streamsize(data.size() * 4));
    if (!in) throw std::runtime_error("truncated depth file: " + path);
    for (size_t i = 0; i < data.size(); ++i) img.data[i] = data[i];
    return img;
}

void save_depth(const Image& img, const std::string& path) {
    if (img.channels != 1) throw std::invalid_argument("save_depth expects a 1-channel image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    uint32_t w = uint32_t(img.width), h = uint32_t(img.height);
    out.write("DPTH", 4);
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    std::vector<float> data(img.data.begin(), img.data.end());
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size() * 4));
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<CameraFrame> load_cameras(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("frames") || !j.at("frames").is_array())
        throw std::runtime_error(path + ": expected an object with a \"frames\" array");
    std::vector<CameraFrame> frames;
    for (const json& f : j.at("frames")) {
        CameraFrame cf;
        try {
            cf.image = f.at("image").get<std::string>();
            cf.cam.width = f.at("width").get<int>();
            cf.cam.height = f.at("height").get<int>();
            cf.cam.fx = f.at("fx").get<double>();
            cf.cam.fy = f.at("fy").get<double>();
            cf.cam.cx = f.at("cx").get<double>();
            cf.cam.cy = f.at("cy").get<double>();
            const json& m = f.at("c2w");
            if (!m.is_array() || m.size() != 16)
                throw std::runtime_error("c2w must hold 16 values");
            std::array<double, 16> c2w;
            for (int i = 0; i < 16; ++i) c2w[i] = m[i].get<double>();
            for (int i = 12; i < 16; ++i)
                if (std::abs(c2w[i] - (i == 15 ? 1.0 : 0.0)) > 1e-9)
                    throw std::runtime_error("c2w last row must be (0,0,0,1)");
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) cf.cam.rot(r, c) = c2w[r * 4 + c];
            cf.cam.pos = {c2w[3], c2w[7], c2w[11]};
            check_rotation(cf.cam.rot);
            if (cf.cam.width <= 0 || cf.cam.height <= 0 || cf.cam.fx <= 0 || cf.cam.fy <= 0)
                throw std::runtime_error("non-positive camera dimensions or focal length");
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ", frame " + std::to_string(frames.size()) + ": " +
                                     e.what());
        }
        frames.push_back(std::move(cf));
    }
    return frames;
}

void save_cameras(const std::vector<CameraFrame>& frames, const std::string& path) {
    ordered_json j;
    j["frames"] = ordered_json::array();
    for (const CameraFrame& f : frames) {
        ordered_json e;
        e["image"] = f.image;
        e["width"] = f.cam.width;
        e["height"] = f.cam.height;
        e["fx"] = f.cam.fx;
        e["fy"] = f.cam.fy;
        e["cx"] = f.cam.cx;
        e["cy"] = f.cam.cy;
        std::array<double, 16> m{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m[r * 4 + c] = f.cam.rot(r, c);
        m[3] = f.cam.pos.x;
        m[7] = f.cam.pos.y;
        m[11] = f.cam.pos.z;
        m[15] = 1.0;
        e["c2w"] = m;
        j["frames"].push_back(std::move(e));
    }
    write_text_file(path, j.dump(2) + "\n");
}

Dataset load_dataset(const std::string& dir) {
    Dataset d;
    for (const CameraFrame& cf : load_cameras(dir + "/cameras.json")) {
        DatasetFrame f;
        f.name = cf.image;
        f.cam = cf.cam;
        f.image = load_png(dir + "/" + cf.image);
        if (f.image.width != cf.cam.width || f.image.height != cf.cam.height)
            throw std::runtime_error(cf.image + ": image size disagrees with cameras.json");
        d.frames.push_back(std::move(f));
    }
    return d;
}

namespace {

constexpr uint32_t kCheckpointVersion = 1;

template <typename T>
void append(std::vector<uint8_t>& buf, const T* data, size_t count) {
    const auto* p = reinterpret_cast<const uint8_t*>(data);
    buf.insert(buf.end(), p, p + count * sizeof(T));
}

template <typename T>
void take(const std::vector<uint8_t>& buf, size_t& off, T* data, size_t count) {
    size_t bytes = count * sizeof(T);
    if (off + bytes > buf.size()) throw std::runtime_error("truncated checkpoint");
    std::memcpy(data, buf.data() + off, bytes);
    off += bytes;
}

}  // namespace

void save_checkpoint(const SparseScene& scene, const std::string& path) {
    ordered_json header;
    header["voxel_count"] = scene.voxel_count();
    header["pool_count"] = scene.pool_count();
    header["sh_degree"] = scene.sh_degree;
    header["bounds_center"] = {scene.bounds.center.x, scene.bounds.center.y,
                               scene.bounds.center.z};
    header["bounds_size"] = scene.bounds.size;
    std::string htxt = header.dump();

    std::vector<uint8_t> buf;
    append(buf, "SVRX", 4);
    uint32_t version = kCheckpointVersion, hlen = uint32_t(htxt.size());
    append(buf, &version, 1);
    append(buf, &hlen, 1);
    append(buf, htxt.data(), htxt.size());
    for (const OctPath& p : scene.voxels) append(buf, &p.code, 1);
    for (const OctPath& p : scene.voxels) {
        uint8_t lv = uint8_t(p.level);
        append(buf, &lv, 1);
    }
    for (const auto& ci : scene.corner_index) append(buf, ci.data(), 8);
    append(buf, scene.density.data(), scene.density.size());
    append(buf, scene.sh.data(), scene.sh.size());
    uint32_t crc = uint32_t(crc32(0, buf.data(), uInt(buf.size())));
    append(buf, &crc, 1);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

SparseScene load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
    if (buf.size() < 16) throw std::runtime_error("truncated checkpoint " + path);
    if (std::memcmp(buf.data(), "SVRX", 4) != 0)
        throw std::runtime_error(path + ": not an SVRX checkpoint (bad magic)");
    uint32_t stored_crc;
    std::memcpy(&stored_crc, buf.data() + buf.size() - 4, 4);
    uint32_t crc = uint32_t(crc32(0, buf.data(), uInt(buf.size() - 4)));
    if (crc != stored_crc) throw std::runtime_error(path + ": checksum failure");

    size_t off = 4;
    uint32_t version = 0, hlen = 0;
    take(buf, off, &version, 1);
    take(buf, off, &hlen, 1);
    if (version != kCheckpointVersion)
        throw std::runtime_error(path + ": unsupported checkpoint version " +
                                 std::to_string(version));
    if (off + hlen > buf.size()) throw std::runtime_error("truncated checkpoint " + path);
    json header;
    try {
        header = json::parse(buf.begin() + std::ptrdiff_t(off),
                             buf.begin() + std::ptrdiff_t(off + hlen));
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": malformed checkpoint header: " + e.what());
    }
    off += hlen;

    SparseScene scene;
    size_t n = header.at("voxel_count").get<size_t>();
    size_t p = header.at("pool_count").get<size_t>();
    scene.sh_degree = header.at("sh_degree").get<int>();
    if (scene.sh_degree < 0 || scene.sh_degree > kMaxShDegree)
        throw std::runtime_error(path + ": invalid sh_degree");
    const json& bc = header.at("bounds_center");
    scene.bounds.center = {bc.at(0).get<double>(), bc.at(1).get<double>(),
                           bc.at(2).get<double>()};
    scene.bounds.size = header.at("bounds_size").get<double>();

    std::vector<uint64_t> codes(n);
    std::vector<uint8_t> levels(n);
    take(buf, off, codes.data(), n);
    take(buf, off, levels.data(), n);
    scene.voxels.resize(n);
    for (size_t i = 0; i < n; ++i) {
        scene.voxels[i] = {codes[i], int(levels[i])};
        to_voxel_index(scene.voxels[i]);  // validates level and code alignment
    }
    scene.corner_index.resize(n);
    for (size_t i = 0; i < n; ++i) take(buf, off, scene.corner_index[i].data(), 8);
    scene.density.resize(p);
    take(buf, off, scene.density.data(), p);
    scene.sh.resize(n * size_t(scene.sh_stride()));
    take(buf, off, scene.sh.data(), scene.sh.size());
    if (off != buf.size() - 4)
        throw std::runtime_error(path + ": checkpoint length disagrees with its header");

    // Structural validation: the stored indexing must match corner-key dedup.
    std::vector<bool> used(p, false);
    std::unordered_map<uint64_t, uint32_t> seen;
    for (size_t vi = 0; vi < n; ++vi) {
        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        for (int c = 0; c < 8; ++c) {
            uint32_t pi = scene.corner_index[vi][c];
            if (pi >= p) throw std::runtime_error(path + ": corner index out of range");
            used[pi] = true;
            auto [it, inserted] = seen.try_emplace(keys[c].packed(), pi);
            if (!inserted && it->second != pi)
                throw std::runtime_error(path + ": inconsistent corner indexing");
        }
    }
    for (size_t i = 0; i < p; ++i)
        if (!used[i]) throw std::runtime_error(path + ": orphaned density pool entry");
    return scene;
}

void save_obj(const TriangleMesh& mesh, const std::string& path) {
    std::ostringstream ss;
    char line[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
        ss << line;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(line, sizeof line, "f %u %u %u\n", t[0] + 1, t[1] + 1, t[2] + 1);
        ss << line;
    }
    write_text_file(path, ss.str());
}

}  // namespace svr
