#include "svr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svr/io.hpp"
#include "svr/raster.hpp"

namespace svr {

namespace {

double sdf_sphere(const Vec3& p, const Vec3& c, double r) { return norm(p - c) - r; }

double sdf_box(const Vec3& p, const Vec3& c, const Vec3& half) {
    Vec3 q{std::abs(p.x - c.x) - half.x, std::abs(p.y - c.y) - half.y,
           std::abs(p.z - c.z) - half.z};
    Vec3 qp = cwise_max(q, Vec3{0, 0, 0});
    return norm(qp) + std::min(0.0, std::max({q.x, q.y, q.z}));
}

Vec3 palette(const Vec3& p) {
    return {0.5 + 0.45 * std::sin(6.0 * p.x + 1.0), 0.5 + 0.45 * std::sin(6.0 * p.y + 2.0),
            0.5 + 0.45 * std::sin(6.0 * p.z + 3.0)};
}

}  // namespace

SynthShape parse_shape(const std::string& name) {
    if (name == "sphere") return SynthShape::Sphere;
    if (name == "cube") return SynthShape::Cube;
    if (name == "boxes") return SynthShape::Boxes;
    if (name == "mixed") return SynthShape::Mixed;
    throw std::invalid_argument("unknown shape \"" + name +
                                "\" (expected sphere|cube|boxes|mixed)");
}

double synth_sdf(SynthShape shape, const Vec3& p) {
    switch (shape) {
        case SynthShape::Sphere:
            return sdf_sphere(p, {0, 0, 0}, 0.3);
        case SynthShape::Cube:
            return sdf_box(p, {0, 0, 0}, {0.25, 0.25, 0.25});
        case SynthShape::Boxes:
            return std::min({sdf_box(p, {-0.18, -0.1, 0}, {0.12, 0.12, 0.12}),
                             sdf_box(p, {0.18, -0.08, 0.05}, {0.1, 0.14, 0.1}),
                             sdf_box(p, {0.0, 0.18, -0.08}, {0.14, 0.08, 0.12})});
        case SynthShape::Mixed:
            return std::min(sdf_sphere(p, {-0.16, 0.0, 0.0}, 0.2),
                            sdf_box(p, {0.17, 0.0, 0.0}, {0.13, 0.13, 0.13}));
    }
    throw std::invalid_argument("unknown shape");
}

SparseScene synth_scene(SynthShape shape, int level) {
    check_level(level);
    SparseScene scene;
    scene.bounds = {{0, 0, 0}, 1.0};
    double h = std::ldexp(1.0, -level);
    uint32_t n = uint32_t(1) << level;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t k = 0; k < n; ++k) {
                VoxelIndex v{i, j, k, level};
                auto [center, size] = voxel_geometry(scene.bounds, v);
                // Keep a band around the surface; deep interior is occluded
                // anyway and deep exterior is empty.
                if (std::abs(synth_sdf(shape, center)) < 3.0 * h)
                    scene.voxels.push_back(to_octpath(v));
            }
    rebuild_corner_indexing(scene, {});
    // Grid-point densities: opaque inside, empty outside, two-voxel ramp.
    auto pos = pool_positions(scene);
    for (size_t pi = 0; pi < pos.size(); ++pi) {
        double s = synth_sdf(shape, pos[pi]);
        scene.density[pi] = float(120.0 * std::clamp(-s / (2.0 * h), -1.0, 1.0));
    }
    scene.sh_degree = 3;
    scene.sh.assign(scene.voxel_count() * scene.sh_stride(), 0.0f);
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
        Vec3 c = palette(scene.geometry_of(vi).first);
        for (int ch = 0; ch < 3; ++ch)
            scene.sh[vi * scene.sh_stride() + ch] = float(sh_dc_for_intensity(c[ch]));
    }
    return scene;
}

std::vector<Camera> ring_cameras(int n_views, int width, int height, double distance,
                                 double fov_x_deg) {
    if (n_views < 1) throw std::invalid_argument("ring_cameras needs at least one view");
    std::vector<Camera> cams;
    for (int i = 0; i < n_views; ++i) {
        double theta = 2.0 * M_PI * i / n_views + 0.1;
        double elev = (i % 2 == 0 ? 0.35 : -0.3) + 0.05 * (i % 3);
        Vec3 pos = distance * Vec3{std::cos(elev) * std::cos(theta), std::sin(elev),
                                   std::cos(elev) * std::sin(theta)};
        Vec3 fwd = normalized(-pos);
        Vec3 right = normalized(cross(fwd, Vec3{0, 1, 0}));
        Vec3 down = cross(fwd, right);
        Camera cam;
        cam.width = width;
        cam.height = height;
        cam.fx = 0.5 * width / std::tan(0.5 * fov_x_deg * M_PI / 180.0);
        cam.fy = cam.fx;
        cam.cx = 0.5 * width;
        cam.cy = 0.5 * height;
        for (int r = 0; r < 3; ++r) {
            cam.rot(r, 0) = right[r];
            cam.rot(r, 1) = down[r];
            cam.rot(r, 2) = fwd[r];
        }
        cam.pos = pos;
        check_rotation(cam.rot);
        cams.push_back(cam);
    }
    return cams;
}

Dataset synth_dataset(SynthShape shape, int n_views, int resolution, const std::string& out_dir,
                      int level) {
    SparseScene scene = synth_scene(shape, level);
    auto cams = ring_cameras(n_views, resolution, resolution);

    RenderOptions opts;
    opts.K = 8;
    opts.t_threshold = 1e-4;
    opts.background = {0, 0, 0};

    Dataset data;
    std::vector<CameraFrame> frames;
    for (size_t i = 0; i < cams.size(); ++i) {
        RenderOutput out = render_oracle(scene, cams[i], opts);
        char name[32];
        std::snprintf(name, sizeof name, "frame_%03zu", i);
        std::string png = std::string(name) + ".png";
        save_png(out.color, out_dir + "/" + png);
        save_depth(out.depth, out_dir + "/" + std::string(name) + ".depth");
        frames.push_back({png, cams[i]});
        // The dataset carries what training will actually see: the 8-bit
        // quantized image.
        DatasetFrame f;
        f.name = png;
        f.cam = cams[i];
        f.image = load_png(out_dir + "/" + png);
        data.frames.push_back(std::move(f));
    }
    save_cameras(frames, out_dir + "/cameras.json");
    return data;
}

}  // namespace svr
