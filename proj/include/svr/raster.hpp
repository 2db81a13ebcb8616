#pragma once

// Tile-based sorting rasterizer: voxel projection, tile binning, key-value
// sorting by direction-dependent Morton order, front-to-back compositing with
// early termination, supersampled anti-aliasing, the full backward pass, and a
// brute-force oracle renderer.

#include <memory>
#include <optional>
#include <vector>

#include "svr/camera.hpp"
#include "svr/image.hpp"
#include "svr/scene.hpp"

namespace svr {

inline constexpr int kTileSize = 16;
inline constexpr int kTileIdBits = 16;
inline constexpr int kVoxelIdBits = 29;

struct RenderOptions {
    int K = 1;                    // samples per voxel (1 for NVS, 3 for mesh)
    double t_threshold = 1e-4;    // early termination transmittance
    double supersample = 1.5;     // render-scale factor, >= 1
    Vec3 background{0, 0, 0};
    double near_plane = 1e-6;
    double far_sentinel = 1e30;   // depth reported where nothing was hit
    bool record_stats = false;    // per-voxel max blending weight
    bool training = false;        // keep forward records for the backward pass
};

// key = tile_id (16 bits) | dir_dep_order (48 bits)
// value = sign_bits (3 bits) | voxel_id (29 bits)
struct SortEntry {
    uint64_t key;
    uint32_t value;

    SignBits sign_bits() const { return value >> kVoxelIdBits; }
    uint32_t voxel_id() const { return value & ((uint32_t(1) << kVoxelIdBits) - 1); }
    uint32_t tile_id() const { return uint32_t(key >> 48); }
};

// Scene parameter pools widened to double. The render kernels read these, so
// the gradient-check harness can rerun everything in double precision on
// perturbed copies.
struct PoolsD {
    std::vector<double> density;
    std::vector<double> sh;
};

PoolsD make_pools(const SparseScene& scene);

// View-dependent per-voxel data computed once per view.
struct PreVoxel {
    uint32_t vid = 0;
    Vec3 center;
    double size = 0;
    CornerDensities V;
    Vec3 color;
    VoxelNormal normal;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // conservative screen AABB, pixels
    int tx0 = 0, tx1 = -1, ty0 = 0, ty1 = -1;  // inclusive covered tile range
};

struct Contrib {
    uint32_t pre;  // index into ForwardRecords::pre
    double a, b;   // ray segment
};

// Everything the backward pass and the per-ray losses need from a forward run.
struct ForwardRecords {
    Camera ss_cam;  // supersampled camera actually rendered with
    RenderOptions opts;
    std::vector<PreVoxel> pre;
    std::vector<Contrib> contribs;      // grouped per supersampled pixel
    std::vector<uint32_t> pix_begin;    // per ss pixel, into contribs
    std::vector<uint32_t> pix_count;
    Image ss_color;   // supersampled raw channels (pre-downsampling)
    Image ss_depth;
    Image ss_tfin;
};

struct RenderOutput {
    Image color;          // W x H x 3
    Image depth;          // mean depth
    Image median_depth;   // not differentiable
    Image normal;
    Image transmittance;  // final per-pixel transmittance
    std::vector<double> max_blend_weight;  // per voxel, when record_stats
    std::shared_ptr<ForwardRecords> records;  // when training
};

struct SceneGradients {
    std::vector<double> density;   // aligned with the corner-density pool
    std::vector<double> sh;        // aligned with the SH pool
    std::vector<double> priority;  // per-voxel sum |alpha * dL/dalpha|
};

// Upstream gradients fed into render_backward. Image-level gradients are at
// target (downsampled) resolution; per-ray and per-contribution gradients are
// at the supersampled level. Empty buffers mean zero.
struct UpstreamGrads {
    Image d_color;
    Image d_depth;
    Image d_normal;
    std::vector<double> d_tfin_ss;   // per supersampled pixel
    std::vector<double> d_weight;    // per contrib, dL/d(T_i * alpha_i)
    std::vector<Vec3> d_voxel_color; // per contrib, extra dL/dc_i
};

// --- pipeline pieces (exposed for tests) ---

// Projects the 8 corners. Returns false when the voxel is culled (entirely
// behind the near plane); a voxel straddling the near plane gets the full
// image as its conservative AABB.
bool project_voxel(const Camera& cam, const Vec3& center, double size, PreVoxel& out,
                   double near_plane = 1e-6);

// Distinct sign-bit patterns over a tile, exact because ray directions are
// affine in pixel coordinates (evaluated at the tile's corner pixels).
std::vector<SignBits> tile_sign_patterns(const Camera& cam, int tx, int ty);

std::vector<SortEntry> build_sort_entries(const std::vector<PreVoxel>& pre, const Camera& cam,
                                          const SparseScene& scene);

void sort_entries(std::vector<SortEntry>& entries);

// --- main entry points ---

RenderOutput render(const SparseScene& scene, const Camera& cam, const RenderOptions& opts);
RenderOutput render_with_pools(const SparseScene& scene, const PoolsD& pools, const Camera& cam,
                               const RenderOptions& opts);

SceneGradients render_backward(const SparseScene& scene, const PoolsD& pools,
                               const ForwardRecords& records, const UpstreamGrads& grads);

// Brute-force per-ray reference: intersects every voxel, sorts hits by entry
// distance, composites identically. No tiles, no supersampling.
RenderOutput render_oracle(const SparseScene& scene, const Camera& cam,
                           const RenderOptions& opts);

}  // namespace svr
