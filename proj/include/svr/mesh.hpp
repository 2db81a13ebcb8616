#pragma once

// Mesh extraction: level uniformization, sparse-voxel Marching Cubes with
// exact grid-edge vertex dedup, and TSDF fusion from posed depth maps onto the
// scene's grid points.

#include <array>
#include <cstdint>
#include <vector>

#include "svr/camera.hpp"
#include "svr/image.hpp"
#include "svr/scene.hpp"

namespace svr {

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<uint32_t, 3>> triangles;
};

struct TsdfField {
    std::vector<float> sdf;     // one per pool grid point, clamped to +-trunc
    std::vector<float> weight;  // fusion weights, 0 = unobserved
};

// Marching-cubes lookup tables (see tools/gen_mc_tables.py). Corner ids are
// (x<<2)|(y<<1)|z; configs set bit c when corner c is below the iso value.
extern const std::array<std::array<int, 2>, 12> kMcEdgeCorners;
extern const std::array<uint16_t, 256> kMcEdgeTable;
extern const std::array<std::array<int8_t, 16>, 256> kMcTriTable;

// Subdivides every voxel to the finest level present, preserving the density
// field exactly. Refuses when the projected count exceeds max_voxels.
SparseScene uniformize_levels(const SparseScene& scene, size_t max_voxels = size_t(1) << 24);

// TSDF fusion of depth maps onto the scene's unique grid points. Depth maps
// hold z-depth (camera-frame z of the surface); no-hit sentinel depths fuse as
// observed free space (+trunc).
TsdfField tsdf_fuse(const SparseScene& scene, const std::vector<Camera>& cams,
                    const std::vector<Image>& depths, double trunc);

// Classic 256-case Marching Cubes over a uniform-level scene. `point_values`
// is one value per pool grid point (activated density, or TSDF); cells with
// any invalid corner (when point_valid is given) are skipped. Triangles come
// out in (voxel octpath, case fan) order; vertices are not yet deduplicated.
TriangleMesh marching_cubes(const SparseScene& scene, const std::vector<double>& point_values,
                            double iso, const std::vector<uint8_t>* point_valid = nullptr);

// Merges vertices by exact bitwise position identity (shared grid edges
// produce identical interpolations by construction) and drops degenerate
// triangles.
TriangleMesh dedup_vertices(const TriangleMesh& mesh);

// World position of each pool grid point.
std::vector<Vec3> pool_positions(const SparseScene& scene);

}  // namespace svr
