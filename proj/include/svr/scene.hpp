#pragma once

// The full scene model: voxel Morton paths, shared corner-density pool,
// per-voxel SH coefficients, and octree bounds. Voxels are stored in
// arbitrary order; there is no tree structure.

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "svr/field.hpp"
#include "svr/octree.hpp"
#include "svr/sh.hpp"

namespace svr {

inline constexpr uint32_t kMaxVoxelCount = uint32_t(1) << 29;

struct SparseScene {
    SceneBounds bounds;
    std::vector<OctPath> voxels;
    // Per-voxel indices into the density pool, corner order (i<<2)|(j<<1)|k.
    std::vector<std::array<uint32_t, 8>> corner_index;
    std::vector<float> density;  // raw densities, one per unique grid point
    int sh_degree = 3;
    std::vector<float> sh;  // voxel-major, then coeff, then channel

    size_t voxel_count() const { return voxels.size(); }
    size_t pool_count() const { return density.size(); }
    int sh_stride() const { return 3 * sh_coeff_count(sh_degree); }

    const float* sh_of(size_t vi) const { return sh.data() + vi * sh_stride(); }
    float* sh_of(size_t vi) { return sh.data() + vi * sh_stride(); }

    CornerDensities corners_of(size_t vi) const {
        CornerDensities V;
        for (int c = 0; c < 8; ++c) V[c] = density[corner_index[vi][c]];
        return V;
    }

    std::pair<Vec3, double> geometry_of(size_t vi) const {
        return voxel_geometry(bounds, to_voxel_index(voxels[vi]));
    }
};

// Rebuilds corner_index (and optionally carries densities over by grid-point
// key) after the voxel set changed. `key_density` supplies the density for a
// key; keys it misses get `fill`.
void rebuild_corner_indexing(SparseScene& scene,
                             const std::unordered_map<uint64_t, float>& key_density,
                             float fill = 0.0f);

// Maps each unique grid-point key to its pool index, in the scene's current
// corner_index order.
std::unordered_map<uint64_t, uint32_t> corner_key_to_pool(const SparseScene& scene);

// Checks the leaf-only invariant: no pair (a, b) with is_ancestor(a, b).
bool has_ancestor_pair(const SparseScene& scene);

// Point lookup helper for tests and field evaluation.
class VoxelLocator {
public:
    explicit VoxelLocator(const SparseScene& scene);
    // Index of the voxel whose cell contains p, or nullopt.
    std::optional<size_t> locate(const Vec3& p) const;
    // Raw (unactivated) trilinear density at p; nullopt outside the sparse set.
    std::optional<double> raw_density(const Vec3& p) const;

private:
    const SparseScene& scene_;
    std::unordered_map<uint64_t, size_t> by_path_;
};

}  // namespace svr
