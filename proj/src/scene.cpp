#include "svr/scene.hpp"

#include <cmath>
#include <stdexcept>

namespace svr {

void rebuild_corner_indexing(SparseScene& scene,
                             const std::unordered_map<uint64_t, float>& key_density, float fill) {
    scene.corner_index.assign(scene.voxels.size(), {});
    scene.density.clear();
    std::unordered_map<uint64_t, uint32_t> pool_of;
    pool_of.reserve(scene.voxels.size() * 2);
    for (size_t vi = 0; vi < scene.voxels.size(); ++vi) {
        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        for (int c = 0; c < 8; ++c) {
            uint64_t k = keys[c].packed();
            auto [it, inserted] = pool_of.try_emplace(k, uint32_t(scene.density.size()));
            if (inserted) {
                auto dit = key_density.find(k);
                scene.density.push_back(dit != key_density.end() ? dit->second : fill);
            }
            scene.corner_index[vi][c] = it->second;
        }
    }
}

std::unordered_map<uint64_t, uint32_t> corner_key_to_pool(const SparseScene& scene) {
    std::unordered_map<uint64_t, uint32_t> map;
    map.reserve(scene.pool_count() * 2);
    for (size_t vi = 0; vi < scene.voxels.size(); ++vi) {
        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        for (int c = 0; c < 8; ++c) map.emplace(keys[c].packed(), scene.corner_index[vi][c]);
    }
    return map;
}

static uint64_t path_key(const OctPath& p) { return p.code | (uint64_t(p.level) << 48); }

bool has_ancestor_pair(const SparseScene& scene) {
    std::unordered_map<uint64_t, int> prefixes;  // ancestor candidates at every level
    prefixes.reserve(scene.voxels.size() * 4);
    for (const auto& p : scene.voxels) prefixes.emplace(path_key(p), p.level);
    for (const auto& p : scene.voxels) {
        for (int lv = 1; lv < p.level; ++lv) {
            int shift = 3 * (kMaxLevel - lv);
            uint64_t anc = (p.code >> shift) << shift;
            if (prefixes.count(anc | (uint64_t(lv) << 48))) return true;
        }
    }
    return false;
}

VoxelLocator::VoxelLocator(const SparseScene& scene) : scene_(scene) {
    by_path_.reserve(scene.voxels.size() * 2);
    for (size_t vi = 0; vi < scene.voxels.size(); ++vi)
        by_path_.emplace(path_key(scene.voxels[vi]), vi);
}

std::optional<size_t> VoxelLocator::locate(const Vec3& p) const {
    const auto& b = scene_.bounds;
    Vec3 lo = b.center - Vec3{0.5 * b.size, 0.5 * b.size, 0.5 * b.size};
    Vec3 rel = (p - lo) / b.size;
    if (rel.x < 0 || rel.y < 0 || rel.z < 0 || rel.x >= 1 || rel.y >= 1 || rel.z >= 1)
        return std::nullopt;
    uint32_t fi = uint32_t(rel.x * (1u << kMaxLevel));
    uint32_t fj = uint32_t(rel.y * (1u << kMaxLevel));
    uint32_t fk = uint32_t(rel.z * (1u << kMaxLevel));
    uint32_t cap = (1u << kMaxLevel) - 1;
    fi = std::min(fi, cap);
    fj = std::min(fj, cap);
    fk = std::min(fk, cap);
    for (int lv = 1; lv <= kMaxLevel; ++lv) {
        int down = kMaxLevel - lv;
        OctPath cand = to_octpath({fi >> down, fj >> down, fk >> down, lv});
        auto it = by_path_.find(path_key(cand));
        if (it != by_path_.end()) return it->second;
    }
    return std::nullopt;
}

std::optional<double> VoxelLocator::raw_density(const Vec3& p) const {
    auto vi = locate(p);
    if (!vi) return std::nullopt;
    auto [center, size] = scene_.geometry_of(*vi);
    return trilinear(scene_.corners_of(*vi), local_coord(center, size, p));
}

}  // namespace svr
