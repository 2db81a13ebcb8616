#include "svr/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "svr/optim.hpp"

namespace svr {

SparseScene uniformize_levels(const SparseScene& scene, size_t max_voxels) {
    if (scene.voxel_count() == 0) return scene;
    int target = 1;
    for (const OctPath& p : scene.voxels) target = std::max(target, p.level);
    size_t projected = 0;
    for (const OctPath& p : scene.voxels) {
        projected += size_t(1) << (3 * (target - p.level));
        if (projected > max_voxels)
            throw std::length_error("uniformize_levels: projected voxel count exceeds the cap");
    }
    SparseScene out = scene;
    for (;;) {
        std::vector<uint32_t> below;
        for (size_t vi = 0; vi < out.voxel_count(); ++vi)
            if (out.voxels[vi].level < target) below.push_back(uint32_t(vi));
        if (below.empty()) return out;
        out = subdivide_voxels(out, below);
    }
}

std::vector<Vec3> pool_positions(const SparseScene& scene) {
    std::vector<Vec3> pos(scene.pool_count());
    std::vector<bool> have(scene.pool_count(), false);
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        for (int c = 0; c < 8; ++c) {
            uint32_t pi = scene.corner_index[vi][c];
            if (!have[pi]) {
                pos[pi] = corner_position(scene.bounds, keys[c]);
                have[pi] = true;
            }
        }
    }
    return pos;
}

TsdfField tsdf_fuse(const SparseScene& scene, const std::vector<Camera>& cams,
                    const std::vector<Image>& depths, double trunc) {
    if (trunc <= 0) throw std::invalid_argument("tsdf_fuse: truncation must be positive");
    if (cams.size() != depths.size())
        throw std::invalid_argument("tsdf_fuse: camera/depth-map counts differ");
    auto pos = pool_positions(scene);
    TsdfField f;
    f.sdf.assign(scene.pool_count(), 0.0f);
    f.weight.assign(scene.pool_count(), 0.0f);
    for (size_t pi = 0; pi < pos.size(); ++pi) {
        double acc = 0.0, w = 0.0;
        for (size_t ci = 0; ci < cams.size(); ++ci) {
            const Camera& cam = cams[ci];
            Vec3 uvz = cam.project(pos[pi]);
            if (uvz.z <= 0 || uvz.x < 0 || uvz.x >= cam.width || uvz.y < 0 ||
                uvz.y >= cam.height)
                continue;
            double d = depths[ci].at(int(uvz.x), int(uvz.y)) - uvz.z;
            if (d <= -trunc) continue;  // behind the surface beyond truncation
            acc += std::clamp(d, -trunc, trunc);
            w += 1.0;
        }
        if (w > 0) {
            f.sdf[pi] = float(acc / w);
            f.weight[pi] = float(w);
        }
    }
    return f;
}

TriangleMesh marching_cubes(const SparseScene& scene, const std::vector<double>& point_values,
                            double iso, const std::vector<uint8_t>* point_valid) {
    if (point_values.size() != scene.pool_count())
        throw std::invalid_argument("marching_cubes: value count does not match the pool");
    if (point_valid && point_valid->size() != scene.pool_count())
        throw std::invalid_argument("marching_cubes: valid-mask size does not match the pool");
    for (size_t vi = 1; vi < scene.voxel_count(); ++vi)
        if (scene.voxels[vi].level != scene.voxels[0].level)
            throw std::invalid_argument("marching_cubes: scene is not uniform-level");

    std::vector<size_t> order(scene.voxel_count());
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return scene.voxels[a].code < scene.voxels[b].code;
    });

    TriangleMesh mesh;
    for (size_t vi : order) {
        const auto& ci = scene.corner_index[vi];
        bool skip = false;
        if (point_valid)
            for (int c = 0; c < 8 && !skip; ++c) skip = !(*point_valid)[ci[c]];
        if (skip) continue;
        int config = 0;
        for (int c = 0; c < 8; ++c)
            if (point_values[ci[c]] < iso) config |= 1 << c;
        const auto& tris = kMcTriTable[config];
        if (tris[0] < 0) continue;

        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        // Vertex per crossed edge, interpolated from the lower-keyed endpoint
        // so adjacent cells produce bit-identical positions.
        std::array<uint32_t, 12> vert{};
        for (int e = 0; e < 12; ++e) {
            if (!(kMcEdgeTable[config] & (1 << e))) continue;
            int a = kMcEdgeCorners[e][0], b = kMcEdgeCorners[e][1];
            if (keys[a].packed() > keys[b].packed()) std::swap(a, b);
            double va = point_values[ci[a]], vb = point_values[ci[b]];
            double t = (iso - va) / (vb - va);
            Vec3 pa = corner_position(scene.bounds, keys[a]);
            Vec3 pb = corner_position(scene.bounds, keys[b]);
            vert[e] = uint32_t(mesh.vertices.size());
            mesh.vertices.push_back(pa + t * (pb - pa));
        }
        for (int i = 0; i < 16 && tris[i] >= 0; i += 3)
            mesh.triangles.push_back({vert[tris[i]], vert[tris[i + 1]], vert[tris[i + 2]]});
    }
    return mesh;
}

TriangleMesh dedup_vertices(const TriangleMesh& mesh) {
    struct Key {
        uint64_t x, y, z;
        bool operator==(const Key&) const = default;
    };
    struct Hash {
        size_t operator()(const Key& k) const {
            uint64_t h = k.x * 0x9e3779b97f4a7c15ull;
            h ^= k.y + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= k.z + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return size_t(h);
        }
    };
    std::unordered_map<Key, uint32_t, Hash> index;
    index.reserve(mesh.vertices.size());
    TriangleMesh out;
    std::vector<uint32_t> remap(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& v = mesh.vertices[i];
        Key k{std::bit_cast<uint64_t>(v.x), std::bit_cast<uint64_t>(v.y),
              std::bit_cast<uint64_t>(v.z)};
        auto [it, inserted] = index.try_emplace(k, uint32_t(out.vertices.size()));
        if (inserted) out.vertices.push_back(v);
        remap[i] = it->second;
    }
    for (const auto& t : mesh.triangles) {
        std::array<uint32_t, 3> r{remap[t[0]], remap[t[1]], remap[t[2]]};
        if (r[0] == r[1] || r[1] == r[2] || r[0] == r[2]) continue;
        out.triangles.push_back(r);
    }
    return out;
}

}  // namespace svr
