#pragma once

// Voxel addressing under the Octree layout: left-aligned multi-level Morton
// codes, voxel geometry, ray sign bits, direction-dependent order, and
// subdivision/corner-key arithmetic. Only leaf voxels exist; there is no tree
// data structure.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "svr/geom.hpp"

namespace svr {

inline constexpr int kMaxLevel = 16;
inline constexpr uint64_t kCodeMask = (uint64_t(1) << (3 * kMaxLevel)) - 1;

// 0b001 repeated for each of the 16 three-bit groups; multiplying by a 3-bit
// sign pattern replicates it across all groups.
inline constexpr uint64_t kGroupOnes = 0x249249249249ull;

// Left-aligned 48-bit multi-level Morton code. The most significant 3-bit
// group is level 1; groups below `level` are zero.
struct OctPath {
    uint64_t code = 0;
    int level = 1;

    friend bool operator==(const OctPath&, const OctPath&) = default;
};

struct VoxelIndex {
    uint32_t i = 0, j = 0, k = 0;
    int level = 1;

    friend bool operator==(const VoxelIndex&, const VoxelIndex&) = default;
};

struct SceneBounds {
    Vec3 center;
    double size = 1.0;  // edge length of the root cube
};

// bit2 = x-negative, bit1 = y-negative, bit0 = z-negative
using SignBits = uint32_t;

inline void check_level(int level) {
    if (level < 1 || level > kMaxLevel) throw std::invalid_argument("octree level out of [1,16]");
}

inline OctPath to_octpath(const VoxelIndex& v) {
    check_level(v.level);
    uint32_t lim = uint32_t(1) << v.level;
    if (v.i >= lim || v.j >= lim || v.k >= lim)
        throw std::invalid_argument("voxel index component out of range for level");
    uint64_t code = 0;
    uint32_t i = v.i, j = v.j, k = v.k;
    for (int n = 0; n < v.level; ++n) {
        uint64_t bits = 4 * (i & 1) + 2 * (j & 1) + (k & 1);
        code |= bits << (3 * n);
        i >>= 1;
        j >>= 1;
        k >>= 1;
    }
    return {code << (3 * (kMaxLevel - v.level)), v.level};
}

inline VoxelIndex to_voxel_index(const OctPath& p) {
    check_level(p.level);
    int shift = 3 * (kMaxLevel - p.level);
    if (shift < 64 && (p.code & ((uint64_t(1) << shift) - 1)) != 0)
        throw std::invalid_argument("octpath has nonzero bits below its level");
    uint64_t code = p.code >> shift;
    VoxelIndex v{0, 0, 0, p.level};
    for (int n = 0; n < p.level; ++n) {
        v.i |= uint32_t((code & 0b100) >> 2) << n;
        v.j |= uint32_t((code & 0b010) >> 1) << n;
        v.k |= uint32_t(code & 0b001) << n;
        code >>= 3;
    }
    return v;
}

// Returns the geometric center and edge length of the voxel's cell.
inline std::pair<Vec3, double> voxel_geometry(const SceneBounds& b, const VoxelIndex& v) {
    double size = std::ldexp(b.size, -v.level);
    Vec3 lo = b.center - Vec3{0.5 * b.size, 0.5 * b.size, 0.5 * b.size};
    Vec3 center = lo + Vec3{size * (v.i + 0.5), size * (v.j + 0.5), size * (v.k + 0.5)};
    return {center, size};
}

// Zero components count as non-negative.
inline SignBits ray_sign_bits(const Vec3& dir) {
    return 4u * (dir.x < 0.0) + 2u * (dir.y < 0.0) + 1u * (dir.z < 0.0);
}

// XOR each 3-bit group with the sign pattern; equivalent to the per-group
// permutation-table remap.
inline uint64_t dir_dep_order(const OctPath& p, SignBits s) {
    return p.code ^ (uint64_t(s) * kGroupOnes);
}

inline std::array<OctPath, 8> child_paths(const OctPath& p) {
    check_level(p.level);
    if (p.level >= kMaxLevel) throw std::invalid_argument("cannot subdivide a level-16 voxel");
    std::array<OctPath, 8> out;
    int shift = 3 * (kMaxLevel - p.level - 1);
    for (uint64_t c = 0; c < 8; ++c) out[c] = {p.code | (c << shift), p.level + 1};
    return out;
}

inline bool is_ancestor(const OctPath& a, const OctPath& b) {
    if (a.level >= b.level) return false;
    int shift = 3 * (kMaxLevel - a.level);
    return (a.code >> shift) == (b.code >> shift);
}

// Grid-point key of a voxel corner, in the level-16 lattice [0, 2^16]^3.
// Equal keys identify coincident world positions across voxels and levels.
struct CornerKey {
    uint32_t x = 0, y = 0, z = 0;

    friend bool operator==(const CornerKey&, const CornerKey&) = default;

    // Components fit in 17 bits each.
    uint64_t packed() const { return (uint64_t(x) << 34) | (uint64_t(y) << 17) | uint64_t(z); }
};

// Corner c is indexed (di<<2)|(dj<<1)|dk, matching the trilinear corner order.
inline std::array<CornerKey, 8> corner_keys(const VoxelIndex& v) {
    check_level(v.level);
    uint32_t step = uint32_t(1) << (kMaxLevel - v.level);
    std::array<CornerKey, 8> out;
    for (uint32_t c = 0; c < 8; ++c) {
        uint32_t di = (c >> 2) & 1, dj = (c >> 1) & 1, dk = c & 1;
        out[c] = {(v.i + di) * step, (v.j + dj) * step, (v.k + dk) * step};
    }
    return out;
}

// World position of a lattice key.
inline Vec3 corner_position(const SceneBounds& b, const CornerKey& key) {
    double cell = b.size / double(uint64_t(1) << kMaxLevel);
    Vec3 lo = b.center - Vec3{0.5 * b.size, 0.5 * b.size, 0.5 * b.size};
    return lo + Vec3{cell * key.x, cell * key.y, cell * key.z};
}

}  // namespace svr
