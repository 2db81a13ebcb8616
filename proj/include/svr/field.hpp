#pragma once

// Per-voxel field math: density activation, trilinear interpolation, ray-voxel
// intersection, voxel alpha with analytic backward, voxel normal, and
// per-voxel depth with closed-form partials for K <= 3.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "svr/geom.hpp"

namespace svr {

// Raw (unactivated) corner densities, indexed V[(i<<2)|(j<<1)|k].
using CornerDensities = std::array<double, 8>;

inline constexpr double kExplinKnee = 1.1;

// Exponential-linear activation: identity above 1.1, exponential below,
// C1-continuous at the knee.
inline double explin(double x) {
    if (x > kExplinKnee) return x;
    return std::exp(x / kExplinKnee - 1.0 + std::log(kExplinKnee));
}

inline double explin_deriv(double x) {
    if (x > kExplinKnee) return 1.0;
    return explin(x) / kExplinKnee;
}

inline std::array<double, 8> trilinear_weights(const Vec3& q) {
    double wx[2] = {1.0 - q.x, q.x};
    double wy[2] = {1.0 - q.y, q.y};
    double wz[2] = {1.0 - q.z, q.z};
    std::array<double, 8> w;
    for (int c = 0; c < 8; ++c) w[c] = wx[(c >> 2) & 1] * wy[(c >> 1) & 1] * wz[c & 1];
    return w;
}

inline double trilinear(const CornerDensities& V, const Vec3& q) {
    auto w = trilinear_weights(q);
    double s = 0.0;
    for (int c = 0; c < 8; ++c) s += w[c] * V[c];
    return s;
}

struct RaySegment {
    double a = 0.0;  // entry distance, ray-parameter units
    double b = 0.0;  // exit distance
    bool valid = false;
};

// Slab test. Zero direction components produce IEEE infinities and fall out
// correctly of the min/max arithmetic. A ray starting inside is invalid
// (a <= 0).
inline RaySegment ray_aabb(const Vec3& center, double size, const Ray& ray) {
    double a = -std::numeric_limits<double>::infinity();
    double b = std::numeric_limits<double>::infinity();
    for (int ax = 0; ax < 3; ++ax) {
        double lo = center[ax] - 0.5 * size, hi = center[ax] + 0.5 * size;
        double c0 = (lo - ray.origin[ax]) / ray.dir[ax];
        double c1 = (hi - ray.origin[ax]) / ray.dir[ax];
        a = std::max(a, std::min(c0, c1));
        b = std::min(b, std::max(c0, c1));
    }
    return {a, b, (a <= b) && (a > 0.0)};
}

inline constexpr int kMaxSamplesPerVoxel = 8;

// Per-call scratch for the alpha backward pass.
struct AlphaCache {
    int K = 1;
    double l = 0.0;                   // segment length in world units
    double alpha = 0.0;               // total voxel alpha
    std::array<Vec3, kMaxSamplesPerVoxel> q;            // local coords of the samples
    std::array<double, kMaxSamplesPerVoxel> v;          // raw interpolated densities
    std::array<double, kMaxSamplesPerVoxel> t;          // ray-parameter sample depths
    std::array<double, kMaxSamplesPerVoxel> samp_alpha; // compose to alpha
};

// Local voxel coordinate of a world point.
inline Vec3 local_coord(const Vec3& center, double size, const Vec3& p) {
    return (p - (center - Vec3{0.5 * size, 0.5 * size, 0.5 * size})) / size;
}

// Quadrature alpha over K evenly spaced samples in the segment. The
// per-sample alphas split the same exponent so they compose exactly to the
// voxel alpha.
inline double voxel_alpha(const CornerDensities& V, const Vec3& center, double size,
                          const RaySegment& seg, const Ray& ray, int K, AlphaCache* cache) {
    if (K < 1 || K > kMaxSamplesPerVoxel)
        throw std::invalid_argument("sample count K out of [1,8]");
    double l = (seg.b - seg.a) * norm(ray.dir);
    double sum = 0.0;
    AlphaCache c;
    c.K = K;
    c.l = l;
    for (int k = 0; k < K; ++k) {
        double t = seg.a + (k + 0.5) / K * (seg.b - seg.a);
        Vec3 q = local_coord(center, size, ray.origin + t * ray.dir);
        double v = trilinear(V, q);
        double act = explin(v);
        sum += act;
        c.q[k] = q;
        c.v[k] = v;
        c.t[k] = t;
        c.samp_alpha[k] = 1.0 - std::exp(-(l / K) * act);
    }
    double alpha = 1.0 - std::exp(-(l / K) * sum);
    c.alpha = alpha;
    if (cache) *cache = c;
    return alpha;
}

// Gradient of alpha over the 8 raw corner densities.
inline CornerDensities voxel_alpha_backward(const AlphaCache& c, double dL_dalpha) {
    CornerDensities g{};
    double outer = dL_dalpha * (1.0 - c.alpha) * (c.l / c.K);
    for (int k = 0; k < c.K; ++k) {
        double d = outer * explin_deriv(c.v[k]);
        auto w = trilinear_weights(c.q[k]);
        for (int i = 0; i < 8; ++i) g[i] += d * w[i];
    }
    return g;
}

// Unnormalized density gradient at the voxel center: per-axis sums of face
// differences scaled by 0.25.
inline Vec3 density_gradient(const CornerDensities& V) {
    Vec3 g{};
    for (int c = 0; c < 8; ++c) {
        double si = ((c >> 2) & 1) ? 1.0 : -1.0;
        double sj = ((c >> 1) & 1) ? 1.0 : -1.0;
        double sk = (c & 1) ? 1.0 : -1.0;
        g += 0.25 * V[c] * Vec3{si, sj, sk};
    }
    return g;
}

struct VoxelNormal {
    Vec3 n;                 // unit normal, or zero when degenerate
    Vec3 raw;               // unnormalized gradient
    bool degenerate = false;
};

inline VoxelNormal voxel_normal(const CornerDensities& V) {
    Vec3 g = density_gradient(V);
    double len = norm(g);
    if (len == 0.0) return {{}, g, true};
    return {g / len, g, false};
}

// Chain an upstream gradient on the unit normal back to the 8 densities:
// normalize Jacobian (I - n n^T)/|g| composed with d(raw)/dV = 0.25*(±1,±1,±1).
inline CornerDensities voxel_normal_backward(const VoxelNormal& vn, const Vec3& dL_dn) {
    CornerDensities g{};
    if (vn.degenerate) return g;
    double len = norm(vn.raw);
    Vec3 gn = (dL_dn - vn.n * dot(dL_dn, vn.n)) / len;  // dL/d(raw)
    for (int c = 0; c < 8; ++c) {
        double si = ((c >> 2) & 1) ? 1.0 : -1.0;
        double sj = ((c >> 1) & 1) ? 1.0 : -1.0;
        double sk = (c & 1) ? 1.0 : -1.0;
        g[c] = 0.25 * (gn.x * si + gn.y * sj + gn.z * sk);
    }
    return g;
}

// Composited depth of the K samples inside one voxel.
inline double voxel_depth(const std::array<double, kMaxSamplesPerVoxel>& alpha,
                          const std::array<double, kMaxSamplesPerVoxel>& t, int K) {
    double d = 0.0, T = 1.0;
    for (int k = 0; k < K; ++k) {
        d += T * alpha[k] * t[k];
        T *= 1.0 - alpha[k];
    }
    return d;
}

// Closed-form partials dd/dalpha_k for K in {1,2,3}.
inline std::array<double, 3> voxel_depth_backward(
    const std::array<double, kMaxSamplesPerVoxel>& alpha,
    const std::array<double, kMaxSamplesPerVoxel>& t, int K) {
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const double t1 = t[0], t2 = t[1], t3 = t[2];
    switch (K) {
        case 1:
            return {t1, 0.0, 0.0};
        case 2:
            return {t1 - a2 * t2, t2 - a1 * t2, 0.0};
        case 3:
            return {t1 + a2 * a3 * t3 - a2 * t2 - a3 * t3,
                    t2 + a1 * a3 * t3 - a1 * t2 - a3 * t3,
                    t3 + a1 * a2 * t3 - a1 * t3 - a2 * t3};
        default:
            throw std::invalid_argument("depth sample count K must be in {1,2,3}");
    }
}

}  // namespace svr
