#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "svr/field.hpp"

using namespace svr;

namespace {

CornerDensities random_corners(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    CornerDensities V;
    for (auto& v : V) v = u(rng);
    return V;
}

// High-resolution quadrature of alpha over the same segment, used as the
// integration oracle.
double alpha_quadrature(const CornerDensities& V, const Vec3& center, double size,
                        const RaySegment& seg, const Ray& ray, int n) {
    double l = (seg.b - seg.a) * norm(ray.dir);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double t = seg.a + (k + 0.5) / n * (seg.b - seg.a);
        Vec3 q = local_coord(center, size, ray.origin + t * ray.dir);
        sum += explin(trilinear(V, q));
    }
    return 1.0 - std::exp(-(l / n) * sum);
}

}  // namespace

TEST_CASE("explin values and derivative") {
    CHECK(explin(2.0) == 2.0);
    CHECK(explin(5.5) == 5.5);
    CHECK(explin(1.1) == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(explin(0.0) == doctest::Approx(1.1 / std::exp(1.0)).epsilon(1e-12));
    CHECK(explin_deriv(2.0) == 1.0);
    // C1 continuity at the knee.
    double h = 1e-7;
    CHECK(explin(1.1 + h) - explin(1.1 - h) == doctest::Approx(2 * h).epsilon(1e-4));
    CHECK(explin_deriv(1.1 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
    // Positive and monotone.
    double prev = explin(-30.0);
    CHECK(prev > 0.0);
    for (double x = -29.5; x < 5.0; x += 0.5) {
        double v = explin(x);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("trilinear interpolation") {
    std::mt19937_64 rng(1);
    CornerDensities constant;
    constant.fill(3.25);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 20; ++n) {
        Vec3 q{u(rng), u(rng), u(rng)};
        CHECK(trilinear(constant, q) == doctest::Approx(3.25).epsilon(1e-15));
        auto w = trilinear_weights(q);
        double s = 0.0;
        for (double wi : w) s += wi;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
    }
    CornerDensities V = random_corners(rng, -2, 2);
    CHECK(trilinear(V, {0, 0, 0}) == V[0]);
    CHECK(trilinear(V, {1, 1, 1}) == V[7]);
    double mean = 0.0;
    for (double v : V) mean += v / 8.0;
    CHECK(trilinear(V, {0.5, 0.5, 0.5}) == doctest::Approx(mean).epsilon(1e-14));
}

TEST_CASE("ray_aabb slab test") {
    RaySegment s = ray_aabb({0, 0, 0}, 2.0, {{-5, 0, 0}, {1, 0, 0}});
    CHECK(s.valid);
    CHECK(s.a == doctest::Approx(4.0));
    CHECK(s.b == doctest::Approx(6.0));
    CHECK_FALSE(ray_aabb({0, 0, 0}, 2.0, {{-5, 3, 0}, {1, 0, 0}}).valid);
    // Origin inside -> a <= 0 -> invalid.
    CHECK_FALSE(ray_aabb({0, 0, 0}, 2.0, {{0.2, 0.1, 0}, {1, 0, 0}}).valid);
    // Unnormalized direction scales the parameter.
    RaySegment s2 = ray_aabb({0, 0, 0}, 2.0, {{-5, 0, 0}, {2, 0, 0}});
    CHECK(s2.a == doctest::Approx(2.0));
    CHECK(s2.b == doctest::Approx(3.0));
}

TEST_CASE("voxel_alpha: near-zero at init density") {
    CornerDensities V;
    V.fill(-10.0);
    Ray ray{{-2, 0.01, -0.02}, {1, 0, 0}};
    RaySegment seg = ray_aabb({0, 0, 0}, 1.0, ray);
    double a = voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, 1, nullptr);
    double l = seg.b - seg.a;
    CHECK(a == doctest::Approx(1.0 - std::exp(-l * explin(-10.0))).epsilon(1e-12));
    CHECK(a < 1e-4);
}

TEST_CASE("voxel_alpha: constant density is exact for every K") {
    CornerDensities V;
    V.fill(2.5);  // above the knee, explin is identity
    Ray ray{{-3, 0.1, 0.2}, {2, 0.1, -0.05}};
    RaySegment seg = ray_aabb({0, 0, 0}, 1.0, ray);
    REQUIRE(seg.valid);
    double l = (seg.b - seg.a) * norm(ray.dir);
    double expect = 1.0 - std::exp(-2.5 * l);
    for (int K = 1; K <= 8; ++K)
        CHECK(voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, K, nullptr) ==
              doctest::Approx(expect).epsilon(1e-13));
    CHECK_THROWS_AS(voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, 0, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, 9, nullptr), std::invalid_argument);
}

TEST_CASE("voxel_alpha converges to the quadrature oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        CornerDensities V = random_corners(rng, -3, 4);
        Vec3 center{u(rng), u(rng), u(rng)};
        double size = 0.5 + 0.5 * std::abs(u(rng));
        Ray ray{center + Vec3{-3, 0.3 * u(rng), 0.3 * u(rng)}, {1, 0.2 * u(rng), 0.2 * u(rng)}};
        RaySegment seg = ray_aabb(center, size, ray);
        if (!seg.valid) continue;
        double oracle = alpha_quadrature(V, center, size, seg, ray, 8192);
        // The quadrature itself is converged: doubling the resolution moves
        // the value by < 1e-8.
        CHECK(alpha_quadrature(V, center, size, seg, ray, 4096) ==
              doctest::Approx(oracle).epsilon(1e-8));
        // Midpoint rule converges at second order.
        double e16 = std::abs(alpha_quadrature(V, center, size, seg, ray, 16) - oracle);
        double e64 = std::abs(alpha_quadrature(V, center, size, seg, ray, 64) - oracle);
        CHECK(e64 < 1e-4);
        if (e16 > 1e-9) CHECK(e64 < e16 / 4.0);
        double err1 = std::abs(voxel_alpha(V, center, size, seg, ray, 1, nullptr) - oracle);
        double err8 = std::abs(voxel_alpha(V, center, size, seg, ray, 8, nullptr) - oracle);
        CHECK(err8 <= err1 + 1e-12);
        CHECK(err8 < 2e-3);
    }
}

TEST_CASE("voxel_alpha bounds and monotonicity") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        CornerDensities V = random_corners(rng, -5, 5);
        Ray ray{{-4, 0.2, -0.3}, {1.5, 0.1, 0.05}};
        RaySegment seg = ray_aabb({0, 0, 0}, 1.0, ray);
        REQUIRE(seg.valid);
        double a = voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, 2, nullptr);
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
        for (int c = 0; c < 8; ++c) {
            CornerDensities W = V;
            W[c] += 0.5;
            CHECK(voxel_alpha(W, {0, 0, 0}, 1.0, seg, ray, 2, nullptr) >= a - 1e-15);
        }
    }
}

TEST_CASE("voxel_alpha_backward: symmetric case and finite differences") {
    // All-equal corners, midline ray, K=1: all 8 trilinear weights are 1/8.
    CornerDensities V;
    V.fill(0.7);
    Ray ray{{-2, 0, 0}, {1, 0, 0}};
    RaySegment seg = ray_aabb({0, 0, 0}, 1.0, ray);
    AlphaCache c;
    double a = voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, 1, &c);
    auto g = voxel_alpha_backward(c, 1.0);
    double l = seg.b - seg.a;
    for (int i = 0; i < 8; ++i)
        CHECK(g[i] == doctest::Approx((1 - a) * l * explin_deriv(0.7) / 8).epsilon(1e-12));

    // Opaque voxel: (1-alpha) kills the gradient.
    CornerDensities opaque;
    opaque.fill(500.0);
    AlphaCache co;
    voxel_alpha(opaque, {0, 0, 0}, 1.0, seg, ray, 1, &co);
    auto go = voxel_alpha_backward(co, 1.0);
    for (double gi : go) CHECK(std::abs(gi) < 1e-8);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        CornerDensities W = random_corners(rng, -3, 3);
        Ray r{{-3, 0.4 * u(rng), 0.4 * u(rng)}, {1, 0.3 * u(rng), 0.3 * u(rng)}};
        RaySegment sg = ray_aabb({0, 0, 0}, 1.0, r);
        if (!sg.valid) continue;
        int K = 1 + int(rng() % 3);
        AlphaCache cache;
        voxel_alpha(W, {0, 0, 0}, 1.0, sg, r, K, &cache);
        auto grad = voxel_alpha_backward(cache, 1.0);
        for (int i = 0; i < 8; ++i) {
            double h = 1e-5;
            CornerDensities Wp = W, Wm = W;
            Wp[i] += h;
            Wm[i] -= h;
            double fd = (voxel_alpha(Wp, {0, 0, 0}, 1.0, sg, r, K, nullptr) -
                         voxel_alpha(Wm, {0, 0, 0}, 1.0, sg, r, K, nullptr)) /
                        (2 * h);
            CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("voxel_normal forward") {
    CornerDensities V{};
    for (int c = 0; c < 8; ++c) V[c] = ((c >> 2) & 1) ? 1.0 : 0.0;  // x-step
    VoxelNormal n = voxel_normal(V);
    CHECK_FALSE(n.degenerate);
    CHECK(n.raw.x == doctest::Approx(1.0));
    CHECK(n.raw.y == doctest::Approx(0.0));
    CHECK(n.raw.z == doctest::Approx(0.0));
    CHECK(n.n.x == doctest::Approx(1.0));

    CornerDensities constant;
    constant.fill(2.0);
    CHECK(voxel_normal(constant).degenerate);
    CHECK(norm(voxel_normal(constant).n) == 0.0);
}

TEST_CASE("density_gradient equals trilinear central gradient") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        CornerDensities V = random_corners(rng, -2, 2);
        Vec3 g = density_gradient(V);
        // Trilinear is linear per axis, so the exact partial at the center is
        // a central difference with any step.
        double h = 0.25;
        Vec3 fd{(trilinear(V, {0.5 + h, 0.5, 0.5}) - trilinear(V, {0.5 - h, 0.5, 0.5})) / (2 * h),
                (trilinear(V, {0.5, 0.5 + h, 0.5}) - trilinear(V, {0.5, 0.5 - h, 0.5})) / (2 * h),
                (trilinear(V, {0.5, 0.5, 0.5 + h}) - trilinear(V, {0.5, 0.5, 0.5 - h})) / (2 * h)};
        CHECK(g.x == doctest::Approx(fd.x).epsilon(1e-12));
        CHECK(g.y == doctest::Approx(fd.y).epsilon(1e-12));
        CHECK(g.z == doctest::Approx(fd.z).epsilon(1e-12));
    }
}

TEST_CASE("voxel_normal_backward vs finite differences") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        CornerDensities V = random_corners(rng, -2, 2);
        VoxelNormal n = voxel_normal(V);
        if (n.degenerate || norm(n.raw) < 0.2) continue;
        Vec3 up{u(rng), u(rng), u(rng)};
        auto g = voxel_normal_backward(n, up);
        for (int i = 0; i < 8; ++i) {
            double h = 1e-6;
            CornerDensities Vp = V, Vm = V;
            Vp[i] += h;
            Vm[i] -= h;
            double fd = (dot(up, voxel_normal(Vp).n) - dot(up, voxel_normal(Vm).n)) / (2 * h);
            CHECK(g[i] == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("voxel_depth forward") {
    std::array<double, kMaxSamplesPerVoxel> alpha{}, t{};
    alpha[0] = 0.3;
    t[0] = 2.0;
    CHECK(voxel_depth(alpha, t, 1) == doctest::Approx(0.3 * 2.0));
    alpha[0] = 1.0;
    alpha[1] = 0.7;
    t[1] = 3.0;
    CHECK(voxel_depth(alpha, t, 2) == doctest::Approx(2.0));  // full occlusion at sample 1
    alpha[0] = 0.2;
    CHECK(voxel_depth(alpha, t, 2) == doctest::Approx(0.2 * 2.0 + 0.8 * 0.7 * 3.0));
}

TEST_CASE("voxel_depth_backward closed form vs finite differences") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ua(0.05, 0.9), ut(0.5, 4.0);
    for (int K = 1; K <= 3; ++K) {
        for (int trial = 0; trial < 40; ++trial) {
            std::array<double, kMaxSamplesPerVoxel> alpha{}, t{};
            for (int k = 0; k < K; ++k) {
                alpha[k] = ua(rng);
                t[k] = ut(rng);
            }
            auto g = voxel_depth_backward(alpha, t, K);
            for (int k = 0; k < K; ++k) {
                double h = 1e-6;
                auto ap = alpha, am = alpha;
                ap[k] += h;
                am[k] -= h;
                double fd = (voxel_depth(ap, t, K) - voxel_depth(am, t, K)) / (2 * h);
                CHECK(g[k] == doctest::Approx(fd).epsilon(1e-8));
            }
            for (int k = K; k < 3; ++k) CHECK(g[k] == 0.0);
        }
    }
    std::array<double, kMaxSamplesPerVoxel> a{}, t{};
    CHECK_THROWS_AS(voxel_depth_backward(a, t, 4), std::invalid_argument);
}

TEST_CASE("per-sample alphas compose exactly to the voxel alpha") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        CornerDensities V = random_corners(rng, -2, 3);
        Ray ray{{-3, 0.1, -0.2}, {1, 0.05, 0.1}};
        RaySegment seg = ray_aabb({0, 0, 0}, 1.0, ray);
        REQUIRE(seg.valid);
        for (int K = 1; K <= 3; ++K) {
            AlphaCache c;
            double a = voxel_alpha(V, {0, 0, 0}, 1.0, seg, ray, K, &c);
            double T = 1.0;
            for (int k = 0; k < K; ++k) T *= 1.0 - c.samp_alpha[k];
            CHECK(1.0 - T == doctest::Approx(a).epsilon(1e-13));
        }
    }
}
