#include "svr/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svr {

namespace {

constexpr double kAabbPad = 1e-6;  // pixels; absorbs projection rounding

int tiles_along(int pixels) { return (pixels + kTileSize - 1) / kTileSize; }

// Shared front-to-back compositing state. The rasterizer and the oracle both
// feed voxels through add() so their arithmetic is identical.
struct CompositeCtx {
    const RenderOptions* opts;
    Ray ray;
    double T = 1.0;
    Vec3 color{};
    double depth = 0.0;
    Vec3 normal{};
    double median = -1.0;
    int count = 0;
    std::vector<Contrib>* rec = nullptr;
    std::vector<double>* max_blend = nullptr;

    // Returns false once the transmittance fell below the threshold.
    bool add(const PreVoxel& pv, uint32_t pre_idx) {
        RaySegment seg = ray_aabb(pv.center, pv.size, ray);
        if (!seg.valid) return true;
        AlphaCache c;
        double alpha = voxel_alpha(pv.V, pv.center, pv.size, seg, ray, opts->K, &c);
        double d = voxel_depth(c.samp_alpha, c.t, opts->K);
        color += (T * alpha) * pv.color;
        normal += (T * alpha) * pv.normal.n;
        depth += T * d;
        if (median < 0.0) {
            double Tf = T;
            for (int k = 0; k < opts->K; ++k) {
                Tf *= 1.0 - c.samp_alpha[k];
                if (Tf < 0.5) {
                    median = c.t[k];
                    break;
                }
            }
        }
        if (max_blend) (*max_blend)[pv.vid] = std::max((*max_blend)[pv.vid], T * alpha);
        if (rec) rec->push_back({pre_idx, seg.a, seg.b});
        T *= 1.0 - alpha;
        ++count;
        return !(T < opts->t_threshold);
    }

    void finish() {
        color += T * opts->background;
        if (count == 0) depth = opts->far_sentinel;
        if (median < 0.0) median = opts->far_sentinel;
    }
};

}  // namespace

PoolsD make_pools(const SparseScene& scene) {
    PoolsD p;
    p.density.assign(scene.density.begin(), scene.density.end());
    p.sh.assign(scene.sh.begin(), scene.sh.end());
    return p;
}

bool project_voxel(const Camera& cam, const Vec3& center, double size, PreVoxel& out,
                   double near_plane) {
    out.tx0 = 0;
    out.tx1 = -1;
    bool any_front = false, any_behind = false;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = x1;
    for (int c = 0; c < 8; ++c) {
        Vec3 corner = center + 0.5 * size *
                                   Vec3{((c >> 2) & 1) ? 1.0 : -1.0, ((c >> 1) & 1) ? 1.0 : -1.0,
                                        (c & 1) ? 1.0 : -1.0};
        Vec3 pc = cam.world_to_cam(corner);
        if (pc.z <= near_plane) {
            any_behind = true;
            continue;
        }
        any_front = true;
        double u = cam.fx * pc.x / pc.z + cam.cx;
        double v = cam.fy * pc.y / pc.z + cam.cy;
        x0 = std::min(x0, u);
        x1 = std::max(x1, u);
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    }
    if (!any_front) return false;
    if (any_behind) {
        // Straddles the near plane; fall back to the whole image.
        x0 = 0;
        x1 = cam.width;
        y0 = 0;
        y1 = cam.height;
    }
    x0 -= kAabbPad;
    x1 += kAabbPad;
    y0 -= kAabbPad;
    y1 += kAabbPad;
    if (x1 < 0 || y1 < 0 || x0 > cam.width || y0 > cam.height) return false;
    out.x0 = x0;
    out.x1 = x1;
    out.y0 = y0;
    out.y1 = y1;
    out.tx0 = std::clamp(int(std::floor(x0 / kTileSize)), 0, tiles_along(cam.width) - 1);
    out.tx1 = std::clamp(int(std::floor(x1 / kTileSize)), 0, tiles_along(cam.width) - 1);
    out.ty0 = std::clamp(int(std::floor(y0 / kTileSize)), 0, tiles_along(cam.height) - 1);
    out.ty1 = std::clamp(int(std::floor(y1 / kTileSize)), 0, tiles_along(cam.height) - 1);
    return true;
}

std::vector<SignBits> tile_sign_patterns(const Camera& cam, int tx, int ty) {
    int px0 = tx * kTileSize, py0 = ty * kTileSize;
    int px1 = std::min(cam.width - 1, px0 + kTileSize - 1);
    int py1 = std::min(cam.height - 1, py0 + kTileSize - 1);
    // Ray direction components are affine in pixel coordinates, so per-axis
    // extrema over the tile are attained at its corner pixels.
    bool neg[3] = {false, false, false}, nonneg[3] = {false, false, false};
    for (int cy : {py0, py1})
        for (int cx : {px0, px1}) {
            Vec3 d = cam.pixel_ray(cx, cy).dir;
            for (int ax = 0; ax < 3; ++ax) (d[ax] < 0.0 ? neg[ax] : nonneg[ax]) = true;
        }
    std::vector<SignBits> out;
    for (SignBits s = 0; s < 8; ++s) {
        bool ok = true;
        for (int ax = 0; ax < 3; ++ax) {
            bool want_neg = (s >> (2 - ax)) & 1;
            if (want_neg ? !neg[ax] : !nonneg[ax]) ok = false;
        }
        if (ok) out.push_back(s);
    }
    return out;
}

std::vector<SortEntry> build_sort_entries(const std::vector<PreVoxel>& pre, const Camera& cam,
                                          const SparseScene& scene) {
    if (scene.voxel_count() >= kMaxVoxelCount)
        throw std::length_error("voxel count exceeds the 29-bit id capacity");
    int ntx = tiles_along(cam.width), nty = tiles_along(cam.height);
    if (size_t(ntx) * nty >= (size_t(1) << kTileIdBits))
        throw std::length_error("tile count exceeds the 16-bit id capacity");
    // Per-tile sign patterns, computed lazily.
    std::vector<std::vector<SignBits>> patterns(size_t(ntx) * nty);
    std::vector<bool> have(size_t(ntx) * nty, false);
    std::vector<SortEntry> entries;
    for (const PreVoxel& pv : pre) {
        const OctPath& path = scene.voxels[pv.vid];
        for (int ty = pv.ty0; ty <= pv.ty1; ++ty)
            for (int tx = pv.tx0; tx <= pv.tx1; ++tx) {
                size_t tid = size_t(ty) * ntx + tx;
                if (!have[tid]) {
                    patterns[tid] = tile_sign_patterns(cam, tx, ty);
                    have[tid] = true;
                }
                for (SignBits s : patterns[tid]) {
                    uint64_t key = (uint64_t(tid) << 48) | dir_dep_order(path, s);
                    uint32_t value = (s << kVoxelIdBits) | pv.vid;
                    entries.push_back({key, value});
                }
            }
    }
    return entries;
}

void sort_entries(std::vector<SortEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const SortEntry& a, const SortEntry& b) {
        return a.key != b.key ? a.key < b.key : a.value < b.value;
    });
}

namespace {

std::vector<PreVoxel> preprocess(const SparseScene& scene, const PoolsD& pools,
                                 const Camera& cam, double near_plane) {
    std::vector<PreVoxel> pre;
    pre.reserve(scene.voxel_count());
    const int stride = scene.sh_stride();
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
        auto [center, size] = scene.geometry_of(vi);
        PreVoxel pv;
        pv.vid = uint32_t(vi);
        pv.center = center;
        pv.size = size;
        if (!project_voxel(cam, center, size, pv, near_plane)) continue;
        for (int c = 0; c < 8; ++c) pv.V[c] = pools.density[scene.corner_index[vi][c]];
        pv.color = sh_eval(pools.sh.data() + vi * stride, scene.sh_degree,
                           normalized(center - cam.pos));
        pv.normal = voxel_normal(pv.V);
        pre.push_back(pv);
    }
    return pre;
}

}  // namespace

RenderOutput render_with_pools(const SparseScene& scene, const PoolsD& pools, const Camera& cam,
                               const RenderOptions& opts) {
    if (opts.supersample < 1.0) throw std::invalid_argument("supersample factor must be >= 1");
    if (opts.K < 1 || opts.K > 3)
        throw std::invalid_argument("rasterizer sample count K must be in {1,2,3}");
    if (opts.t_threshold <= 0.0 || opts.t_threshold >= 1.0)
        throw std::invalid_argument("transmittance threshold must be in (0,1)");
    const int W = cam.width, H = cam.height;
    const int sw = int(std::ceil(opts.supersample * W));
    const int sh = int(std::ceil(opts.supersample * H));
    Camera ss_cam = cam.scaled(sw, sh);

    auto pre = preprocess(scene, pools, ss_cam, opts.near_plane);
    auto entries = build_sort_entries(pre, ss_cam, scene);
    sort_entries(entries);

    // voxel id -> slot in pre
    std::vector<uint32_t> pre_of(scene.voxel_count(), uint32_t(-1));
    for (uint32_t i = 0; i < pre.size(); ++i) pre_of[pre[i].vid] = i;

    RenderOutput out;
    if (opts.record_stats) out.max_blend_weight.assign(scene.voxel_count(), 0.0);
    auto records = opts.training ? std::make_shared<ForwardRecords>() : nullptr;
    if (records) {
        records->ss_cam = ss_cam;
        records->opts = opts;
        records->pix_begin.assign(size_t(sw) * sh, 0);
        records->pix_count.assign(size_t(sw) * sh, 0);
    }

    Image ss_color(sw, sh, 3), ss_depth(sw, sh, 1), ss_median(sw, sh, 1), ss_normal(sw, sh, 3),
        ss_tfin(sw, sh, 1);

    const int ntx = tiles_along(sw), nty = tiles_along(sh);
    size_t cursor = 0;  // entries are sorted by tile id first
    for (int ty = 0; ty < nty; ++ty)
        for (int tx = 0; tx < ntx; ++tx) {
            uint64_t tid = uint64_t(ty) * ntx + tx;
            size_t lo = cursor;
            while (cursor < entries.size() && (entries[cursor].key >> 48) == tid) ++cursor;
            size_t hi = cursor;
            int px1 = std::min(sw, (tx + 1) * kTileSize);
            int py1 = std::min(sh, (ty + 1) * kTileSize);
            for (int py = ty * kTileSize; py < py1; ++py)
                for (int px = tx * kTileSize; px < px1; ++px) {
                    CompositeCtx ctx;
                    ctx.opts = &opts;
                    ctx.ray = ss_cam.pixel_ray(px, py);
                    SignBits s = ray_sign_bits(ctx.ray.dir);
                    if (opts.record_stats) ctx.max_blend = &out.max_blend_weight;
                    size_t pix = size_t(py) * sw + px;
                    if (records) {
                        records->pix_begin[pix] = uint32_t(records->contribs.size());
                        ctx.rec = &records->contribs;
                    }
                    double cx = px + 0.5, cy = py + 0.5;
                    for (size_t e = lo; e < hi; ++e) {
                        if (entries[e].sign_bits() != s) continue;
                        const PreVoxel& pv = pre[pre_of[entries[e].voxel_id()]];
                        if (cx < pv.x0 || cx > pv.x1 || cy < pv.y0 || cy > pv.y1) continue;
                        if (!ctx.add(pv, pre_of[entries[e].voxel_id()])) break;
                    }
                    ctx.finish();
                    if (records)
                        records->pix_count[pix] =
                            uint32_t(records->contribs.size()) - records->pix_begin[pix];
                    ss_color.at(px, py, 0) = ctx.color.x;
                    ss_color.at(px, py, 1) = ctx.color.y;
                    ss_color.at(px, py, 2) = ctx.color.z;
                    ss_depth.at(px, py) = ctx.depth;
                    ss_median.at(px, py) = ctx.median;
                    ss_normal.at(px, py, 0) = ctx.normal.x;
                    ss_normal.at(px, py, 1) = ctx.normal.y;
                    ss_normal.at(px, py, 2) = ctx.normal.z;
                    ss_tfin.at(px, py) = ctx.T;
                }
        }

    AreaResampler rs(sw, sh, W, H);
    out.color = rs.downsample(ss_color);
    out.depth = rs.downsample(ss_depth);
    out.median_depth = rs.downsample(ss_median);
    out.normal = rs.downsample(ss_normal);
    out.transmittance = rs.downsample(ss_tfin);
    if (records) {
        records->pre = std::move(pre);
        records->ss_color = std::move(ss_color);
        records->ss_depth = std::move(ss_depth);
        records->ss_tfin = std::move(ss_tfin);
        out.records = std::move(records);
    }
    return out;
}

RenderOutput render(const SparseScene& scene, const Camera& cam, const RenderOptions& opts) {
    return render_with_pools(scene, make_pools(scene), cam, opts);
}

SceneGradients render_backward(const SparseScene& scene, const PoolsD& pools,
                               const ForwardRecords& records, const UpstreamGrads& grads) {
    const RenderOptions& opts = records.opts;
    const Camera& ss_cam = records.ss_cam;
    const int sw = ss_cam.width, sh = ss_cam.height;
    const int W = int(std::round(sw / opts.supersample));

    SceneGradients out;
    out.density.assign(scene.pool_count(), 0.0);
    out.sh.assign(scene.sh.size(), 0.0);
    out.priority.assign(scene.voxel_count(), 0.0);

    // Lift image-level gradients to the supersampled grid (adjoint of the
    // area downsampling).
    auto lift = [&](const Image& g) -> Image {
        if (g.data.empty()) return {};
        AreaResampler rs(sw, sh, g.width, g.height);
        return rs.adjoint(g);
    };
    Image gC = lift(grads.d_color);
    Image gD = lift(grads.d_depth);
    Image gN = lift(grads.d_normal);
    (void)W;

    const bool has_w = !grads.d_weight.empty();
    const bool has_vc = !grads.d_voxel_color.empty();
    if (has_w && grads.d_weight.size() != records.contribs.size())
        throw std::runtime_error("per-contribution weight gradients do not match the records");
    if (has_vc && grads.d_voxel_color.size() != records.contribs.size())
        throw std::runtime_error("per-contribution color gradients do not match the records");

    // Per-view voxel accumulators (colors and normals are shared by all rays
    // of a view, so their chain rule runs once per voxel at the end).
    std::vector<Vec3> gc_pre(records.pre.size()), gn_pre(records.pre.size());

    std::vector<AlphaCache> caches;
    std::vector<double> Ts, ds, phis, gws;
    for (int py = 0; py < sh; ++py)
        for (int px = 0; px < sw; ++px) {
            size_t pix = size_t(py) * sw + px;
            uint32_t n = records.pix_count[pix];
            if (n == 0) continue;
            uint32_t base = records.pix_begin[pix];
            Ray ray = ss_cam.pixel_ray(px, py);

            Vec3 gC_px = gC.data.empty() ? Vec3{} : Vec3{gC.at(px, py, 0), gC.at(px, py, 1),
                                                         gC.at(px, py, 2)};
            double gD_px = gD.data.empty() ? 0.0 : gD.at(px, py);
            Vec3 gN_px = gN.data.empty() ? Vec3{} : Vec3{gN.at(px, py, 0), gN.at(px, py, 1),
                                                         gN.at(px, py, 2)};
            double gT_px = grads.d_tfin_ss.empty() ? 0.0 : grads.d_tfin_ss[pix];

            caches.resize(n);
            Ts.resize(n);
            ds.resize(n);
            phis.resize(n);
            gws.resize(n);
            double T = 1.0;
            for (uint32_t i = 0; i < n; ++i) {
                const Contrib& c = records.contribs[base + i];
                const PreVoxel& pv = records.pre[c.pre];
                RaySegment seg{c.a, c.b, true};
                voxel_alpha(pv.V, pv.center, pv.size, seg, ray, opts.K, &caches[i]);
                ds[i] = voxel_depth(caches[i].samp_alpha, caches[i].t, opts.K);
                Ts[i] = T;
                T *= 1.0 - caches[i].alpha;
                double gw = has_w ? grads.d_weight[base + i] : 0.0;
                gws[i] = gw;
                phis[i] = dot(gC_px, pv.color) + dot(gN_px, pv.normal.n) + gw;
            }

            // Back-to-front recursion; Ra carries the alpha-weighted suffix,
            // Rd the depth suffix. No divisions by (1 - alpha).
            double Ra = dot(gC_px, opts.background) + gT_px;
            double Rd = 0.0;
            for (int i = int(n) - 1; i >= 0; --i) {
                const Contrib& c = records.contribs[base + i];
                const PreVoxel& pv = records.pre[c.pre];
                const AlphaCache& cache = caches[i];
                double alpha = cache.alpha;
                double A = Ts[i] * (phis[i] - Ra - Rd);  // dL/dalpha_i

                out.priority[pv.vid] += std::abs(alpha * A);

                auto dd = voxel_depth_backward(cache.samp_alpha, cache.t, opts.K);
                for (int k = 0; k < opts.K; ++k) {
                    // prod over the other samples = (1-alpha)/(1-alpha_k)
                    double others = 1.0;
                    for (int m = 0; m < opts.K; ++m)
                        if (m != k) others *= 1.0 - cache.samp_alpha[m];
                    double dAk = A * others + Ts[i] * gD_px * dd[k];
                    double dv = dAk * (1.0 - cache.samp_alpha[k]) * (cache.l / opts.K) *
                                explin_deriv(cache.v[k]);
                    auto wts = trilinear_weights(cache.q[k]);
                    for (int c8 = 0; c8 < 8; ++c8)
                        out.density[scene.corner_index[pv.vid][c8]] += dv * wts[c8];
                }

                double w = Ts[i] * alpha;
                gc_pre[c.pre] += w * gC_px;
                if (has_vc) gc_pre[c.pre] += grads.d_voxel_color[base + i];
                gn_pre[c.pre] += w * gN_px;

                Ra = alpha * phis[i] + (1.0 - alpha) * Ra;
                Rd = ds[i] * gD_px + (1.0 - alpha) * Rd;
            }
        }

    // Shared per-voxel chains: SH color and normal.
    const int stride = scene.sh_stride();
    for (size_t p = 0; p < records.pre.size(); ++p) {
        const PreVoxel& pv = records.pre[p];
        Vec3 dir = normalized(pv.center - ss_cam.pos);
        sh_eval_backward(pools.sh.data() + pv.vid * stride, scene.sh_degree, dir, gc_pre[p],
                         out.sh.data() + pv.vid * stride);
        CornerDensities gV = voxel_normal_backward(pv.normal, gn_pre[p]);
        for (int c8 = 0; c8 < 8; ++c8)
            out.density[scene.corner_index[pv.vid][c8]] += gV[c8];
    }
    return out;
}

RenderOutput render_oracle(const SparseScene& scene, const Camera& cam,
                           const RenderOptions& opts) {
    PoolsD pools = make_pools(scene);
    auto pre = preprocess(scene, pools, cam, opts.near_plane);
    RenderOutput out;
    out.color = Image(cam.width, cam.height, 3);
    out.depth = Image(cam.width, cam.height, 1);
    out.median_depth = Image(cam.width, cam.height, 1);
    out.normal = Image(cam.width, cam.height, 3);
    out.transmittance = Image(cam.width, cam.height, 1);
    if (opts.record_stats) out.max_blend_weight.assign(scene.voxel_count(), 0.0);

    struct Hit {
        double a;
        uint64_t order;
        uint32_t pre;
    };
    std::vector<Hit> hits;
    for (int py = 0; py < cam.height; ++py)
        for (int px = 0; px < cam.width; ++px) {
            CompositeCtx ctx;
            ctx.opts = &opts;
            ctx.ray = cam.pixel_ray(px, py);
            if (opts.record_stats) ctx.max_blend = &out.max_blend_weight;
            SignBits s = ray_sign_bits(ctx.ray.dir);
            hits.clear();
            for (uint32_t p = 0; p < pre.size(); ++p) {
                RaySegment seg = ray_aabb(pre[p].center, pre[p].size, ctx.ray);
                if (seg.valid)
                    hits.push_back({seg.a, dir_dep_order(scene.voxels[pre[p].vid], s), p});
            }
            std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
                return a.a != b.a ? a.a < b.a : a.order < b.order;
            });
            for (const Hit& h : hits)
                if (!ctx.add(pre[h.pre], h.pre)) break;
            ctx.finish();
            out.color.at(px, py, 0) = ctx.color.x;
            out.color.at(px, py, 1) = ctx.color.y;
            out.color.at(px, py, 2) = ctx.color.z;
            out.depth.at(px, py) = ctx.depth;
            out.median_depth.at(px, py) = ctx.median;
            out.normal.at(px, py, 0) = ctx.normal.x;
            out.normal.at(px, py, 1) = ctx.normal.y;
            out.normal.at(px, py, 2) = ctx.normal.z;
            out.transmittance.at(px, py) = ctx.T;
        }
    return out;
}

}  // namespace svr
