#include "svr/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "svr/losses.hpp"

namespace svr {

using nlohmann::json;

namespace {

void validate_config(const TrainConfig& c) {
    if (c.init_level < 1 || c.init_level > kMaxLevel)
        throw std::invalid_argument("init_level out of [1,16]");
    if (c.shell_levels < 1 || c.shell_levels > kMaxLevel - 2)
        throw std::invalid_argument("shell_levels out of range");
    if (c.adapt_every <= 0) throw std::invalid_argument("adapt_every must be positive");
    if (c.iterations < 0) throw std::invalid_argument("iterations must be non-negative");
    if (c.prune_initial <= 0 || c.prune_final < c.prune_initial)
        throw std::invalid_argument("prune schedule must be positive and non-decreasing");
    if (c.subdiv_percent < 0 || c.subdiv_percent > 100)
        throw std::invalid_argument("subdiv_percent out of [0,100]");
    if (c.bg_ratio <= 0) throw std::invalid_argument("bg_ratio must be positive");
    if (c.lr_density <= 0 || c.lr_sh0 <= 0 || c.lr_sh_rest <= 0)
        throw std::invalid_argument("learning rates must be positive");
    if (c.scene_size <= 0) throw std::invalid_argument("scene_size must be positive");
    if (c.sh_degree < 0 || c.sh_degree > kMaxShDegree)
        throw std::invalid_argument("sh_degree out of [0,3]");
    if (c.render.supersample < 1.0) throw std::invalid_argument("supersample must be >= 1");
    if (c.render.t_threshold <= 0) throw std::invalid_argument("t_threshold must be positive");
    if (c.render.K < 1 || c.render.K > 3) throw std::invalid_argument("K must be in {1,2,3}");
}

bool point_observed(const Vec3& p, const std::vector<Camera>& cams) {
    for (const Camera& cam : cams) {
        Vec3 uvz = cam.project(p);
        if (uvz.z > 0 && uvz.x >= 0 && uvz.x <= cam.width && uvz.y >= 0 && uvz.y <= cam.height)
            return true;
    }
    return false;
}

bool voxel_observed(const SceneBounds& b, const VoxelIndex& v, const std::vector<Camera>& cams) {
    for (const CornerKey& k : corner_keys(v))
        if (point_observed(corner_position(b, k), cams)) return true;
    return false;
}

void init_params(SparseScene& scene, const TrainConfig& cfg) {
    scene.sh_degree = cfg.sh_degree;
    rebuild_corner_indexing(scene, {}, float(cfg.init_density));
    scene.sh.assign(scene.voxel_count() * scene.sh_stride(), 0.0f);
    float dc = float(sh_dc_for_intensity(0.5));
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi)
        for (int ch = 0; ch < 3; ++ch) scene.sh[vi * scene.sh_stride() + ch] = dc;
}

}  // namespace

double max_sampling_rate(const Vec3& center, double size, const std::vector<Camera>& cams) {
    if (cams.empty()) throw std::invalid_argument("max_sampling_rate needs at least one camera");
    double best = 0.0;
    for (const Camera& cam : cams) {
        double z = dot(center - cam.pos, cam.lookat());
        if (z <= 0) continue;
        best = std::max(best, size * cam.fx / z);
    }
    return best;
}

SparseScene init_bounded(const SceneBounds& bounds, const std::vector<Camera>& cams,
                         const TrainConfig& cfg) {
    validate_config(cfg);
    if (cams.empty()) throw std::invalid_argument("init_bounded needs cameras");
    SparseScene scene;
    scene.bounds = bounds;
    uint32_t n = uint32_t(1) << cfg.init_level;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            for (uint32_t k = 0; k < n; ++k) {
                VoxelIndex v{i, j, k, cfg.init_level};
                if (voxel_observed(bounds, v, cams)) scene.voxels.push_back(to_octpath(v));
            }
    init_params(scene, cfg);
    return scene;
}

SparseScene init_unbounded(const std::vector<Camera>& cams, const TrainConfig& cfg) {
    validate_config(cfg);
    if (cams.size() < 2) throw std::invalid_argument("init_unbounded needs at least two cameras");
    Vec3 center{};
    for (const Camera& c : cams) center += c.pos;
    center = center / double(cams.size());
    std::vector<double> dist;
    for (const Camera& c : cams) dist.push_back(norm(c.pos - center));
    std::nth_element(dist.begin(), dist.begin() + dist.size() / 2, dist.end());
    double radius = dist[dist.size() / 2];
    if (radius <= 0) throw std::invalid_argument("degenerate camera set: coincident positions");

    double main_size = 2.0 * radius;
    SparseScene scene;
    scene.bounds = {center, std::ldexp(main_size, cfg.shell_levels)};

    // Main region: the central 2^init_level block at the level where cells
    // match the bounded-case resolution of the main cuboid.
    int lv_main = cfg.shell_levels + cfg.init_level;
    if (lv_main > kMaxLevel) throw std::invalid_argument("shell_levels + init_level exceeds 16");
    uint32_t half = uint32_t(1) << (lv_main - 1);
    uint32_t m = uint32_t(1) << (cfg.init_level - 1);
    size_t fg = 0;
    for (uint32_t i = half - m; i < half + m; ++i)
        for (uint32_t j = half - m; j < half + m; ++j)
            for (uint32_t k = half - m; k < half + m; ++k) {
                VoxelIndex v{i, j, k, lv_main};
                if (voxel_observed(scene.bounds, v, cams)) {
                    scene.voxels.push_back(to_octpath(v));
                    ++fg;
                }
            }
    if (fg == 0) throw std::invalid_argument("no observed voxels in the main region");

    // Shells: each one the 4^3 - 2^3 = 56 voxels surrounding the next-inner
    // cuboid, coarser as they go out.
    struct ShellVox {
        double rate;
        uint64_t tiebreak;
        OctPath path;
        bool operator<(const ShellVox& o) const {
            return rate != o.rate ? rate < o.rate : tiebreak > o.tiebreak;
        }
    };
    std::priority_queue<ShellVox> shell;
    auto push_shell = [&](const OctPath& p) {
        auto [c, s] = voxel_geometry(scene.bounds, to_voxel_index(p));
        shell.push({max_sampling_rate(c, s, cams), p.code | (uint64_t(p.level) << 48), p});
    };
    for (int s = 1; s <= cfg.shell_levels; ++s) {
        int lv = cfg.shell_levels - s + 2;
        uint32_t h = uint32_t(1) << (lv - 1);
        for (uint32_t i = h - 2; i < h + 2; ++i)
            for (uint32_t j = h - 2; j < h + 2; ++j)
                for (uint32_t k = h - 2; k < h + 2; ++k) {
                    bool inner = i >= h - 1 && i < h + 1 && j >= h - 1 && j < h + 1 &&
                                 k >= h - 1 && k < h + 1;
                    if (inner) continue;
                    VoxelIndex v{i, j, k, lv};
                    if (voxel_observed(scene.bounds, v, cams)) push_shell(to_octpath(v));
                }
    }

    // Refine the shells until the background/foreground ratio is reached.
    std::vector<OctPath> bg_done;
    size_t bg = shell.size();
    while (bg < size_t(cfg.bg_ratio * double(fg)) && !shell.empty()) {
        ShellVox top = shell.top();
        shell.pop();
        if (top.path.level >= kMaxLevel) {
            bg_done.push_back(top.path);
            continue;
        }
        --bg;
        for (const OctPath& ch : child_paths(top.path))
            if (voxel_observed(scene.bounds, to_voxel_index(ch), cams)) {
                push_shell(ch);
                ++bg;
            }
    }
    while (!shell.empty()) {
        bg_done.push_back(shell.top().path);
        shell.pop();
    }
    for (const OctPath& p : bg_done) scene.voxels.push_back(p);

    init_params(scene, cfg);
    return scene;
}

namespace {

// Computes pool_src for a freshly rebuilt scene: the old pool index of each
// new pool entry, -1 for brand-new grid points.
std::vector<int64_t> pool_sources(const SparseScene& scene,
                                  const std::unordered_map<uint64_t, uint32_t>& old_keys) {
    std::vector<int64_t> src(scene.pool_count(), -2);
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
        auto keys = corner_keys(to_voxel_index(scene.voxels[vi]));
        for (int c = 0; c < 8; ++c) {
            uint32_t pi = scene.corner_index[vi][c];
            if (src[pi] != -2) continue;
            auto it = old_keys.find(keys[c].packed());
            src[pi] = it == old_keys.end() ? -1 : int64_t(it->second);
        }
    }
    return src;
}

}  // namespace

SparseScene prune(const SparseScene& scene, const std::vector<double>& max_blend_weight,
                  double threshold, AdaptRemap* remap) {
    if (max_blend_weight.size() != scene.voxel_count())
        throw std::invalid_argument("prune: stats size mismatch");
    auto old_keys = corner_key_to_pool(scene);
    std::unordered_map<uint64_t, float> key_density;
    key_density.reserve(old_keys.size() * 2);
    for (const auto& [k, pi] : old_keys) key_density.emplace(k, scene.density[pi]);

    SparseScene out;
    out.bounds = scene.bounds;
    out.sh_degree = scene.sh_degree;
    std::vector<int64_t> voxel_src;
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi)
        if (max_blend_weight[vi] >= threshold) {
            out.voxels.push_back(scene.voxels[vi]);
            voxel_src.push_back(int64_t(vi));
        }
    rebuild_corner_indexing(out, key_density);
    const int stride = scene.sh_stride();
    out.sh.resize(out.voxel_count() * stride);
    for (size_t vi = 0; vi < out.voxel_count(); ++vi)
        std::copy_n(scene.sh_of(voxel_src[vi]), stride, out.sh_of(vi));
    if (remap) {
        remap->pool_src = pool_sources(out, old_keys);
        remap->voxel_src = std::move(voxel_src);
    }
    return out;
}

SparseScene subdivide_voxels(const SparseScene& scene, const std::vector<uint32_t>& selected,
                             AdaptRemap* remap) {
    std::vector<bool> sel(scene.voxel_count(), false);
    size_t n_sel = 0;
    for (uint32_t vi : selected) {
        if (vi >= scene.voxel_count()) throw std::out_of_range("subdivide: voxel id out of range");
        if (scene.voxels[vi].level >= kMaxLevel) continue;  // finest level: keep as-is
        if (!sel[vi]) ++n_sel;
        sel[vi] = true;
    }
    size_t new_count = scene.voxel_count() + 7 * n_sel;
    if (new_count > kMaxVoxelCount) throw std::length_error("subdivision exceeds voxel capacity");

    auto old_keys = corner_key_to_pool(scene);
    std::unordered_map<uint64_t, float> key_density;
    key_density.reserve(old_keys.size() * 2);
    for (const auto& [k, pi] : old_keys) key_density.emplace(k, scene.density[pi]);
    // New grid points introduced by subdivision: average over the parents that
    // produce them; existing points keep their stored value.
    std::unordered_map<uint64_t, std::pair<double, int>> fresh;

    SparseScene out;
    out.bounds = scene.bounds;
    out.sh_degree = scene.sh_degree;
    std::vector<int64_t> voxel_src, sh_src;
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
        if (!sel[vi]) {
            out.voxels.push_back(scene.voxels[vi]);
            voxel_src.push_back(int64_t(vi));
            sh_src.push_back(int64_t(vi));
            continue;
        }
        CornerDensities V = scene.corners_of(vi);
        for (const OctPath& child : child_paths(scene.voxels[vi])) {
            VoxelIndex cv = to_voxel_index(child);
            auto keys = corner_keys(cv);
            for (int c = 0; c < 8; ++c) {
                uint64_t k = keys[c].packed();
                if (old_keys.count(k)) continue;
                // Child-corner position in the parent's local coordinates.
                Vec3 q{0.5 * ((cv.i & 1) + ((c >> 2) & 1)), 0.5 * ((cv.j & 1) + ((c >> 1) & 1)),
                       0.5 * ((cv.k & 1) + (c & 1))};
                auto& acc = fresh[k];
                acc.first += trilinear(V, q);
                acc.second += 1;
            }
            out.voxels.push_back(child);
            voxel_src.push_back(-1);
            sh_src.push_back(int64_t(vi));
        }
    }
    for (const auto& [k, acc] : fresh) key_density[k] = float(acc.first / acc.second);
    rebuild_corner_indexing(out, key_density);
    const int stride = scene.sh_stride();
    out.sh.resize(out.voxel_count() * stride);
    for (size_t vi = 0; vi < out.voxel_count(); ++vi)
        std::copy_n(scene.sh_of(sh_src[vi]), stride, out.sh_of(vi));
    if (remap) {
        remap->pool_src = pool_sources(out, old_keys);
        remap->voxel_src = std::move(voxel_src);
    }
    return out;
}

std::vector<uint32_t> select_for_subdivision(const SparseScene& scene,
                                             const std::vector<double>& priority,
                                             const std::vector<double>& rates,
                                             const TrainConfig& cfg) {
    if (priority.size() != scene.voxel_count() || rates.size() != scene.voxel_count())
        throw std::invalid_argument("select_for_subdivision: stats size mismatch");
    std::vector<uint32_t> eligible;
    for (size_t vi = 0; vi < scene.voxel_count(); ++vi)
        if (priority[vi] > 0 && rates[vi] >= 2.0 * cfg.rate_threshold &&
            scene.voxels[vi].level < kMaxLevel)
            eligible.push_back(uint32_t(vi));
    size_t want = size_t(std::floor(double(scene.voxel_count()) * cfg.subdiv_percent / 100.0));
    size_t n = std::min(want, eligible.size());
    std::partial_sort(eligible.begin(), eligible.begin() + n, eligible.end(),
                      [&](uint32_t a, uint32_t b) {
                          return priority[a] != priority[b] ? priority[a] > priority[b] : a < b;
                      });
    eligible.resize(n);
    return eligible;
}

void adam_step(std::vector<float>& params, const std::vector<double>& grads, AdamState& state,
               double base_lr, const std::function<double(size_t)>& lr_of, double beta1,
               double beta2, double eps) {
    if (grads.size() != params.size()) throw std::invalid_argument("adam_step: shape mismatch");
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    if (state.m.size() != params.size())
        throw std::invalid_argument("adam_step: state shape mismatch");
    ++state.step;
    double bc1 = 1.0 - std::pow(beta1, double(state.step));
    double bc2 = 1.0 - std::pow(beta2, double(state.step));
    for (size_t i = 0; i < params.size(); ++i) {
        double g = grads[i];
        if (std::isnan(g))
            throw std::runtime_error("adam_step: NaN gradient at parameter " + std::to_string(i));
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * g;
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * g * g;
        double mhat = state.m[i] / bc1, vhat = state.v[i] / bc2;
        double lr = lr_of ? lr_of(i) : base_lr;
        params[i] = float(params[i] - lr * mhat / (std::sqrt(vhat) + eps));
    }
}

namespace {

void remap_elem_state(AdamState& st, const std::vector<int64_t>& src) {
    if (st.m.empty()) return;
    std::vector<double> m(src.size(), 0.0), v(src.size(), 0.0);
    for (size_t i = 0; i < src.size(); ++i)
        if (src[i] >= 0) {
            m[i] = st.m[src[i]];
            v[i] = st.v[src[i]];
        }
    st.m = std::move(m);
    st.v = std::move(v);
}

void remap_block_state(AdamState& st, const std::vector<int64_t>& voxel_src, int stride) {
    if (st.m.empty()) return;
    std::vector<double> m(voxel_src.size() * stride, 0.0), v(voxel_src.size() * stride, 0.0);
    for (size_t i = 0; i < voxel_src.size(); ++i)
        if (voxel_src[i] >= 0)
            for (int c = 0; c < stride; ++c) {
                m[i * stride + c] = st.m[voxel_src[i] * stride + c];
                v[i * stride + c] = st.v[voxel_src[i] * stride + c];
            }
    st.m = std::move(m);
    st.v = std::move(v);
}

template <typename T>
void remap_by(std::vector<T>& data, const std::vector<int64_t>& src) {
    std::vector<T> out(src.size(), T{});
    for (size_t i = 0; i < src.size(); ++i)
        if (src[i] >= 0) out[i] = data[src[i]];
    data = std::move(out);
}

}  // namespace

TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::function<void(int, const SparseScene&)>& checkpoint,
                  std::ostream* log_stream) {
    validate_config(cfg);
    if (data.frames.empty()) throw std::invalid_argument("train: empty dataset");
    std::vector<Camera> cams;
    for (const auto& f : data.frames) {
        check_rotation(f.cam.rot);
        cams.push_back(f.cam);
    }

    Vec3 background{0, 0, 0};
    if (cfg.background_override) {
        background = cfg.render.background;
    } else if (cfg.unbounded) {
        double n = 0;
        for (const auto& f : data.frames) {
            for (size_t p = 0; p < f.image.pixel_count(); ++p)
                for (int c = 0; c < 3; ++c) background[c] += f.image.data[p * 3 + c];
            n += double(f.image.pixel_count());
        }
        background = background / n;
    }

    TrainResult res;
    res.scene = cfg.unbounded
                    ? init_unbounded(cams, cfg)
                    : init_bounded({cfg.scene_center, cfg.scene_size}, cams, cfg);
    SparseScene& scene = res.scene;

    AdamState st_density, st_sh;
    std::vector<double> priority(scene.voxel_count(), 0.0);
    const int stride = scene.sh_stride();

    std::mt19937_64 rng(cfg.seed);
    std::vector<size_t> order(data.frames.size());
    std::iota(order.begin(), order.end(), size_t(0));

    for (int it = 1; it <= cfg.iterations; ++it) {
        size_t slot = size_t(it - 1) % order.size();
        if (slot == 0) std::shuffle(order.begin(), order.end(), rng);
        const DatasetFrame& frame = data.frames[order[slot]];
        const Image& gt = frame.image;

        RenderOptions opts = cfg.render;
        opts.training = true;
        opts.record_stats = false;
        opts.background = background;
        PoolsD pools = make_pools(scene);
        RenderOutput out = render_with_pools(scene, pools, frame.cam, opts);

        TrainLogEntry log;
        log.iteration = it;
        UpstreamGrads ug;
        ug.d_color = Image(gt.width, gt.height, 3);
        log.l_mse = mse_loss(out.color, gt, 1.0, &ug.d_color);
        log.l_ssim = ssim_loss(out.color, gt, cfg.lambda_ssim, &ug.d_color);

        RayLossWeights rw;
        rw.w_T = cfg.lambda_T;
        rw.w_dist = it >= cfg.dist_from ? cfg.lambda_dist : 0.0;
        rw.w_R = cfg.lambda_R;
        RayLossValues rv = ray_losses(scene, *out.records, gt, rw, ug);
        log.l_T = rv.l_T;
        log.l_dist = rv.l_dist;
        log.l_R = rv.l_R;

        std::vector<double> tv_grad;
        double w_tv = it <= cfg.tv_until ? cfg.lambda_tv : 0.0;
        if (w_tv > 0) {
            tv_grad.assign(scene.pool_count(), 0.0);
            log.l_tv = tv_loss(scene, pools, w_tv, &tv_grad);
        }

        double w_ndmean = cfg.mesh_mode && it >= cfg.n_dmean_from ? cfg.lambda_n_dmean : 0.0;
        double w_ndmed = cfg.mesh_mode && it >= cfg.n_dmed_from ? cfg.lambda_n_dmed : 0.0;
        if (w_ndmean > 0 || w_ndmed > 0) {
            ug.d_normal = Image(gt.width, gt.height, 3);
            if (w_ndmean > 0) {
                ug.d_depth = Image(gt.width, gt.height, 1);
                log.l_ndmean =
                    normal_depth_loss(frame.cam, out.normal, out.depth, w_ndmean, true,
                                      opts.far_sentinel, &ug.d_normal, &ug.d_depth);
            }
            if (w_ndmed > 0)
                log.l_ndmed = normal_depth_loss(frame.cam, out.normal, out.median_depth, w_ndmed,
                                                false, opts.far_sentinel, &ug.d_normal, nullptr);
        }

        SceneGradients sg = render_backward(scene, pools, *out.records, ug);
        if (!tv_grad.empty())
            for (size_t i = 0; i < tv_grad.size(); ++i) sg.density[i] += tv_grad[i];
        for (size_t vi = 0; vi < scene.voxel_count(); ++vi) priority[vi] += sg.priority[vi];

        double decay = it >= cfg.lr_decay_at ? cfg.lr_decay : 1.0;
        adam_step(scene.density, sg.density, st_density, cfg.lr_density * decay, nullptr,
                  cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);
        double lr0 = cfg.lr_sh0 * decay, lrN = cfg.lr_sh_rest * decay;
        adam_step(scene.sh, sg.sh, st_sh, lr0,
                  [&](size_t i) { return int(i % size_t(stride)) < 3 ? lr0 : lrN; },
                  cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps);

        log.total = log.l_mse + cfg.lambda_ssim * log.l_ssim + rw.w_T * log.l_T +
                    rw.w_dist * log.l_dist + rw.w_R * log.l_R + w_tv * log.l_tv +
                    w_ndmean * log.l_ndmean + w_ndmed * log.l_ndmed;
        log.voxel_count = scene.voxel_count();
        log.pool_count = scene.pool_count();
        res.log.push_back(log);
        if (log_stream)
            *log_stream << "iter " << it << " total " << log.total << " mse " << log.l_mse
                        << " ssim " << log.l_ssim << " T " << log.l_T << " dist " << log.l_dist
                        << " R " << log.l_R << " tv " << log.l_tv << " ndmean " << log.l_ndmean
                        << " ndmed " << log.l_ndmed << " voxels " << log.voxel_count << " pool "
                        << log.pool_count << "\n";

        if (it % cfg.adapt_every == 0 && it < cfg.iterations) {
            if (it <= cfg.prune_until) {
                // Gather max blending weights over every training view.
                RenderOptions sopts = cfg.render;
                sopts.record_stats = true;
                sopts.supersample = 1.0;
                sopts.background = background;
                std::vector<double> stats(scene.voxel_count(), 0.0);
                for (const auto& f : data.frames) {
                    RenderOutput so = render(scene, f.cam, sopts);
                    for (size_t vi = 0; vi < stats.size(); ++vi)
                        stats[vi] = std::max(stats[vi], so.max_blend_weight[vi]);
                }
                double span = double(std::max(1, cfg.prune_until - cfg.adapt_every));
                double frac = std::clamp((it - cfg.adapt_every) / span, 0.0, 1.0);
                double thr = cfg.prune_initial + (cfg.prune_final - cfg.prune_initial) * frac;
                AdaptRemap rm;
                scene = prune(scene, stats, thr, &rm);
                remap_elem_state(st_density, rm.pool_src);
                remap_block_state(st_sh, rm.voxel_src, stride);
                remap_by(priority, rm.voxel_src);
            }
            if (it <= cfg.subdivide_until) {
                std::vector<double> rates(scene.voxel_count(), 0.0);
                for (size_t vi = 0; vi < scene.voxel_count(); ++vi) {
                    auto [c, s] = scene.geometry_of(vi);
                    rates[vi] = max_sampling_rate(c, s, cams);
                }
                auto selected = select_for_subdivision(scene, priority, rates, cfg);
                AdaptRemap rm;
                scene = subdivide_voxels(scene, selected, &rm);
                remap_elem_state(st_density, rm.pool_src);
                remap_block_state(st_sh, rm.voxel_src, stride);
            }
            priority.assign(scene.voxel_count(), 0.0);
        }
        if (checkpoint && it % cfg.checkpoint_every == 0) checkpoint(it, scene);
    }
    if (checkpoint) checkpoint(cfg.iterations, scene);
    return res;
}

// --- configuration file ---

namespace {

template <typename T>
void read_key(const json& j, std::set<std::string>& seen, const char* key, T& dst) {
    seen.insert(key);
    if (j.contains(key)) dst = j.at(key).get<T>();
}

void read_vec3(const json& j, std::set<std::string>& seen, const char* key, Vec3& dst) {
    seen.insert(key);
    if (!j.contains(key)) return;
    const json& a = j.at(key);
    if (!a.is_array() || a.size() != 3)
        throw std::invalid_argument(std::string("config: ") + key + " must be a 3-array");
    dst = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

void reject_unknown(const json& j, const std::set<std::string>& seen, const char* where) {
    for (const auto& [k, v] : j.items())
        if (!seen.count(k))
            throw std::invalid_argument(std::string("config: unknown key \"") + k + "\" in " +
                                        where);
}

}  // namespace

TrainConfig parse_train_config(const std::string& json_text) {
    json j = json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    TrainConfig c;
    std::set<std::string> seen;
    read_key(j, seen, "init_density", c.init_density);
    read_key(j, seen, "init_level", c.init_level);
    read_key(j, seen, "shell_levels", c.shell_levels);
    read_key(j, seen, "bg_ratio", c.bg_ratio);
    read_key(j, seen, "unbounded", c.unbounded);
    read_vec3(j, seen, "scene_center", c.scene_center);
    read_key(j, seen, "scene_size", c.scene_size);
    read_key(j, seen, "adapt_every", c.adapt_every);
    read_key(j, seen, "subdivide_until", c.subdivide_until);
    read_key(j, seen, "prune_until", c.prune_until);
    read_key(j, seen, "prune_initial", c.prune_initial);
    read_key(j, seen, "prune_final", c.prune_final);
    read_key(j, seen, "subdiv_percent", c.subdiv_percent);
    read_key(j, seen, "rate_threshold", c.rate_threshold);
    read_key(j, seen, "iterations", c.iterations);
    read_key(j, seen, "lr_density", c.lr_density);
    read_key(j, seen, "lr_sh0", c.lr_sh0);
    read_key(j, seen, "lr_sh_rest", c.lr_sh_rest);
    read_key(j, seen, "lr_decay_at", c.lr_decay_at);
    read_key(j, seen, "lr_decay", c.lr_decay);
    read_key(j, seen, "adam_beta1", c.adam_beta1);
    read_key(j, seen, "adam_beta2", c.adam_beta2);
    read_key(j, seen, "adam_eps", c.adam_eps);
    read_key(j, seen, "lambda_ssim", c.lambda_ssim);
    read_key(j, seen, "lambda_T", c.lambda_T);
    read_key(j, seen, "lambda_dist", c.lambda_dist);
    read_key(j, seen, "dist_from", c.dist_from);
    read_key(j, seen, "lambda_R", c.lambda_R);
    read_key(j, seen, "lambda_tv", c.lambda_tv);
    read_key(j, seen, "tv_until", c.tv_until);
    read_key(j, seen, "mesh_mode", c.mesh_mode);
    read_key(j, seen, "lambda_n_dmean", c.lambda_n_dmean);
    read_key(j, seen, "n_dmean_from", c.n_dmean_from);
    read_key(j, seen, "lambda_n_dmed", c.lambda_n_dmed);
    read_key(j, seen, "n_dmed_from", c.n_dmed_from);
    read_key(j, seen, "sh_degree", c.sh_degree);
    read_key(j, seen, "seed", c.seed);
    read_key(j, seen, "checkpoint_every", c.checkpoint_every);
    seen.insert("render");
    if (j.contains("render")) {
        const json& r = j.at("render");
        if (!r.is_object()) throw std::invalid_argument("config: render must be an object");
        std::set<std::string> rseen;
        read_key(r, rseen, "K", c.render.K);
        read_key(r, rseen, "t_threshold", c.render.t_threshold);
        read_key(r, rseen, "supersample", c.render.supersample);
        rseen.insert("background");
        if (r.contains("background")) {
            read_vec3(r, rseen, "background", c.render.background);
            c.background_override = true;
        }
        reject_unknown(r, rseen, "render");
    }
    reject_unknown(j, seen, "the top level");
    validate_config(c);
    return c;
}

std::string train_config_to_json(const TrainConfig& c) {
    json j;
    j["init_density"] = c.init_density;
    j["init_level"] = c.init_level;
    j["shell_levels"] = c.shell_levels;
    j["bg_ratio"] = c.bg_ratio;
    j["unbounded"] = c.unbounded;
    j["scene_center"] = {c.scene_center.x, c.scene_center.y, c.scene_center.z};
    j["scene_size"] = c.scene_size;
    j["adapt_every"] = c.adapt_every;
    j["subdivide_until"] = c.subdivide_until;
    j["prune_until"] = c.prune_until;
    j["prune_initial"] = c.prune_initial;
    j["prune_final"] = c.prune_final;
    j["subdiv_percent"] = c.subdiv_percent;
    j["rate_threshold"] = c.rate_threshold;
    j["iterations"] = c.iterations;
    j["lr_density"] = c.lr_density;
    j["lr_sh0"] = c.lr_sh0;
    j["lr_sh_rest"] = c.lr_sh_rest;
    j["lr_decay_at"] = c.lr_decay_at;
    j["lr_decay"] = c.lr_decay;
    j["adam_beta1"] = c.adam_beta1;
    j["adam_beta2"] = c.adam_beta2;
    j["adam_eps"] = c.adam_eps;
    j["lambda_ssim"] = c.lambda_ssim;
    j["lambda_T"] = c.lambda_T;
    j["lambda_dist"] = c.lambda_dist;
    j["dist_from"] = c.dist_from;
    j["lambda_R"] = c.lambda_R;
    j["lambda_tv"] = c.lambda_tv;
    j["tv_until"] = c.tv_until;
    j["mesh_mode"] = c.mesh_mode;
    j["lambda_n_dmean"] = c.lambda_n_dmean;
    j["n_dmean_from"] = c.n_dmean_from;
    j["lambda_n_dmed"] = c.lambda_n_dmed;
    j["n_dmed_from"] = c.n_dmed_from;
    j["sh_degree"] = c.sh_degree;
    j["seed"] = c.seed;
    j["checkpoint_every"] = c.checkpoint_every;
    json r;
    r["K"] = c.render.K;
    r["t_threshold"] = c.render.t_threshold;
    r["supersample"] = c.render.supersample;
    if (c.background_override)
        r["background"] = {c.render.background.x, c.render.background.y, c.render.background.z};
    j["render"] = r;
    return j.dump(2);
}

}  // namespace svr
