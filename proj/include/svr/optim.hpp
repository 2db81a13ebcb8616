#pragma once

// Progressive optimization: scene initialization (bounded dense grid and
// unbounded multi-level shells), voxel sampling rate, pruning and subdivision
// with parameter/optimizer-state remapping, the Adam variant, and the training
// loop with all schedules.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "svr/dataset.hpp"
#include "svr/raster.hpp"
#include "svr/scene.hpp"

namespace svr {

struct TrainConfig {
    // Layout / initialization
    double init_density = -10.0;  // raw density at init
    int init_level = 6;           // dense-grid octree level
    int shell_levels = 5;         // background shell count (unbounded)
    double bg_ratio = 2.0;        // target background/foreground voxel ratio
    bool unbounded = false;
    Vec3 scene_center{0, 0, 0};   // bounded scenes: known region
    double scene_size = 1.0;

    // Adaptation
    int adapt_every = 1000;
    int subdivide_until = 15000;
    int prune_until = 18000;
    double prune_initial = 0.0001;
    double prune_final = 0.05;
    double subdiv_percent = 5.0;
    double rate_threshold = 1.0;  // subdivision needs rate >= 2 * this

    // Optimizer
    int iterations = 20000;
    double lr_density = 0.025;
    double lr_sh0 = 0.01;
    double lr_sh_rest = 0.00025;
    int lr_decay_at = 19000;
    double lr_decay = 0.1;
    double adam_beta1 = 0.1;
    double adam_beta2 = 0.99;
    double adam_eps = 1e-15;

    // Loss weights and their schedules
    double lambda_ssim = 0.02;
    double lambda_T = 0.01;
    double lambda_dist = 0.1;
    int dist_from = 10000;
    double lambda_R = 0.01;
    double lambda_tv = 1e-10;
    int tv_until = 10000;
    bool mesh_mode = false;
    double lambda_n_dmean = 0.001;
    int n_dmean_from = 10000;
    double lambda_n_dmed = 0.001;
    int n_dmed_from = 3000;

    int sh_degree = 3;
    RenderOptions render;  // K, t_threshold, supersample; background is
                           // derived from the dataset unless overridden
    bool background_override = false;

    uint64_t seed = 0;
    int checkpoint_every = 5000;
};

// Parses a JSON object mirroring TrainConfig field-for-field (RenderOptions
// under "render"). Unknown keys are rejected.
TrainConfig parse_train_config(const std::string& json_text);
std::string train_config_to_json(const TrainConfig& cfg);

// Eq.-style maximum sampling rate of a voxel over the cameras: voxel size over
// the z-distance times the camera's unit-distance pixel size. Cameras with the
// voxel center behind them are skipped; all behind -> 0.
double max_sampling_rate(const Vec3& center, double size, const std::vector<Camera>& cams);

SparseScene init_bounded(const SceneBounds& bounds, const std::vector<Camera>& cams,
                         const TrainConfig& cfg);
SparseScene init_unbounded(const std::vector<Camera>& cams, const TrainConfig& cfg);

// Old->new bookkeeping after prune/subdivide so optimizer state can follow
// the parameters.
struct AdaptRemap {
    std::vector<int64_t> pool_src;   // per new pool entry: old index, or -1
    std::vector<int64_t> voxel_src;  // per new voxel: old index, or -1 (fresh child)
};

SparseScene prune(const SparseScene& scene, const std::vector<double>& max_blend_weight,
                  double threshold, AdaptRemap* remap = nullptr);

// Subdivides the given voxels (deduplicated, level-16 entries skipped):
// children sample the parent's trilinear field at their corners; values for
// brand-new grid points are averaged over the parents producing them, existing
// grid points keep their stored value. SH is copied to all children.
SparseScene subdivide_voxels(const SparseScene& scene, const std::vector<uint32_t>& selected,
                             AdaptRemap* remap = nullptr);

// Priority-driven selection: top subdiv_percent% of the scene's voxels by
// priority among those with positive priority, rate >= 2*rate_threshold and
// level < 16.
std::vector<uint32_t> select_for_subdivision(const SparseScene& scene,
                                             const std::vector<double>& priority,
                                             const std::vector<double>& rates,
                                             const TrainConfig& cfg);

struct AdamState {
    std::vector<double> m, v;
    int64_t step = 0;
};

// One Adam update over a float parameter pool. `lr_of` maps a parameter index
// to its learning rate (null -> uniform base_lr). Throws on NaN gradients.
void adam_step(std::vector<float>& params, const std::vector<double>& grads, AdamState& state,
               double base_lr, const std::function<double(size_t)>& lr_of = nullptr,
               double beta1 = 0.1, double beta2 = 0.99, double eps = 1e-15);

struct TrainLogEntry {
    int iteration = 0;
    double l_mse = 0, l_ssim = 0, l_T = 0, l_dist = 0, l_R = 0, l_tv = 0;
    double l_ndmean = 0, l_ndmed = 0;
    double total = 0;
    size_t voxel_count = 0, pool_count = 0;
};

struct TrainResult {
    SparseScene scene;
    std::vector<TrainLogEntry> log;
};

// Full training loop. `checkpoint` (optional) is invoked every
// checkpoint_every iterations and at the end. `log_stream` (optional) receives
// one line per iteration.
TrainResult train(const Dataset& data, const TrainConfig& cfg,
                  const std::function<void(int, const SparseScene&)>& checkpoint = nullptr,
                  std::ostream* log_stream = nullptr);

}  // namespace svr
