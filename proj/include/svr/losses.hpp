#pragma once

// Training losses: photometric (MSE, SSIM), per-ray regularizers
// (transmittance entropy, distortion, per-voxel rgb), total variation on the
// density grid, and depth-normal consistency. Each loss returns its value and
// accumulates analytic gradients into the upstream-gradient buffers consumed
// by render_backward.

#include "svr/image.hpp"
#include "svr/raster.hpp"

namespace svr {

// Mean squared error over all pixels and channels; accumulates
// weight * dL/da into d_a when given.
double mse_loss(const Image& a, const Image& b, double weight, Image* d_a);

// Mean SSIM (11x11 Gaussian window, sigma 1.5, C1=0.01^2, C2=0.03^2,
// channel-averaged, valid-window positions only).
double ssim(const Image& a, const Image& b);

// L_ssim = 1 - SSIM; accumulates weight * dL/da into d_a when given.
double ssim_loss(const Image& a, const Image& b, double weight, Image* d_a);

struct RayLossWeights {
    double w_T = 0.0;     // transmittance entropy
    double w_dist = 0.0;  // distortion
    double w_R = 0.0;     // per-voxel rgb
};

struct RayLossValues {
    double l_T = 0.0, l_dist = 0.0, l_R = 0.0;
};

// Per-ray losses over the supersampled forward records. `gt` is the
// target-resolution ground-truth image; each supersampled ray reads the
// ground-truth pixel its footprint falls in. Gradients are accumulated into
// `grads` (d_tfin_ss, d_weight, d_voxel_color), already weighted.
RayLossValues ray_losses(const SparseScene& scene, const ForwardRecords& records,
                         const Image& gt, const RayLossWeights& weights, UpstreamGrads& grads);

// Total variation of the activated density over each voxel's 12 edges,
// scaled by voxel size and averaged over voxels. Accumulates weighted
// gradients into grad_density when given.
double tv_loss(const SparseScene& scene, const PoolsD& pools, double weight,
               std::vector<double>* grad_density);

// Cosine consistency between the rendered normal image and normals derived
// from central differences of a depth map back-projected to camera space.
// When depth_differentiable is false the depth map is a detached target
// (median-depth variant). Gradients are accumulated, already weighted.
double normal_depth_loss(const Camera& cam, const Image& normal_img, const Image& depth_img,
                         double weight, bool depth_differentiable, double depth_sentinel,
                         Image* d_normal, Image* d_depth);

}  // namespace svr
