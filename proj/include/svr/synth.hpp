#pragma once

// Synthetic ground truth: analytic shapes baked into sparse-voxel scenes with
// known densities and colors, ring cameras, and oracle-rendered datasets.

#include <string>
#include <vector>

#include "svr/dataset.hpp"
#include "svr/scene.hpp"

namespace svr {

enum class SynthShape { Sphere, Cube, Boxes, Mixed };

SynthShape parse_shape(const std::string& name);

// Signed distance of the analytic shape (negative inside), unit scene frame.
double synth_sdf(SynthShape shape, const Vec3& p);

// Bakes the shape into a unit scene: uniform-level voxels allocated in a band
// around the surface, densities ramping to opaque inside, per-voxel constant
// colors from a smooth position-dependent palette.
SparseScene synth_scene(SynthShape shape, int level = 6);

// Cameras on a ring around the y axis (alternating elevation), looking at the
// origin.
std::vector<Camera> ring_cameras(int n_views, int width, int height, double distance = 1.3,
                                 double fov_x_deg = 55.0);

// Renders the scene with the oracle (K=8) and writes images, depth maps and
// cameras.json into out_dir. Returns the in-memory dataset.
Dataset synth_dataset(SynthShape shape, int n_views, int resolution, const std::string& out_dir,
                      int level = 6);

}  // namespace svr
