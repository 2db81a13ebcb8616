#pragma once

// File formats: PNG color images, raw f32 depth maps, cameras.json,
// the SVRX checkpoint container, and OBJ meshes.

#include <string>
#include <vector>

#include "svr/dataset.hpp"
#include "svr/mesh.hpp"
#include "svr/scene.hpp"

namespace svr {

// 8-bit RGB PNG; intensities are mapped linearly to/from [0,1].
Image load_png(const std::string& path);
void save_png(const Image& img, const std::string& path);

// Depth maps: "DPTH" | width u32 | height u32 | f32 row-major, little-endian.
Image load_depth(const std::string& path);
void save_depth(const Image& img, const std::string& path);

struct CameraFrame {
    std::string image;  // file name relative to the dataset directory
    Camera cam;
};

// cameras.json: {frames: [{image, width, height, fx, fy, cx, cy,
// c2w[16 row-major camera-to-world]}]}. Canonical formatting: load followed
// by save is byte-identical. Rejects non-rigid poses.
std::vector<CameraFrame> load_cameras(const std::string& path);
void save_cameras(const std::vector<CameraFrame>& frames, const std::string& path);

// Loads cameras.json plus every referenced image from a dataset directory.
Dataset load_dataset(const std::string& dir);

// SVRX checkpoint container; lossless (bit-identical render after reload).
void save_checkpoint(const SparseScene& scene, const std::string& path);
SparseScene load_checkpoint(const std::string& path);

// ASCII OBJ, v/f records only.
void save_obj(const TriangleMesh& mesh, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace svr
