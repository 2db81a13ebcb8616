#pragma once

#include <cmath>
#include <stdexcept>

#include "svr/geom.hpp"

namespace svr {

// Pinhole camera: intrinsics in pixels plus a rigid camera-to-world pose.
// The camera looks along +z in its own frame; pixel (u,v) with integer pixel
// coordinates maps to camera-frame direction ((u+0.5-cx)/fx, (v+0.5-cy)/fy, 1).
struct Camera {
    int width = 0, height = 0;
    double fx = 0, fy = 0, cx = 0, cy = 0;
    Mat3 rot;   // camera-to-world rotation
    Vec3 pos;   // camera position in world

    Vec3 lookat() const { return rot.col(2); }
    double fov_x() const { return 2.0 * std::atan(0.5 * width / fx); }

    // Ray through the center of pixel (px, py); direction is unnormalized
    // (camera-frame z component is 1, so the ray parameter equals z-depth).
    Ray pixel_ray(double px, double py) const {
        Vec3 d{(px + 0.5 - cx) / fx, (py + 0.5 - cy) / fy, 1.0};
        return {pos, rot * d};
    }

    Vec3 world_to_cam(const Vec3& p) const { return rot.transposed() * (p - pos); }

    // Continuous image coordinates in [0, W] x [0, H]; caller checks z > 0.
    Vec3 project(const Vec3& p) const {
        Vec3 c = world_to_cam(p);
        return {fx * c.x / c.z + cx, fy * c.y / c.z + cy, c.z};
    }

    // Rescale resolution (and intrinsics with it) by independent factors.
    Camera scaled(int new_w, int new_h) const {
        Camera s = *this;
        double rx = double(new_w) / width, ry = double(new_h) / height;
        s.width = new_w;
        s.height = new_h;
        s.fx = fx * rx;
        s.cx = cx * rx;
        s.fy = fy * ry;
        s.cy = cy * ry;
        return s;
    }
};

inline void check_rotation(const Mat3& r, double tol = 1e-4) {
    Mat3 rtr = r.transposed() * r;
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double id = (i == j) ? 1.0 : 0.0;
            double d = rtr(i, j) - id;
            dev += d * d;
        }
    if (std::sqrt(dev) > tol) throw std::invalid_argument("camera pose rotation is not orthonormal");
}

}  // namespace svr
