#pragma once

// Real spherical harmonics up to degree 3 for view-dependent voxel color.

#include <array>
#include <cmath>
#include <stdexcept>

#include "svr/geom.hpp"

namespace svr {

inline constexpr int kMaxShDegree = 3;

inline constexpr int sh_coeff_count(int degree) { return (degree + 1) * (degree + 1); }

// Basis values at a unit direction, standard real SH constants, 3DGS ordering.
inline std::array<double, 16> sh_basis(int degree, const Vec3& d) {
    if (degree < 0 || degree > kMaxShDegree) throw std::invalid_argument("SH degree out of [0,3]");
    std::array<double, 16> b{};
    b[0] = 0.28209479177387814;
    if (degree < 1) return b;
    const double x = d.x, y = d.y, z = d.z;
    constexpr double C1 = 0.4886025119029199;
    b[1] = -C1 * y;
    b[2] = C1 * z;
    b[3] = -C1 * x;
    if (degree < 2) return b;
    const double xx = x * x, yy = y * y, zz = z * z;
    const double xy = x * y, yz = y * z, xz = x * z;
    b[4] = 1.0925484305920792 * xy;
    b[5] = -1.0925484305920792 * yz;
    b[6] = 0.31539156525252005 * (2.0 * zz - xx - yy);
    b[7] = -1.0925484305920792 * xz;
    b[8] = 0.5462742152960396 * (xx - yy);
    if (degree < 3) return b;
    b[9] = -0.5900435899266435 * y * (3.0 * xx - yy);
    b[10] = 2.890611442640554 * xy * z;
    b[11] = -0.4570457994644658 * y * (4.0 * zz - xx - yy);
    b[12] = 0.3731763325901154 * z * (2.0 * zz - 3.0 * xx - 3.0 * yy);
    b[13] = -0.4570457994644658 * x * (4.0 * zz - xx - yy);
    b[14] = 1.445305721320277 * z * (xx - yy);
    b[15] = -0.5900435899266435 * x * (xx - 3.0 * yy);
    return b;
}

// coeffs layout: [coeff][channel], i.e. coeffs[3*m + ch], m < (degree+1)^2.
inline Vec3 sh_eval(const double* coeffs, int degree, const Vec3& unit_dir) {
    auto b = sh_basis(degree, unit_dir);
    int n = sh_coeff_count(degree);
    Vec3 c{};
    for (int m = 0; m < n; ++m) {
        c.x += b[m] * coeffs[3 * m + 0];
        c.y += b[m] * coeffs[3 * m + 1];
        c.z += b[m] * coeffs[3 * m + 2];
    }
    return {std::max(0.0, c.x), std::max(0.0, c.y), std::max(0.0, c.z)};
}

// Backward through the clamp: channels clamped to zero receive no gradient.
// Accumulates into grad_coeffs (same layout as coeffs).
inline void sh_eval_backward(const double* coeffs, int degree, const Vec3& unit_dir,
                             const Vec3& dL_dc, double* grad_coeffs) {
    auto b = sh_basis(degree, unit_dir);
    int n = sh_coeff_count(degree);
    Vec3 raw{};
    for (int m = 0; m < n; ++m) {
        raw.x += b[m] * coeffs[3 * m + 0];
        raw.y += b[m] * coeffs[3 * m + 1];
        raw.z += b[m] * coeffs[3 * m + 2];
    }
    double gx = raw.x > 0.0 ? dL_dc.x : 0.0;
    double gy = raw.y > 0.0 ? dL_dc.y : 0.0;
    double gz = raw.z > 0.0 ? dL_dc.z : 0.0;
    for (int m = 0; m < n; ++m) {
        grad_coeffs[3 * m + 0] += b[m] * gx;
        grad_coeffs[3 * m + 1] += b[m] * gy;
        grad_coeffs[3 * m + 2] += b[m] * gz;
    }
}

// Degree-0 coefficient producing a given constant intensity.
inline double sh_dc_for_intensity(double intensity) { return intensity / 0.28209479177387814; }

}  // namespace svr
