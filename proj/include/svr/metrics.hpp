#pragma once

#include <cmath>

#include "svr/losses.hpp"

namespace svr {

// PSNR in dB from mean squared error over all pixels/channels; identical
// images report the 99 dB cap.
inline double metric_psnr(const Image& a, const Image& b) {
    double mse = mse_loss(a, b, 0.0, nullptr);
    if (mse <= 0.0) return 99.0;
    return std::min(99.0, -10.0 * std::log10(mse));
}

inline double metric_ssim(const Image& a, const Image& b) { return ssim(a, b); }

}  // namespace svr
