#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace svr {

// Dense row-major image buffer, double precision, interleaved channels.
struct Image {
    int width = 0, height = 0, channels = 1;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c) : width(w), height(h), channels(c), data(size_t(w) * h * c, 0.0) {}

    double& at(int x, int y, int c = 0) { return data[(size_t(y) * width + x) * channels + c]; }
    double at(int x, int y, int c = 0) const {
        return data[(size_t(y) * width + x) * channels + c];
    }

    size_t pixel_count() const { return size_t(width) * height; }
    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
};

// Exact area-averaging resampler between two resolutions (box filter over the
// fractional source footprint of each destination pixel). Linear, so it has an
// exact adjoint for backpropagation.
class AreaResampler {
public:
    AreaResampler(int src_w, int src_h, int dst_w, int dst_h);

    Image downsample(const Image& src) const;
    // Adjoint of downsample: scatters destination-level gradients to source.
    Image adjoint(const Image& dst_grad) const;

    int src_w() const { return src_w_; }
    int src_h() const { return src_h_; }

private:
    struct Tap {
        int src;
        double w;
    };
    // Per destination index: contiguous taps into the source axis.
    static std::vector<std::vector<Tap>> axis_taps(int src, int dst);

    int src_w_, src_h_, dst_w_, dst_h_;
    std::vector<std::vector<Tap>> taps_x_, taps_y_;
};

}  // namespace svr
