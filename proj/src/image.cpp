#include "svr/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svr {

std::vector<std::vector<AreaResampler::Tap>> AreaResampler::axis_taps(int src, int dst) {
    double scale = double(src) / dst;
    std::vector<std::vector<Tap>> taps(dst);
    for (int d = 0; d < dst; ++d) {
        double lo = d * scale, hi = (d + 1) * scale;
        int s0 = int(lo), s1 = std::min(src - 1, int(std::ceil(hi)) - 1);
        for (int s = s0; s <= s1; ++s) {
            double overlap = std::min(hi, double(s + 1)) - std::max(lo, double(s));
            if (overlap > 0) taps[d].push_back({s, overlap / scale});
        }
    }
    return taps;
}

AreaResampler::AreaResampler(int src_w, int src_h, int dst_w, int dst_h)
    : src_w_(src_w), src_h_(src_h), dst_w_(dst_w), dst_h_(dst_h) {
    if (src_w < dst_w || src_h < dst_h)
        throw std::invalid_argument("AreaResampler only downsamples");
    taps_x_ = axis_taps(src_w, dst_w);
    taps_y_ = axis_taps(src_h, dst_h);
}

Image AreaResampler::downsample(const Image& src) const {
    const int ch = src.channels;
    // Horizontal pass, then vertical.
    Image mid(dst_w_, src_h_, ch);
    for (int y = 0; y < src_h_; ++y)
        for (int x = 0; x < dst_w_; ++x)
            for (const Tap& t : taps_x_[x])
                for (int c = 0; c < ch; ++c) mid.at(x, y, c) += t.w * src.at(t.src, y, c);
    Image dst(dst_w_, dst_h_, ch);
    for (int y = 0; y < dst_h_; ++y)
        for (const Tap& t : taps_y_[y])
            for (int x = 0; x < dst_w_; ++x)
                for (int c = 0; c < ch; ++c) dst.at(x, y, c) += t.w * mid.at(x, t.src, c);
    return dst;
}

Image AreaResampler::adjoint(const Image& dst_grad) const {
    const int ch = dst_grad.channels;
    Image mid(dst_w_, src_h_, ch);
    for (int y = 0; y < dst_h_; ++y)
        for (const Tap& t : taps_y_[y])
            for (int x = 0; x < dst_w_; ++x)
                for (int c = 0; c < ch; ++c) mid.at(x, t.src, c) += t.w * dst_grad.at(x, y, c);
    Image src(src_w_, src_h_, ch);
    for (int y = 0; y < src_h_; ++y)
        for (int x = 0; x < dst_w_; ++x)
            for (const Tap& t : taps_x_[x])
                for (int c = 0; c < ch; ++c) src.at(t.src, y, c) += t.w * mid.at(x, y, c);
    return src;
}

}  // namespace svr
