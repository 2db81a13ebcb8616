#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "svr/image.hpp"

using namespace svr;

namespace {

Image random_image(std::mt19937_64& rng, int w, int h, int c) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Image img(w, h, c);
    for (auto& v : img.data) v = u(rng);
    return img;
}

}  // namespace

TEST_CASE("identity resampling") {
    std::mt19937_64 rng(1);
    Image src = random_image(rng, 7, 5, 3);
    AreaResampler rs(7, 5, 7, 5);
    Image dst = rs.downsample(src);
    for (size_t i = 0; i < src.data.size(); ++i) CHECK(dst.data[i] == doctest::Approx(src.data[i]));
}

TEST_CASE("2x box downsample averages quads") {
    Image src(4, 4, 1);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) src.at(x, y) = x + 10 * y;
    AreaResampler rs(4, 4, 2, 2);
    Image dst = rs.downsample(src);
    CHECK(dst.at(0, 0) == doctest::Approx((0 + 1 + 10 + 11) / 4.0));
    CHECK(dst.at(1, 0) == doctest::Approx((2 + 3 + 12 + 13) / 4.0));
    CHECK(dst.at(1, 1) == doctest::Approx((22 + 23 + 32 + 33) / 4.0));
}

TEST_CASE("partition of unity: constant images stay constant") {
    // Non-integer ratios exercise the fractional footprints.
    for (auto [sw, sh, dw, dh] : {std::array<int, 4>{13, 9, 8, 5},
                                  std::array<int, 4>{96, 96, 64, 64},
                                  std::array<int, 4>{10, 7, 3, 2}}) {
        Image src(sw, sh, 2);
        for (auto& v : src.data) v = 0.625;
        AreaResampler rs(sw, sh, dw, dh);
        Image dst = rs.downsample(src);
        CHECK(dst.width == dw);
        CHECK(dst.height == dh);
        for (double v : dst.data) CHECK(v == doctest::Approx(0.625).epsilon(1e-13));
    }
}

TEST_CASE("energy conservation: total weighted sums agree") {
    std::mt19937_64 rng(2);
    Image src = random_image(rng, 12, 10, 1);
    AreaResampler rs(12, 10, 5, 4);
    Image dst = rs.downsample(src);
    // Each destination pixel is an average over its footprint with footprint
    // area (12/5)*(10/4); summing dst * area recovers the source sum.
    double src_sum = 0, dst_sum = 0;
    for (double v : src.data) src_sum += v;
    for (double v : dst.data) dst_sum += v;
    CHECK(dst_sum * (12.0 / 5) * (10.0 / 4) == doctest::Approx(src_sum).epsilon(1e-12));
}

TEST_CASE("adjoint is exact: <A x, y> == <x, A^T y>") {
    std::mt19937_64 rng(3);
    for (auto [sw, sh, dw, dh] :
         {std::array<int, 4>{9, 6, 4, 3}, std::array<int, 4>{15, 11, 10, 7},
          std::array<int, 4>{6, 6, 6, 6}}) {
        AreaResampler rs(sw, sh, dw, dh);
        for (int trial = 0; trial < 5; ++trial) {
            Image x = random_image(rng, sw, sh, 3);
            Image y = random_image(rng, dw, dh, 3);
            Image ax = rs.downsample(x);
            Image aty = rs.adjoint(y);
            CHECK(aty.width == sw);
            CHECK(aty.height == sh);
            double lhs = 0, rhs = 0;
            for (size_t i = 0; i < ax.data.size(); ++i) lhs += ax.data[i] * y.data[i];
            for (size_t i = 0; i < x.data.size(); ++i) rhs += x.data[i] * aty.data[i];
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("image indexing is row-major interleaved") {
    Image img(3, 2, 2);
    img.at(2, 1, 1) = 9.0;
    CHECK(img.data[(1 * 3 + 2) * 2 + 1] == 9.0);
    CHECK(img.pixel_count() == 6);
    CHECK(img.same_shape(Image(3, 2, 2)));
    CHECK_FALSE(img.same_shape(Image(2, 3, 2)));
}
