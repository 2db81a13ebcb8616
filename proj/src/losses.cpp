#include "svr/losses.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace svr {

namespace {

constexpr int kWin = 11, kHalf = 5;
constexpr double kSsimC1 = 0.01 * 0.01, kSsimC2 = 0.03 * 0.03;

const std::array<double, kWin>& gauss_kernel() {
    static const auto kern = [] {
        std::array<double, kWin> w{};
        double s = 0.0;
        for (int i = 0; i < kWin; ++i) {
            double d = i - kHalf;
            w[i] = std::exp(-0.5 * d * d / (1.5 * 1.5));
            s += w[i];
        }
        for (double& x : w) x /= s;
        return w;
    }();
    return kern;
}

// Valid-mode separable Gaussian blur: output is (W-10) x (H-10).
Image blur_valid(const Image& src) {
    const auto& k = gauss_kernel();
    const int ch = src.channels;
    Image mid(src.width - 2 * kHalf, src.height, ch);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < mid.width; ++x)
            for (int i = 0; i < kWin; ++i)
                for (int c = 0; c < ch; ++c) mid.at(x, y, c) += k[i] * src.at(x + i, y, c);
    Image dst(mid.width, src.height - 2 * kHalf, ch);
    for (int y = 0; y < dst.height; ++y)
        for (int x = 0; x < dst.width; ++x)
            for (int i = 0; i < kWin; ++i)
                for (int c = 0; c < ch; ++c) dst.at(x, y, c) += k[i] * mid.at(x, y + i, c);
    return dst;
}

// Exact adjoint of blur_valid: scatters valid-size gradients back to full size.
Image blur_adjoint(const Image& g, int w, int h) {
    const auto& k = gauss_kernel();
    const int ch = g.channels;
    Image mid(g.width, h, ch);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            for (int i = 0; i < kWin; ++i)
                for (int c = 0; c < ch; ++c) mid.at(x, y + i, c) += k[i] * g.at(x, y, c);
    Image full(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < g.width; ++x)
            for (int i = 0; i < kWin; ++i)
                for (int c = 0; c < ch; ++c) full.at(x + i, y, c) += k[i] * mid.at(x, y, c);
    return full;
}

Image product(const Image& a, const Image& b) {
    Image r(a.width, a.height, a.channels);
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] = a.data[i] * b.data[i];
    return r;
}

// Mean SSIM; when d_a is given, accumulates dL_dmean * d(meanSSIM)/da.
double ssim_core(const Image& a, const Image& b, double dL_dmean, Image* d_a) {
    if (!a.same_shape(b)) throw std::invalid_argument("ssim: image shapes differ");
    if (a.width < kWin || a.height < kWin)
        throw std::invalid_argument("ssim: images smaller than the 11x11 window");

    Image mu_a = blur_valid(a), mu_b = blur_valid(b);
    Image saa = blur_valid(product(a, a)), sbb = blur_valid(product(b, b));
    Image sab = blur_valid(product(a, b));
    const size_t n = mu_a.data.size();
    double total = 0.0;
    // Gradients of the SSIM map wrt mu_a, var_a, cov_ab (valid-size maps).
    Image u1, u2, u3;
    if (d_a) {
        u1 = Image(mu_a.width, mu_a.height, mu_a.channels);
        u2 = u1;
        u3 = u1;
    }
    for (size_t i = 0; i < n; ++i) {
        double ma = mu_a.data[i], mb = mu_b.data[i];
        double va = saa.data[i] - ma * ma;
        double vb = sbb.data[i] - mb * mb;
        double cab = sab.data[i] - ma * mb;
        double n1 = 2.0 * ma * mb + kSsimC1, n2 = 2.0 * cab + kSsimC2;
        double d1 = ma * ma + mb * mb + kSsimC1, d2 = va + vb + kSsimC2;
        double s = (n1 * n2) / (d1 * d2);
        total += s;
        if (d_a) {
            double g = dL_dmean / double(n);
            double ds_dmu = 2.0 * mb * n2 / (d1 * d2) - 2.0 * ma * s / d1;
            double ds_dva = -s / d2;
            double ds_dcab = 2.0 * n1 / (d1 * d2);
            // var_a = blur(a^2) - mu_a^2 and cov = blur(ab) - mu_a mu_b, so the
            // mu_a channel also carries their -2mu_a and -mu_b terms.
            u1.data[i] = g * (ds_dmu - 2.0 * ma * ds_dva - mb * ds_dcab);
            u2.data[i] = g * ds_dva;   // pairs with blur(a^2)
            u3.data[i] = g * ds_dcab;  // pairs with blur(ab)
        }
    }
    if (d_a) {
        Image g1 = blur_adjoint(u1, a.width, a.height);
        Image g2 = blur_adjoint(u2, a.width, a.height);
        Image g3 = blur_adjoint(u3, a.width, a.height);
        for (size_t i = 0; i < a.data.size(); ++i)
            d_a->data[i] += g1.data[i] + 2.0 * a.data[i] * g2.data[i] + b.data[i] * g3.data[i];
    }
    return total / double(n);
}

}  // namespace

double mse_loss(const Image& a, const Image& b, double weight, Image* d_a) {
    if (!a.same_shape(b)) throw std::invalid_argument("mse: image shapes differ");
    const double inv_n = 1.0 / double(a.data.size());
    double total = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        double e = a.data[i] - b.data[i];
        total += e * e;
        if (d_a) d_a->data[i] += weight * 2.0 * e * inv_n;
    }
    return total * inv_n;
}

double ssim(const Image& a, const Image& b) { return ssim_core(a, b, 0.0, nullptr); }

double ssim_loss(const Image& a, const Image& b, double weight, Image* d_a) {
    if (d_a && !d_a->same_shape(a)) throw std::invalid_argument("ssim: gradient shape differs");
    return weight == 0.0 && !d_a ? 1.0 - ssim_core(a, b, 0.0, nullptr)
                                 : 1.0 - ssim_core(a, b, -weight, d_a);
}

RayLossValues ray_losses(const SparseScene& scene, const ForwardRecords& records,
                         const Image& gt, const RayLossWeights& weights, UpstreamGrads& grads) {
    (void)scene;
    const Camera& cam = records.ss_cam;
    const int sw = cam.width, sh = cam.height;
    const size_t nc = records.contribs.size();
    const double inv_rays = 1.0 / (double(sw) * sh);
    if (!grads.d_tfin_ss.empty() && grads.d_tfin_ss.size() != size_t(sw) * sh)
        throw std::invalid_argument("ray_losses: d_tfin_ss size mismatch");
    if (weights.w_T != 0.0 && grads.d_tfin_ss.empty())
        grads.d_tfin_ss.assign(size_t(sw) * sh, 0.0);
    if ((weights.w_dist != 0.0 || weights.w_R != 0.0) && grads.d_weight.empty())
        grads.d_weight.assign(nc, 0.0);
    if (weights.w_R != 0.0 && grads.d_voxel_color.empty())
        grads.d_voxel_color.assign(nc, Vec3{});

    RayLossValues out;

    if (weights.w_T != 0.0) {
        constexpr double eps = 1e-6;
        for (int py = 0; py < sh; ++py)
            for (int px = 0; px < sw; ++px) {
                size_t pix = size_t(py) * sw + px;
                double T = records.ss_tfin.at(px, py);
                double Tc = std::clamp(T, eps, 1.0 - eps);
                out.l_T += -(Tc * std::log(Tc) + (1.0 - Tc) * std::log(1.0 - Tc)) * inv_rays;
                if (T > eps && T < 1.0 - eps)
                    grads.d_tfin_ss[pix] +=
                        weights.w_T * (std::log(1.0 - Tc) - std::log(Tc)) * inv_rays;
            }
    }

    if (weights.w_dist == 0.0 && weights.w_R == 0.0) return out;

    std::vector<double> w, m, dl;
    for (int py = 0; py < sh; ++py)
        for (int px = 0; px < sw; ++px) {
            size_t pix = size_t(py) * sw + px;
            uint32_t n = records.pix_count[pix];
            if (n == 0) continue;
            uint32_t base = records.pix_begin[pix];
            Ray ray = cam.pixel_ray(px, py);
            w.assign(n, 0.0);
            m.assign(n, 0.0);
            dl.assign(n, 0.0);
            double T = 1.0;
            for (uint32_t i = 0; i < n; ++i) {
                const Contrib& c = records.contribs[base + i];
                const PreVoxel& pv = records.pre[c.pre];
                RaySegment seg{c.a, c.b, true};
                double alpha =
                    voxel_alpha(pv.V, pv.center, pv.size, seg, ray, records.opts.K, nullptr);
                w[i] = T * alpha;
                m[i] = 0.5 * (c.a + c.b);
                dl[i] = c.b - c.a;
                T *= 1.0 - alpha;
            }
            if (weights.w_dist != 0.0) {
                // Bi-directional term via prefix sums over ascending midpoints
                // (segments are disjoint front-to-back), plus the
                // intra-segment term w^2 * len / 3.
                double Wpre = 0.0, Spre = 0.0, loss = 0.0;
                std::vector<double> grad(n, 0.0);
                for (uint32_t i = 0; i < n; ++i) {
                    loss += 2.0 * w[i] * (m[i] * Wpre - Spre);
                    grad[i] += 2.0 * (m[i] * Wpre - Spre);
                    loss += w[i] * w[i] * dl[i] / 3.0;
                    grad[i] += 2.0 * w[i] * dl[i] / 3.0;
                    Wpre += w[i];
                    Spre += w[i] * m[i];
                }
                // Suffix half of d|m_i - m_j|.
                double Wsuf = 0.0, Ssuf = 0.0;
                for (int i = int(n) - 1; i >= 0; --i) {
                    grad[i] += 2.0 * (Ssuf - m[i] * Wsuf);
                    Wsuf += w[i];
                    Ssuf += w[i] * m[i];
                }
                out.l_dist += loss * inv_rays;
                for (uint32_t i = 0; i < n; ++i)
                    grads.d_weight[base + i] += weights.w_dist * grad[i] * inv_rays;
            }
            if (weights.w_R != 0.0) {
                int gx = std::min(gt.width - 1, px * gt.width / sw);
                int gy = std::min(gt.height - 1, py * gt.height / sh);
                Vec3 g{gt.at(gx, gy, 0), gt.at(gx, gy, 1), gt.at(gx, gy, 2)};
                for (uint32_t i = 0; i < n; ++i) {
                    const Vec3& c = records.pre[records.contribs[base + i].pre].color;
                    Vec3 e = c - g;
                    double err = dot(e, e);
                    out.l_R += w[i] * err * inv_rays;
                    grads.d_weight[base + i] += weights.w_R * err * inv_rays;
                    grads.d_voxel_color[base + i] += (weights.w_R * w[i] * 2.0 * inv_rays) * e;
                }
            }
        }
    return out;
}

double tv_loss(const SparseScene& scene, const PoolsD& pools, double weight,
               std::vector<double>* grad_density) {
    const size_t n = scene.voxel_count();
    if (n == 0) return 0.0;
    // Mean over the 12 edges of each voxel, then mean over voxels.
    const double inv_n = 1.0 / (12.0 * double(n));
    double total = 0.0;
    for (size_t vi = 0; vi < n; ++vi) {
        double size = scene.geometry_of(vi).second;
        std::array<double, 8> act, der;
        for (int c = 0; c < 8; ++c) {
            double v = pools.density[scene.corner_index[vi][c]];
            act[c] = explin(v);
            der[c] = explin_deriv(v);
        }
        for (int c = 0; c < 8; ++c)
            for (int bit : {4, 2, 1}) {
                if (c & bit) continue;
                int d = c | bit;
                double diff = act[c] - act[d];
                total += size * diff * diff * inv_n;
                if (grad_density) {
                    double g = weight * 2.0 * size * diff * inv_n;
                    (*grad_density)[scene.corner_index[vi][c]] += g * der[c];
                    (*grad_density)[scene.corner_index[vi][d]] -= g * der[d];
                }
            }
    }
    return total;
}

double normal_depth_loss(const Camera& cam, const Image& normal_img, const Image& depth_img,
                         double weight, bool depth_differentiable, double depth_sentinel,
                         Image* d_normal, Image* d_depth) {
    const int W = cam.width, H = cam.height;
    if (normal_img.width != W || normal_img.height != H || depth_img.width != W ||
        depth_img.height != H)
        throw std::invalid_argument("normal_depth_loss: image size mismatch");
    const double dmax = 0.5 * depth_sentinel;

    auto cam_dir = [&](int x, int y) {
        return Vec3{(x + 0.5 - cam.cx) / cam.fx, (y + 0.5 - cam.cy) / cam.fy, 1.0};
    };

    struct Term {
        int x, y;
        Vec3 nr;       // unit rendered normal (world)
        Vec3 gr_cam;   // -R^T nr, upstream into the depth normal (camera frame)
        double nr_len;
        Vec3 n_raw;    // unnormalized rendered normal
        Vec3 nd;       // unit depth normal (world)
    };
    std::vector<Term> terms;
    double total = 0.0;
    int valid = 0;

    // First pass: count valid pixels so the mean normalization is known before
    // scattering gradients.
    for (int y = 1; y < H - 1; ++y)
        for (int x = 1; x < W - 1; ++x) {
            double dc = depth_img.at(x, y);
            double dxm = depth_img.at(x - 1, y), dxp = depth_img.at(x + 1, y);
            double dym = depth_img.at(x, y - 1), dyp = depth_img.at(x, y + 1);
            if (dc >= dmax || dxm >= dmax || dxp >= dmax || dym >= dmax || dyp >= dmax) continue;
            Vec3 n_raw{normal_img.at(x, y, 0), normal_img.at(x, y, 1), normal_img.at(x, y, 2)};
            double nlen = norm(n_raw);
            if (nlen < 1e-8) continue;
            Vec3 nr = n_raw / nlen;

            Vec3 Pu = 0.5 * (dxp * cam_dir(x + 1, y) - dxm * cam_dir(x - 1, y));
            Vec3 Pv = 0.5 * (dyp * cam_dir(x, y + 1) - dym * cam_dir(x, y - 1));
            Vec3 g = cross(Pu, Pv);
            double glen = norm(g);
            if (glen < 1e-12) continue;
            Vec3 nd_cam = g / glen;
            Vec3 nd = cam.rot * nd_cam;
            // Orient the depth normal into the rendered normal's hemisphere;
            // the sign of cross(Pu, Pv) is a parametrization artifact.
            double sgn = dot(nd, nr) >= 0.0 ? 1.0 : -1.0;
            nd = sgn * nd;

            total += 1.0 - dot(nr, nd);
            ++valid;
            if (d_normal || (d_depth && depth_differentiable)) {
                Term t;
                t.x = x;
                t.y = y;
                t.nr = nr;
                t.nr_len = nlen;
                t.n_raw = n_raw;
                t.nd = nd;
                // dL/d(nd_cam) before normalization, world->camera.
                t.gr_cam = sgn * (cam.rot.transposed() * (-1.0 * nr));
                terms.push_back(t);
            }
        }
    if (valid == 0) return 0.0;
    const double inv = 1.0 / double(valid);

    for (const Term& t : terms) {
        double scale = weight * inv;
        if (d_normal) {
            // d(1 - nr.nd)/d(n_raw) through the normalization Jacobian.
            Vec3 dnr = -1.0 * t.nd;
            Vec3 g = (dnr - t.nr * dot(dnr, t.nr)) / t.nr_len;
            d_normal->at(t.x, t.y, 0) += scale * g.x;
            d_normal->at(t.x, t.y, 1) += scale * g.y;
            d_normal->at(t.x, t.y, 2) += scale * g.z;
        }
        if (d_depth && depth_differentiable) {
            int x = t.x, y = t.y;
            double dxm = depth_img.at(x - 1, y), dxp = depth_img.at(x + 1, y);
            double dym = depth_img.at(x, y - 1), dyp = depth_img.at(x, y + 1);
            Vec3 Pu = 0.5 * (dxp * cam_dir(x + 1, y) - dxm * cam_dir(x - 1, y));
            Vec3 Pv = 0.5 * (dyp * cam_dir(x, y + 1) - dym * cam_dir(x, y - 1));
            Vec3 g = cross(Pu, Pv);
            double glen = norm(g);
            Vec3 nhat = normalized(g);
            // dL/dg through normalize (sign folded into gr_cam already).
            Vec3 dg = (t.gr_cam - nhat * dot(t.gr_cam, nhat)) / glen;
            // g = cross(Pu, Pv): dL/dPu = Pv x dg, dL/dPv = dg x Pu.
            Vec3 dPu = cross(Pv, dg), dPv = cross(dg, Pu);
            d_depth->at(x + 1, y) += scale * 0.5 * dot(dPu, cam_dir(x + 1, y));
            d_depth->at(x - 1, y) -= scale * 0.5 * dot(dPu, cam_dir(x - 1, y));
            d_depth->at(x, y + 1) += scale * 0.5 * dot(dPv, cam_dir(x, y + 1));
            d_depth->at(x, y - 1) -= scale * 0.5 * dot(dPv, cam_dir(x, y - 1));
        }
    }
    return total * inv;
}

}  // namespace svr
