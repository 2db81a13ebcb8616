// Command-line front end: synth | train | render | mesh | eval.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "svr/io.hpp"
#include "svr/mesh.hpp"
#include "svr/metrics.hpp"
#include "svr/optim.hpp"
#include "svr/raster.hpp"
#include "svr/synth.hpp"

namespace fs = std::filesystem;
using namespace svr;

namespace {

int cmd_synth(const std::string& shape, int views, int res, const std::string& out, int level) {
    fs::create_directories(out);
    synth_dataset(parse_shape(shape), views, res, out, level);
    std::cout << "wrote " << views << " views to " << out << "\n";
    return 0;
}

int cmd_train(const std::string& data_dir, const std::string& config_path,
              const std::string& out, bool mesh_mode, int64_t seed) {
    Dataset data = load_dataset(data_dir);
    TrainConfig cfg = parse_train_config(read_text_file(config_path));
    if (mesh_mode) {
        cfg.mesh_mode = true;
        cfg.render.K = 3;
    }
    if (seed >= 0) cfg.seed = uint64_t(seed);
    auto checkpoint = [&](int it, const SparseScene& s) {
        save_checkpoint(s, out);
        std::cout << "checkpoint at iteration " << it << " -> " << out << "\n";
    };
    TrainResult res = train(data, cfg, checkpoint, &std::cout);
    save_checkpoint(res.scene, out);
    std::cout << "final scene: " << res.scene.voxel_count() << " voxels, "
              << res.scene.pool_count() << " grid points\n";
    return 0;
}

int cmd_render(const std::string& scene_path, const std::string& cameras_path,
               const std::string& out, bool depth, bool normal, double ss) {
    SparseScene scene = load_checkpoint(scene_path);
    auto frames = load_cameras(cameras_path);
    fs::create_directories(out);
    RenderOptions opts;
    opts.supersample = ss;
    for (const CameraFrame& f : frames) {
        RenderOutput r = render(scene, f.cam, opts);
        std::string stem = fs::path(f.image).stem().string();
        save_png(r.color, out + "/" + f.image);
        if (depth) save_depth(r.depth, out + "/" + stem + ".depth");
        if (normal) {
            Image vis(r.normal.width, r.normal.height, 3);
            for (size_t i = 0; i < vis.data.size(); ++i)
                vis.data[i] = 0.5 + 0.5 * r.normal.data[i];
            save_png(vis, out + "/" + stem + "_normal.png");
        }
    }
    std::cout << "rendered " << frames.size() << " views to " << out << "\n";
    return 0;
}

int cmd_mesh(const std::string& scene_path, const std::string& out, const std::string& mode,
             double iso, double trunc, const std::string& views_path) {
    SparseScene scene = load_checkpoint(scene_path);
    SparseScene uni = uniformize_levels(scene);
    TriangleMesh mesh;
    if (mode == "density") {
        std::vector<double> values(uni.pool_count());
        for (size_t i = 0; i < values.size(); ++i) values[i] = explin(uni.density[i]);
        mesh = dedup_vertices(marching_cubes(uni, values, iso));
    } else if (mode == "tsdf") {
        if (views_path.empty())
            throw std::runtime_error("tsdf mode needs --views with training cameras");
        auto frames = load_cameras(views_path);
        std::vector<Camera> cams;
        std::vector<Image> depths;
        RenderOptions opts;
        opts.K = 3;
        for (const CameraFrame& f : frames) {
            cams.push_back(f.cam);
            depths.push_back(render(scene, f.cam, opts).depth);
        }
        int finest = 1;
        for (const OctPath& p : uni.voxels) finest = std::max(finest, p.level);
        double t = trunc > 0 ? trunc : 4.0 * std::ldexp(uni.bounds.size, -finest);
        TsdfField tsdf = tsdf_fuse(uni, cams, depths, t);
        std::vector<double> values(tsdf.sdf.begin(), tsdf.sdf.end());
        std::vector<uint8_t> valid(tsdf.weight.size());
        for (size_t i = 0; i < valid.size(); ++i) valid[i] = tsdf.weight[i] > 0;
        mesh = dedup_vertices(marching_cubes(uni, values, 0.0, &valid));
    } else {
        throw std::runtime_error("unknown mesh mode \"" + mode + "\" (tsdf|density)");
    }
    save_obj(mesh, out);
    std::cout << "wrote " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
              << " triangles to " << out << "\n";
    return 0;
}

int cmd_eval(const std::string& pred_dir, const std::string& gt_dir, const std::string& out) {
    auto frames = load_cameras(gt_dir + "/cameras.json");
    nlohmann::ordered_json report;
    report["per_frame"] = nlohmann::ordered_json::array();
    double sum_psnr = 0, sum_ssim = 0;
    for (const CameraFrame& f : frames) {
        Image gt = load_png(gt_dir + "/" + f.image);
        Image pred = load_png(pred_dir + "/" + f.image);
        double psnr = metric_psnr(pred, gt);
        double ss = metric_ssim(pred, gt);
        sum_psnr += psnr;
        sum_ssim += ss;
        nlohmann::ordered_json e;
        e["name"] = f.image;
        e["psnr"] = psnr;
        e["ssim"] = ss;
        report["per_frame"].push_back(std::move(e));
    }
    if (frames.empty()) throw std::runtime_error("no frames in " + gt_dir);
    report["mean_psnr"] = sum_psnr / double(frames.size());
    report["mean_ssim"] = sum_ssim / double(frames.size());
    write_text_file(out, report.dump(2) + "\n");
    std::cout << "mean psnr " << report["mean_psnr"] << " dB, mean ssim " << report["mean_ssim"]
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-voxel radiance field toolkit"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string sy_shape = "sphere", sy_out;
    int sy_views = 16, sy_res = 128, sy_level = 6;
    synth->add_option("--shape", sy_shape, "sphere|cube|boxes|mixed");
    synth->add_option("--views", sy_views, "number of views");
    synth->add_option("--res", sy_res, "image resolution");
    synth->add_option("--level", sy_level, "voxel grid level");
    synth->add_option("--out", sy_out, "output directory")->required();

    auto* tr = app.add_subcommand("train", "Optimize a scene from a dataset");
    std::string tr_data, tr_config, tr_out;
    bool tr_mesh = false;
    int64_t tr_seed = -1;
    tr->add_option("--data", tr_data, "dataset directory")->required();
    tr->add_option("--config", tr_config, "TrainConfig JSON file")->required();
    tr->add_option("--out", tr_out, "output checkpoint path")->required();
    tr->add_flag("--mesh-mode", tr_mesh, "enable mesh-oriented losses and K=3");
    tr->add_option("--seed", tr_seed, "override the config's random seed");

    auto* rd = app.add_subcommand("render", "Render a checkpoint from given cameras");
    std::string rd_scene, rd_cams, rd_out;
    bool rd_depth = false, rd_normal = false;
    double rd_ss = 1.5;
    rd->add_option("--scene", rd_scene, "SVRX checkpoint")->required();
    rd->add_option("--cameras", rd_cams, "cameras.json")->required();
    rd->add_option("--out", rd_out, "output directory")->required();
    rd->add_flag("--depth", rd_depth, "also write depth maps");
    rd->add_flag("--normal", rd_normal, "also write normal visualizations");
    rd->add_option("--ss", rd_ss, "supersampling factor");

    auto* me = app.add_subcommand("mesh", "Extract a triangle mesh");
    std::string me_scene, me_out, me_mode = "tsdf", me_views;
    double me_iso = 5.0, me_trunc = 0.0;
    me->add_option("--scene", me_scene, "SVRX checkpoint")->required();
    me->add_option("--out", me_out, "output OBJ path")->required();
    me->add_option("--mode", me_mode, "tsdf|density");
    me->add_option("--iso", me_iso, "iso value (density mode)");
    me->add_option("--trunc", me_trunc, "TSDF truncation (default 4 finest voxels)");
    me->add_option("--views", me_views, "cameras.json for TSDF depth rendering");

    auto* ev = app.add_subcommand("eval", "Compare rendered images against ground truth");
    std::string ev_pred, ev_gt, ev_out;
    ev->add_option("--pred", ev_pred, "predicted image directory")->required();
    ev->add_option("--gt", ev_gt, "ground-truth dataset directory")->required();
    ev->add_option("--out", ev_out, "report JSON path")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (synth->parsed()) return cmd_synth(sy_shape, sy_views, sy_res, sy_out, sy_level);
        if (tr->parsed()) return cmd_train(tr_data, tr_config, tr_out, tr_mesh, tr_seed);
        if (rd->parsed()) return cmd_render(rd_scene, rd_cams, rd_out, rd_depth, rd_normal, rd_ss);
        if (me->parsed()) return cmd_mesh(me_scene, me_out, me_mode, me_iso, me_trunc, me_views);
        if (ev->parsed()) return cmd_eval(ev_pred, ev_gt, ev_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
