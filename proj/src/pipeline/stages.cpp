#include "segdiscover/pipeline/stages.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "segdiscover/clustering/ocra.hpp"
#include "segdiscover/core/color.hpp"
#include "segdiscover/core/error.hpp"
#include "segdiscover/core/image_io.hpp"
#include "segdiscover/core/transform.hpp"
#include "segdiscover/embedding/descriptor.hpp"
#include "segdiscover/embedding/sgde.hpp"
#include "segdiscover/eval/matching.hpp"
#include "segdiscover/pipeline/palette.hpp"
#include "segdiscover/primitives/crop.hpp"
#include "segdiscover/primitives/merge.hpp"
#include "segdiscover/primitives/stats.hpp"
#include "segdiscover/refine/network.hpp"
#include "segdiscover/refine/pseudolabel.hpp"
#include "segdiscover/refine/trainer.hpp"
#include "segdiscover/superpixel/felzenszwalb.hpp"

namespace fs = std::filesystem;

namespace segdiscover::pipeline {

namespace {

void log(const RunContext& ctx, const std::string& stage, const std::string& msg) {
    if (ctx.log) *ctx.log << "[" << stage << "] " << msg << "\n";
}

void require(const fs::path& p, const std::string& stage, const std::string& what) {
    if (!fs::exists(p)) throw Error(stage + ": " + what + " not found: " + p.string());
}

std::ofstream open_output(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot create file: " + p.string());
    return out;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    auto out = open_output(p);
    out << text;
    if (!out) throw Error("write failed: " + p.string());
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct CropEntry {
    embedding::PrimitiveKey key;
    fs::path path;
};

std::vector<CropEntry> read_crop_manifest(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read crop manifest: " + file.string());
    std::vector<CropEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        CropEntry e;
        std::string path;
        if (!(ls >> e.key.image_id >> e.key.primitive_id >> path)) {
            throw Error("malformed crop manifest line " + std::to_string(lineno) + " in " + file.string());
        }
        e.path = fs::path(path).is_absolute() ? fs::path(path) : file.parent_path() / path;
        out.push_back(e);
    }
    return out;
}

struct Assignment {
    std::uint32_t image_id = 0;
    std::uint32_t primitive_id = 0;
    std::uint32_t overcluster = 0;
    std::uint32_t concept_id = 0;
};

std::vector<Assignment> read_assignments(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read assignments: " + file.string());
    std::vector<Assignment> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Assignment a;
        if (!(ls >> a.image_id >> a.primitive_id >> a.overcluster >> a.concept_id)) {
            throw Error("malformed assignments line " + std::to_string(lineno) + " in " + file.string());
        }
        out.push_back(a);
    }
    return out;
}

fs::path in_workdir(const RunContext& ctx, const fs::path& p) {
    return p.is_absolute() ? p : ctx.layout.root / p;
}

// Prediction maps either listed in a manifest file or named <id>.png in a directory.
std::vector<fs::path> prediction_paths(const RunContext& ctx, const fs::path& source, std::size_t count,
                                       const std::string& stage) {
    const fs::path p = in_workdir(ctx, source);
    require(p, stage, "predictions");
    if (fs::is_regular_file(p)) {
        const core::Manifest m = core::Manifest::load(p);
        if (m.size() != count) {
            throw Error(stage + ": " + p.string() + " lists " + std::to_string(m.size()) + " maps, expected " +
                        std::to_string(count));
        }
        return m.paths();
    }
    std::vector<fs::path> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(p / Layout::image_file(i));
        require(out.back(), stage, "prediction map");
    }
    return out;
}

core::LabelMap load_prediction(const fs::path& p, const core::LabelMap& gt) {
    core::LabelMap pred = core::load_label_map(p);
    if (pred.height != gt.height || pred.width != gt.width) pred = core::resize_nearest(pred, gt.height, gt.width);
    return pred;
}

}  // namespace

std::string Layout::image_file(std::size_t image_id) { return std::to_string(image_id) + ".png"; }

void prepare_workdir(const RunContext& ctx) {
    ctx.config.validate();
    fs::create_directories(ctx.layout.root);
    const std::string snapshot = ctx.config.to_text();
    const fs::path p = ctx.layout.config();
    if (fs::exists(p)) {
        if (read_text(p) != snapshot) {
            throw Error("config conflict: " + p.string() +
                        " was written with different settings; use a fresh --workdir or the same settings");
        }
        return;
    }
    write_text(p, snapshot);
}

core::Manifest resolve_manifest(const RunContext& ctx) {
    if (ctx.manifest) return core::Manifest::load(*ctx.manifest);
    require(ctx.layout.manifest(), "manifest", "image manifest (pass --manifest)");
    return core::Manifest::load(ctx.layout.manifest());
}

void stage_primitives(const RunContext& ctx) {
    const std::string stage = "primitives";
    const core::Manifest manifest = resolve_manifest(ctx);
    if (manifest.empty()) throw Error(stage + ": empty manifest");
    fs::create_directories(ctx.layout.primitives_dir());

    std::vector<fs::path> absolute;
    for (const auto& p : manifest.paths()) absolute.push_back(fs::absolute(p).lexically_normal());
    if (ctx.manifest) core::Manifest(absolute).save(ctx.layout.manifest());

    const primitives::MergeParams merge{ctx.config.merge_hue_threshold, ctx.config.merge_area_factor,
                                        ctx.config.merge_ratio_threshold};
    std::ostringstream merge_log;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        require(manifest.path(i), stage, "image");
        const core::Image img = core::load_image(manifest.path(i));
        superpixel::FelzParams fp;
        fp.scale = ctx.config.felz_scale;
        fp.sigma = ctx.config.felz_sigma;
        fp.min_size = ctx.config.min_size ? *ctx.config.min_size : superpixel::dynamic_min_size(img.height, img.width);
        const core::LabelMap segments = superpixel::felzenszwalb_segment(img, fp);
        const auto stats = primitives::shape_stats(segments, core::rgb_to_hsv(img));
        const auto adjacency = primitives::build_adjacency(segments);
        const auto merged = primitives::merge_primitives(segments, stats, adjacency, img.pixel_count(), merge);
        core::save_label_map(ctx.layout.primitives_dir() / Layout::image_file(i), merged.map);
        for (const auto& e : merged.log) merge_log << i << " " << e.source << " -> " << e.target << "\n";
        log(ctx, stage,
            "image " + std::to_string(i) + ": " + std::to_string(stats.size()) + " segments, " +
                std::to_string(merged.map.label_count()) + " primitives");
    }
    write_text(ctx.layout.merge_log(), merge_log.str());
}

void stage_crops(const RunContext& ctx) {
    const std::string stage = "crops";
    const core::Manifest manifest = resolve_manifest(ctx);
    const core::RgbMean mean = core::dataset_mean_color(manifest);
    write_text(ctx.layout.mean_color(), fixed(mean[0], 6) + " " + fixed(mean[1], 6) + " " + fixed(mean[2], 6) + "\n");
    fs::create_directories(ctx.layout.crops_dir());

    std::ostringstream listing;
    std::size_t total = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const fs::path map_path = ctx.layout.primitives_dir() / Layout::image_file(i);
        require(map_path, stage, "primitive map");
        const core::Image img = core::load_image(manifest.path(i));
        const core::LabelMap map = core::load_label_map(map_path);
        if (map.height != img.height || map.width != img.width) {
            throw Error(stage + ": " + map_path.string() + " does not match the size of " + manifest.path(i).string());
        }
        const auto crops = primitives::extract_crops(img, map, mean, ctx.config.crop_size);
        for (std::size_t pid = 0; pid < crops.size(); ++pid) {
            const std::string name = std::to_string(i) + "_" + std::to_string(pid) + ".png";
            core::save_image(ctx.layout.crops_dir() / name, crops[pid]);
            listing << i << " " << pid << " crops/" << name << "\n";
        }
        total += crops.size();
    }
    write_text(ctx.layout.crop_manifest(), listing.str());
    log(ctx, stage, std::to_string(total) + " crops");
}

void stage_embed(const RunContext& ctx, const std::string& source) {
    const std::string stage = "embed";
    require(ctx.layout.crop_manifest(), stage, "crop manifest");
    const auto crops = read_crop_manifest(ctx.layout.crop_manifest());

    embedding::EmbeddingMatrix m;
    if (source == "builtin") {
        m.dim = embedding::kBuiltinDim;
        for (const auto& c : crops) {
            require(c.path, stage, "crop");
            const auto v = embedding::embed_builtin(core::load_image(c.path));
            m.append(c.key, v);
        }
    } else {
        require(source, stage, "embedding file");
        m = embedding::read_embeddings(source);
        std::vector<embedding::PrimitiveKey> expected;
        for (const auto& c : crops) expected.push_back(c.key);
        std::sort(expected.begin(), expected.end());
        if (m.keys != expected) {
            throw Error(stage + ": keys in " + source + " do not match the crop manifest " +
                        ctx.layout.crop_manifest().string());
        }
    }
    embedding::write_embeddings(m, ctx.layout.embeddings());
    log(ctx, stage, std::to_string(m.count()) + " embeddings of dimension " + std::to_string(m.dim));
}

void stage_cluster(const RunContext& ctx) {
    const std::string stage = "cluster";
    require(ctx.layout.embeddings(), stage, "embedding file");
    const embedding::EmbeddingMatrix emb = embedding::read_embeddings(ctx.layout.embeddings());

    clustering::OcraParams params;
    params.K = ctx.config.K;
    params.C = ctx.config.C;
    params.kmeans.batch_size = ctx.config.kmeans_batch_size;
    params.kmeans.max_iter = ctx.config.kmeans_max_iter;
    params.kmeans.patience = ctx.config.kmeans_patience;
    params.spectral_sigma = ctx.config.spectral_sigma;
    params.normalize = ctx.config.normalize_embeddings;
    params.seed = ctx.config.seed;
    const clustering::OcraResult r = clustering::ocra(emb, params);

    embedding::EmbeddingMatrix centers;
    centers.dim = static_cast<std::uint32_t>(r.kmeans.centers.cols);
    for (std::size_t k = 0; k < r.kmeans.centers.rows; ++k) {
        std::vector<float> row(centers.dim);
        for (std::size_t d = 0; d < centers.dim; ++d) row[d] = static_cast<float>(r.kmeans.centers(k, d));
        centers.append({0, static_cast<std::uint32_t>(k)}, row);
    }
    embedding::write_embeddings(centers, ctx.layout.centers());

    std::ostringstream assign;
    for (std::size_t i = 0; i < emb.count(); ++i) {
        assign << emb.keys[i].image_id << " " << emb.keys[i].primitive_id << " " << r.overcluster[i] << " "
               << r.concepts[i] << "\n";
    }
    write_text(ctx.layout.assignments(), assign.str());

    std::ostringstream sizes;
    sizes << "# concept primitives\n";
    for (std::size_t c = 0; c < r.concept_sizes.size(); ++c) sizes << "concept " << c << " " << r.concept_sizes[c] << "\n";
    sizes << "# overcluster primitives concept\n";
    for (std::size_t k = 0; k < r.kmeans.sizes.size(); ++k) {
        sizes << "overcluster " << k << " " << r.kmeans.sizes[k] << " " << r.reassign.map[k] << "\n";
    }
    write_text(ctx.layout.cluster_sizes(), sizes.str());

    const auto empty = std::count(r.concept_sizes.begin(), r.concept_sizes.end(), 0u);
    log(ctx, stage,
        std::to_string(emb.count()) + " primitives, K=" + std::to_string(params.K) + " C=" + std::to_string(params.C) +
            ", inertia " + fixed(r.kmeans.inertia, 6) + ", " + std::to_string(empty) + " empty concepts");
}

void stage_pseudolabel(const RunContext& ctx) {
    const std::string stage = "pseudolabel";
    require(ctx.layout.assignments(), stage, "assignments file");
    const core::Manifest manifest = resolve_manifest(ctx);
    std::vector<std::map<std::uint32_t, std::uint32_t>> concept_of(manifest.size());
    for (const auto& a : read_assignments(ctx.layout.assignments())) {
        if (a.image_id >= manifest.size()) {
            throw Error(stage + ": image id " + std::to_string(a.image_id) + " in " +
                        ctx.layout.assignments().string() + " is outside the manifest");
        }
        concept_of[a.image_id][a.primitive_id] = a.concept_id;
    }
    fs::create_directories(ctx.layout.pseudolabels_dir());
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const fs::path map_path = ctx.layout.primitives_dir() / Layout::image_file(i);
        require(map_path, stage, "primitive map");
        const core::LabelMap map = core::load_label_map(map_path);
        core::LabelMap pseudo;
        try {
            pseudo = refine::assemble_pseudolabels(map, concept_of[i], static_cast<std::uint32_t>(ctx.config.C));
        } catch (const Error& e) {
            throw Error(stage + ": image " + std::to_string(i) + " (" + map_path.string() + "): " + e.what());
        }
        core::save_label_map(ctx.layout.pseudolabels_dir() / Layout::image_file(i), pseudo);
    }
    log(ctx, stage, std::to_string(manifest.size()) + " pseudo-label maps");
}

void stage_refine(const RunContext& ctx) {
    const std::string stage = "refine";
    const core::Manifest manifest = resolve_manifest(ctx);
    std::vector<core::Image> images;
    std::vector<core::LabelMap> labels;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const fs::path lp = ctx.layout.pseudolabels_dir() / Layout::image_file(i);
        require(lp, stage, "pseudo-label map");
        images.push_back(core::load_image(manifest.path(i)));
        labels.push_back(core::load_label_map(lp));
    }
    refine::TrainParams tp;
    tp.lr = ctx.config.lr;
    tp.momentum = ctx.config.momentum;
    tp.weight_decay = ctx.config.weight_decay;
    tp.epochs = ctx.config.epochs;
    tp.pixels_per_step = ctx.config.pixels_per_step;
    tp.augment.crop = ctx.config.augment_crop;
    tp.augment.flip = ctx.config.augment_flip;
    tp.augment.saturation = ctx.config.augment_saturation;
    tp.seed = ctx.config.seed;
    const refine::TrainResult r = refine::train_refiner(images, labels, ctx.config.C, tp);
    refine::save_model(r.model, ctx.layout.model());

    std::ostringstream csv;
    csv << "epoch,mean_loss\n";
    for (std::size_t e = 0; e < r.loss_trace.size(); ++e) csv << e << "," << fixed(r.loss_trace[e], 8) << "\n";
    write_text(ctx.layout.loss_trace(), csv.str());
    log(ctx, stage,
        std::to_string(tp.epochs) + " epochs, loss " + fixed(r.loss_trace.front(), 4) + " -> " +
            fixed(r.loss_trace.back(), 4));
}

void stage_predict(const RunContext& ctx) {
    const std::string stage = "predict";
    require(ctx.layout.model(), stage, "model file");
    const refine::RefinerModel model = refine::load_model(ctx.layout.model());
    const core::Manifest manifest = resolve_manifest(ctx);
    fs::create_directories(ctx.layout.predictions_dir());
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const auto pred = refine::predict(model, core::load_image(manifest.path(i)));
        core::save_label_map(ctx.layout.predictions_dir() / Layout::image_file(i), pred.labels);
    }
    log(ctx, stage, std::to_string(manifest.size()) + " prediction maps");
}

EvalOutcome stage_eval(const RunContext& ctx, const EvalOptions& options) {
    const std::string stage = "eval";
    require(options.gt_manifest, stage, "ground-truth manifest");
    const core::Manifest gt_manifest = core::Manifest::load(options.gt_manifest);
    const auto preds = prediction_paths(ctx, options.predictions, gt_manifest.size(), stage);

    std::vector<core::LabelMap> gts, ps;
    std::uint32_t classes = 0;
    std::uint32_t groups = static_cast<std::uint32_t>(ctx.config.C);
    for (std::size_t i = 0; i < gt_manifest.size(); ++i) {
        require(gt_manifest.path(i), stage, "ground-truth map");
        gts.push_back(core::load_label_map(gt_manifest.path(i)));
        ps.push_back(load_prediction(preds[i], gts.back()));
        classes = std::max(classes, gts.back().label_count());
        groups = std::max(groups, ps.back().label_count());
    }
    classes = std::max(classes, 1u);

    eval::ConfusionMatrix cm(groups, classes);
    for (std::size_t i = 0; i < gts.size(); ++i) {
        try {
            cm.accumulate(ps[i], gts[i]);
        } catch (const Error& e) {
            throw Error(stage + ": " + preds[i].string() + ": " + e.what());
        }
    }

    std::ostringstream cm_csv;
    cm_csv << "group";
    for (std::size_t g = 0; g < classes; ++g) cm_csv << ",class_" << g;
    cm_csv << "\n";
    for (std::size_t p = 0; p < groups; ++p) {
        cm_csv << p;
        for (std::size_t g = 0; g < classes; ++g) cm_csv << "," << cm.at(p, g);
        cm_csv << "\n";
    }
    const fs::path& root = ctx.layout.root;
    fs::create_directories(root);
    write_text(root / ("confusion_" + options.name + ".csv"), cm_csv.str());

    EvalOutcome out;
    const eval::Matching majority = eval::majority_match(cm);
    const eval::Matching hungarian = eval::hungarian_match(cm);
    write_text(root / ("diagnostic_" + options.name + ".txt"),
               eval::format_diagnostic(eval::majority_diagnostic(cm, hungarian)));
    for (const auto* match : {&majority, &hungarian}) {
        const std::string base = "metrics_" + options.name + "_" + eval::matching_name(match->kind);
        if (cm.total() == 0) {
            write_text(root / (base + ".csv"), "metric,value\nmIoU,undefined\nwIoU,undefined\npAcc,undefined\n");
            write_text(root / (base + ".txt"), "no evaluated pixels; metrics undefined\n");
            continue;
        }
        const eval::MetricsReport r = eval::metrics(cm, *match);
        write_text(root / (base + ".csv"), eval::format_csv(r));
        write_text(root / (base + ".txt"), eval::format_table(r));
        (match->kind == eval::MatchingKind::Majority ? out.majority : out.hungarian) = r;
        log(ctx, stage,
            options.name + " " + eval::matching_name(match->kind) + ": mIoU " + fixed(r.miou, 4) + " wIoU " +
                fixed(r.wiou, 4) + " pAcc " + fixed(r.pacc, 4));
    }
    return out;
}

void stage_viz(const RunContext& ctx, const std::optional<fs::path>& gt_manifest, const fs::path& predictions) {
    const std::string stage = "viz";
    fs::create_directories(ctx.layout.viz_dir());
    if (!gt_manifest) {
        const core::Manifest manifest = resolve_manifest(ctx);
        const auto preds = prediction_paths(ctx, predictions, manifest.size(), stage);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            core::save_image(ctx.layout.viz_dir() / Layout::image_file(i), colorize(core::load_label_map(preds[i])));
        }
        log(ctx, stage, std::to_string(preds.size()) + " images");
        return;
    }

    require(*gt_manifest, stage, "ground-truth manifest");
    const core::Manifest gtm = core::Manifest::load(*gt_manifest);
    const auto preds = prediction_paths(ctx, predictions, gtm.size(), stage);
    std::vector<core::LabelMap> gts, ps;
    std::uint32_t classes = 1, groups = static_cast<std::uint32_t>(ctx.config.C);
    for (std::size_t i = 0; i < gtm.size(); ++i) {
        gts.push_back(core::load_label_map(gtm.path(i)));
        ps.push_back(load_prediction(preds[i], gts.back()));
        classes = std::max(classes, gts.back().label_count());
        groups = std::max(groups, ps.back().label_count());
    }
    eval::ConfusionMatrix cm(groups, classes);
    for (std::size_t i = 0; i < gts.size(); ++i) cm.accumulate(ps[i], gts[i]);
    const eval::Matching match = eval::majority_match(cm);
    for (std::size_t i = 0; i < gts.size(); ++i) {
        core::save_image(ctx.layout.viz_dir() / Layout::image_file(i), colorize(ps[i], match.group_to_class));
        core::save_image(ctx.layout.viz_dir() / (std::to_string(i) + "_gt.png"), colorize(gts[i]));
    }
    log(ctx, stage, std::to_string(gts.size()) + " images, colours matched to ground truth");
}

void run_pipeline(const RunContext& ctx, const std::string& embeddings, const std::optional<fs::path>& gt_manifest) {
    prepare_workdir(ctx);
    stage_primitives(ctx);
    stage_crops(ctx);
    stage_embed(ctx, embeddings);
    stage_cluster(ctx);
    stage_pseudolabel(ctx);
    stage_refine(ctx);
    stage_predict(ctx);
    if (gt_manifest) {
        stage_eval(ctx, {*gt_manifest, "pseudolabels", "unrefined"});
        stage_eval(ctx, {*gt_manifest, "predictions", "refined"});
    }
    stage_viz(ctx, gt_manifest);
}

}  // namespace segdiscover::pipeline
