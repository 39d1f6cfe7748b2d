// Command-line front end: one subcommand per pipeline stage.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segdiscover/core/error.hpp"
#include "segdiscover/pipeline/stages.hpp"
#include "segdiscover/synth/generator.hpp"

namespace fs = std::filesystem;
using namespace segdiscover;

namespace {

struct Options {
    std::string config_file;
    std::string manifest;
    std::string workdir;
    std::optional<std::uint64_t> seed;
    std::optional<double> scale;
    std::optional<double> sigma;
    std::string min_size;
    std::optional<int> K;
    std::optional<int> C;
    std::optional<int> epochs;
    std::vector<std::string> overrides;

    std::string embeddings = "builtin";
    std::string gt;
    std::string pred = "predictions";
    std::string name = "refined";

    std::string synth_out;
    int synth_images = 20;
    int synth_size = 128;
    synth::SynthParams synth;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_file, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--manifest", o.manifest, "image manifest (one path per line)");
    sub->add_option("--workdir", o.workdir, "working directory for stage files")->required();
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--scale", o.scale, "superpixel scale");
    sub->add_option("--sigma", o.sigma, "superpixel smoothing sigma");
    sub->add_option("--min-size", o.min_size, "superpixel min size: auto or N");
    sub->add_option("--K", o.K, "overclusters");
    sub->add_option("--C", o.C, "concepts");
    sub->add_option("--epochs", o.epochs, "refinement epochs");
    sub->add_option("--set", o.overrides, "extra config assignment key=value (repeatable)");
}

pipeline::RunContext make_context(const Options& o) {
    pipeline::RunContext ctx;
    if (!o.config_file.empty()) ctx.config.merge_file(o.config_file);
    for (const auto& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got '" + kv + "'");
        ctx.config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) ctx.config.seed = *o.seed;
    if (o.scale) ctx.config.felz_scale = *o.scale;
    if (o.sigma) ctx.config.felz_sigma = *o.sigma;
    if (!o.min_size.empty()) ctx.config.set("min_size", o.min_size);
    if (o.K) ctx.config.K = *o.K;
    if (o.C) ctx.config.C = *o.C;
    if (o.epochs) ctx.config.epochs = *o.epochs;
    ctx.layout.root = o.workdir;
    if (!o.manifest.empty()) ctx.manifest = fs::path(o.manifest);
    ctx.log = &std::cerr;
    return ctx;
}

std::optional<fs::path> optional_path(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unsupervised concept discovery and segmentation"};
    app.require_subcommand(1);
    Options o;

    auto* primitives = app.add_subcommand("primitives", "superpixels and primitive merging");
    auto* crops = app.add_subcommand("crops", "mean-colour-filled primitive crops");
    auto* embed = app.add_subcommand("embed", "primitive embeddings");
    auto* cluster = app.add_subcommand("cluster", "overclustering and spectral reassignment");
    auto* pseudolabel = app.add_subcommand("pseudolabel", "assemble pseudo-label maps");
    auto* refine = app.add_subcommand("refine", "train the per-pixel refiner");
    auto* predict = app.add_subcommand("predict", "refined concept maps");
    auto* evaluate = app.add_subcommand("eval", "metrics against ground truth");
    auto* viz = app.add_subcommand("viz", "colour renderings of predictions");
    auto* all = app.add_subcommand("pipeline", "every stage in order");
    for (auto* sub : {primitives, crops, embed, cluster, pseudolabel, refine, predict, evaluate, viz, all}) {
        add_common(sub, o);
    }
    for (auto* sub : {embed, all}) {
        sub->add_option("--embeddings", o.embeddings, "builtin or an SGDE file");
    }
    evaluate->add_option("--gt", o.gt, "ground-truth label map manifest")->required();
    for (auto* sub : {viz, all}) sub->add_option("--gt", o.gt, "ground-truth label map manifest");
    for (auto* sub : {evaluate, viz}) {
        sub->add_option("--pred", o.pred, "prediction directory (in the workdir) or manifest");
    }
    evaluate->add_option("--name", o.name, "report name used in output files");

    auto* synth = app.add_subcommand("synth", "write the synthetic textured-region dataset");
    synth->add_option("--out", o.synth_out, "output directory")->required();
    synth->add_option("--images", o.synth_images, "image count");
    synth->add_option("--size", o.synth_size, "image side length");
    synth->add_option("--seed", o.seed, "RNG seed");
    synth->add_option("--noise", o.synth.noise, "per-channel gaussian noise stddev");
    synth->add_option("--hue-jitter", o.synth.hue_jitter, "per-pixel hue jitter, degrees");
    synth->add_option("--min-sites", o.synth.min_sites, "fewest regions per image");
    synth->add_option("--max-sites", o.synth.max_sites, "most regions per image");

    CLI11_PARSE(app, argc, argv);

    CLI::App* chosen = app.get_subcommands().front();
    try {
        if (chosen == synth) {
            synth::SynthParams sp = o.synth;
            sp.images = o.synth_images;
            sp.height = sp.width = o.synth_size;
            sp.seed = o.seed.value_or(0);
            const auto ds = synth::write_dataset(sp, o.synth_out);
            std::cerr << "[synth] " << sp.images << " images; manifests " << ds.image_manifest.string() << " and "
                      << ds.gt_manifest.string() << "\n";
            return 0;
        }

        const pipeline::RunContext ctx = make_context(o);
        pipeline::prepare_workdir(ctx);
        if (chosen == primitives) pipeline::stage_primitives(ctx);
        else if (chosen == crops) pipeline::stage_crops(ctx);
        else if (chosen == embed) pipeline::stage_embed(ctx, o.embeddings);
        else if (chosen == cluster) pipeline::stage_cluster(ctx);
        else if (chosen == pseudolabel) pipeline::stage_pseudolabel(ctx);
        else if (chosen == refine) pipeline::stage_refine(ctx);
        else if (chosen == predict) pipeline::stage_predict(ctx);
        else if (chosen == evaluate) pipeline::stage_eval(ctx, {o.gt, o.pred, o.name});
        else if (chosen == viz) pipeline::stage_viz(ctx, optional_path(o.gt), o.pred);
        else if (chosen == all) pipeline::run_pipeline(ctx, o.embeddings, optional_path(o.gt));
    } catch (const std::exception& e) {
        std::cerr << "segdiscover " << chosen->get_name() << ": error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
