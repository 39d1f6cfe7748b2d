#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "segdiscover/core/error.hpp"
#include "segdiscover/core/image_io.hpp"
#include "segdiscover/pipeline/palette.hpp"
#include "segdiscover/pipeline/stages.hpp"
#include "segdiscover/synth/generator.hpp"

using namespace segdiscover;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(TEST_TMP_DIR) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("palette colours are fixed and distinct") {
    CHECK(pipeline::palette_color(0) == pipeline::palette_color(0));
    std::set<pipeline::Rgb> seen;
    for (std::uint32_t i = 0; i < 64; ++i) seen.insert(pipeline::palette_color(i));
    CHECK(seen.size() == 64);
    CHECK(seen.count({0, 0, 0}) == 0);

    core::LabelMap map(1, 3);
    map.labels = {0, 1, core::LabelMap::kIgnore};
    const core::Image img = pipeline::colorize(map, {1, 0});
    CHECK(img.pixel(0, 0) == pipeline::palette_color(1));
    CHECK(img.pixel(0, 1) == pipeline::palette_color(0));
    CHECK(img.pixel(0, 2) == pipeline::Rgb{0, 0, 0});
}

TEST_CASE("synthetic samples are deterministic") {
    synth::SynthParams p;
    p.height = 40;
    p.width = 48;
    const auto a = synth::generate_sample(p, 3);
    const auto b = synth::generate_sample(p, 3);
    CHECK(a.image == b.image);
    CHECK(a.ground_truth == b.ground_truth);
    CHECK(a.image.height == 40);
    CHECK(a.image.width == 48);
    for (auto v : a.ground_truth.labels) CHECK(v < 4u);
    CHECK_FALSE(synth::generate_sample(p, 4).image == a.image);
    p.seed = 1;
    CHECK_FALSE(synth::generate_sample(p, 3).image == a.image);
}

TEST_CASE("synthetic dataset files") {
    const fs::path dir = fresh_dir("synth");
    synth::SynthParams p;
    p.images = 3;
    p.height = p.width = 24;
    const auto ds = synth::write_dataset(p, dir);
    CHECK(fs::exists(ds.image_manifest));
    CHECK(fs::exists(ds.gt_manifest));
    const auto sample = synth::generate_sample(p, 2);
    CHECK(core::load_image(dir / "images" / "002.png") == sample.image);
    CHECK(core::load_label_map(dir / "gt" / "002.png") == sample.ground_truth);
}

TEST_CASE("stages report missing inputs") {
    pipeline::RunContext ctx;
    ctx.layout.root = fresh_dir("missing");
    pipeline::prepare_workdir(ctx);
    try {
        pipeline::stage_cluster(ctx);
        FAIL("cluster ran without embeddings");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("cluster") != std::string::npos);
        CHECK(msg.find("embeddings.sgde") != std::string::npos);
    }
    CHECK_THROWS_AS(pipeline::stage_crops(ctx), Error);
    CHECK_THROWS_AS(pipeline::stage_embed(ctx, (ctx.layout.root / "nope.sgde").string()), Error);
}

TEST_CASE("a changed config in an existing workdir is rejected") {
    pipeline::RunContext ctx;
    ctx.layout.root = fresh_dir("conflict");
    pipeline::prepare_workdir(ctx);
    pipeline::prepare_workdir(ctx);
    ctx.config.K = 300;
    CHECK_THROWS_WITH_AS(pipeline::prepare_workdir(ctx), doctest::Contains("config conflict"), Error);
}

TEST_CASE("pipeline on a tiny dataset is reproducible") {
    const fs::path data = fresh_dir("tiny_data");
    synth::SynthParams sp;
    sp.images = 3;
    sp.height = sp.width = 32;
    const auto ds = synth::write_dataset(sp, data);

    auto run = [&](const std::string& name) {
        pipeline::RunContext ctx;
        ctx.layout.root = fresh_dir(name);
        ctx.manifest = ds.image_manifest;
        ctx.config.K = 6;
        ctx.config.C = 3;
        ctx.config.epochs = 2;
        ctx.config.spectral_sigma = 10;
        pipeline::run_pipeline(ctx, "builtin", ds.gt_manifest);
        return ctx.layout;
    };
    const auto a = run("tiny_a");
    const auto b = run("tiny_b");
    for (const char* f : {"embeddings.sgde", "assignments.txt", "model.sgdr", "loss.csv",
                          "metrics_refined_hungarian.csv", "predictions/0.png"}) {
        CAPTURE(f);
        REQUIRE(fs::exists(a.root / f));
        CHECK(slurp(a.root / f) == slurp(b.root / f));
    }
}
