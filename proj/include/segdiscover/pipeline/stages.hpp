#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "segdiscover/core/config.hpp"
#include "segdiscover/core/manifest.hpp"
#include "segdiscover/eval/metrics.hpp"

namespace segdiscover::pipeline {

/// File locations inside a working directory.
struct Layout {
    std::filesystem::path root;

    std::filesystem::path config() const { return root / "config.txt"; }
    std::filesystem::path manifest() const { return root / "manifest.txt"; }
    std::filesystem::path primitives_dir() const { return root / "primitives"; }
    std::filesystem::path merge_log() const { return root / "merge_log.txt"; }
    std::filesystem::path crops_dir() const { return root / "crops"; }
    std::filesystem::path crop_manifest() const { return root / "crops.txt"; }
    std::filesystem::path mean_color() const { return root / "mean_color.txt"; }
    std::filesystem::path embeddings() const { return root / "embeddings.sgde"; }
    std::filesystem::path centers() const { return root / "kmeans_centers.sgde"; }
    std::filesystem::path assignments() const { return root / "assignments.txt"; }
    std::filesystem::path cluster_sizes() const { return root / "cluster_sizes.txt"; }
    std::filesystem::path pseudolabels_dir() const { return root / "pseudolabels"; }
    std::filesystem::path model() const { return root / "model.sgdr"; }
    std::filesystem::path loss_trace() const { return root / "loss.csv"; }
    std::filesystem::path predictions_dir() const { return root / "predictions"; }
    std::filesystem::path viz_dir() const { return root / "viz"; }

    static std::string image_file(std::size_t image_id);  // "<id>.png"
};

struct RunContext {
    core::Config config;
    Layout layout;
    std::optional<std::filesystem::path> manifest;  // input images; defaults to the workdir copy
    std::ostream* log = nullptr;
};

/// Create the working directory and write the config snapshot, or check it
/// against an existing one (a differing snapshot is an error).
void prepare_workdir(const RunContext& ctx);

/// The input manifest, falling back to the copy saved by the primitives stage.
core::Manifest resolve_manifest(const RunContext& ctx);

/// Superpixels and merging: primitives/<id>.png, merge_log.txt, manifest.txt.
void stage_primitives(const RunContext& ctx);

/// Mean-colour-filled crops: crops/<image>_<primitive>.png, crops.txt, mean_color.txt.
void stage_crops(const RunContext& ctx);

/// embeddings.sgde from the built-in descriptor ("builtin") or an external
/// SGDE file whose keys must match the crop manifest.
void stage_embed(const RunContext& ctx, const std::string& source);

/// OC-RA clustering: kmeans_centers.sgde, assignments.txt, cluster_sizes.txt.
void stage_cluster(const RunContext& ctx);

/// pseudolabels/<id>.png from primitives and assignments.
void stage_pseudolabel(const RunContext& ctx);

/// model.sgdr and loss.csv.
void stage_refine(const RunContext& ctx);

/// predictions/<id>.png.
void stage_predict(const RunContext& ctx);

struct EvalOptions {
    std::filesystem::path gt_manifest;
    /// Directory of <id>.png label maps (relative to the workdir when not
    /// absolute) or a manifest file listing them.
    std::filesystem::path predictions = "predictions";
    std::string name = "refined";
};

struct EvalOutcome {
    std::optional<eval::MetricsReport> majority;   // empty when no pixel was evaluated
    std::optional<eval::MetricsReport> hungarian;
};

/// metrics_<name>_{majority,hungarian}.{csv,txt}, confusion_<name>.csv, diagnostic_<name>.txt.
EvalOutcome stage_eval(const RunContext& ctx, const EvalOptions& options);

/// viz/<id>.png; with ground truth, colours follow the majority matching and
/// viz/<id>_gt.png is written alongside.
void stage_viz(const RunContext& ctx, const std::optional<std::filesystem::path>& gt_manifest,
               const std::filesystem::path& predictions = "predictions");

/// Every stage in order; evaluation and visualisation when ground truth is given.
void run_pipeline(const RunContext& ctx, const std::string& embeddings,
                  const std::optional<std::filesystem::path>& gt_manifest);

}  // namespace segdiscover::pipeline
