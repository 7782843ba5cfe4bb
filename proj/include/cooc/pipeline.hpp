#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cooc/clustering.hpp"

namespace cooc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat per-stage configuration; defaults match the documented pipeline
/// defaults (10 s window, ward threshold 1.5, min edge weight 2, split
/// fraction 0.1).
struct PipelineConfig {
    std::filesystem::path records_path;
    std::filesystem::path allowlist_path;  // optional
    std::map<std::string, std::filesystem::path> embedding_paths;
    std::filesystem::path gold_neighbors_path; // optional

    double window_s = 10.0;

    bool cluster_enabled = true;
    std::string cluster_table = "textual";
    double cluster_threshold = 1.5;
    WardCostScale ward_cost = WardCostScale::Distance;
    bool normalize_embeddings = false;

    uint64_t min_weight = 2;

    double fraction = 0.1;

    std::vector<std::string> eval_models; // empty -> default model set

    uint64_t ppmi_min_count = 10;

    size_t knn_k = 3;
    std::string retrieve_table; // table name or "graph:<table>"; empty -> skip

    uint64_t seed = 7;
};

/// Parses the flat `[section]` / `key = value` config format; relative paths
/// resolve against base_dir. Unknown keys are configuration errors.
PipelineConfig parse_pipeline_config(const std::string& text,
                                     const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Canonical fingerprint of the effective configuration (seed included);
/// stamped into every artifact this run writes.
std::string config_fingerprint(const PipelineConfig& config);

struct PipelineOutcome {
    nlohmann::json manifest;
    std::filesystem::path manifest_path;
};

/// Runs ingest -> cluster -> graph -> split -> eval -> analyze -> retrieve,
/// writing artifacts plus manifest.json under out_dir. Referenced input
/// files are checked before any stage runs. On stage failure a FAILED marker
/// naming the stage is left in out_dir and the error is rethrown. Reruns
/// with an identical config produce byte-identical artifacts.
PipelineOutcome run_pipeline(const PipelineConfig& config, const std::filesystem::path& out_dir);

/// Four-row stage-count block (initial / cooccurrence / clustering / graph)
/// as an aligned text table.
std::string format_stage_counts(const nlohmann::json& manifest);

} // namespace cooc
