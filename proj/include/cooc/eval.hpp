#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cooc/classifier.hpp"
#include "cooc/embeddings.hpp"
#include "cooc/heuristics.hpp"
#include "cooc/split.hpp"

namespace cooc {

struct ThresholdResult {
    double threshold = 0.0;
    double accuracy = 0.0;
};

/// Sweeps midpoints between consecutive distinct scores plus below-min and
/// above-max sentinels; predicts 1 iff score > threshold; returns the
/// smallest accuracy-maximizing threshold. Both labels must be present.
ThresholdResult tune_threshold(const std::vector<double>& scores, const std::vector<int>& labels);

/// Fraction of agreements; lengths must match and be > 0.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

/// Everything a model run needs: the split and the loaded embedding tables.
struct ExperimentContext {
    const SplitManifest* split = nullptr;
    std::map<std::string, EmbeddingTable> tables;
    uint64_t seed = 0;
    std::vector<SvmParams> grid = default_grid();
};

enum class ModelKind { Random, Heuristic, Cosine, Svm };

/// Parsed form of a model id:
///   "random" | "<measure>" | "cosine:<repr>" | "svm:<repr>+<repr>+..."
/// where <repr> is a table name, "graph:<table>" (graph-averaged on the
/// validation graph), "all" (every loaded table) or, for svm, "heuristics"
/// (no embedding block).
struct ModelSpec {
    ModelKind kind = ModelKind::Random;
    Measure measure = Measure::CN;            // Heuristic
    std::vector<std::string> representations; // Cosine (1 entry) / Svm
    std::string id;                           // original text
};

ModelSpec parse_model_spec(std::string_view text);

struct ReportRow {
    std::string model;
    std::string representation;
    double accuracy = 0.0;
    uint64_t seed = 0;
    std::string config_json; // model-specific settings (threshold, kernel, ...)
};

/// Runs one (model, representation) cell: heuristics and cosine tune their
/// threshold on validation pairs and report test accuracy; the SVM trains on
/// train pairs, grid-searches on validation and reports test accuracy.
/// Heuristic scores always come from the stage's own reduced graph.
ReportRow run_experiment(const ExperimentContext& ctx, const ModelSpec& spec);

std::vector<ReportRow> run_experiments(const ExperimentContext& ctx,
                                       const std::vector<std::string>& model_ids);

/// `model,representation,accuracy,seed,config_json` CSV.
std::string to_report_csv(const std::vector<ReportRow>& rows,
                          const std::string& config_hash = "");
/// Human-readable aligned table.
std::string format_report_table(const std::vector<ReportRow>& rows);

} // namespace cooc
