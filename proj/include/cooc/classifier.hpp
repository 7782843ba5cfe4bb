#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cooc/embeddings.hpp"
#include "cooc/heuristics.hpp"

namespace cooc {

/// Inputs for pair-feature assembly: an ordered list of embedding tables,
/// the evaluation-stage graph for heuristic scores, and the measure order.
struct PairFeatureSpec {
    std::vector<std::pair<std::string, const EmbeddingTable*>> tables;
    const ActionGraph* graph = nullptr;
    std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
};

/// Per table: [e_a + e_b ‖ |e_a - e_b|] (orientation-invariant), then the
/// heuristic scores in declared order. Throws Error{Input} naming any action
/// missing from a table or the graph.
std::vector<double> assemble_features(const std::string& action_a, const std::string& action_b,
                                      const PairFeatureSpec& spec);

/// Column names matching assemble_features output.
std::vector<std::string> feature_manifest(const PairFeatureSpec& spec);

/// Feature matrix with labels; `standardized` guards against double scaling.
struct PairDataset {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels; // 0/1
    bool standardized = false;
};

/// Per-feature mean/population-std scaler.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> stds; // 0 marks a constant feature

    std::vector<double> apply_row(const std::vector<double>& row) const;
};

/// Needs >= 2 rows.
Standardizer fit_standardizer(const std::vector<std::vector<double>>& matrix);
std::vector<std::vector<double>> apply_standardizer(const Standardizer& s,
                                                    const std::vector<std::vector<double>>& matrix);
/// In-place dataset variant; throws if the dataset was already standardized.
void apply_standardizer(const Standardizer& s, PairDataset& dataset);

enum class Kernel { Linear, Rbf, Polynomial };

std::string_view kernel_name(Kernel k);
Kernel kernel_from_name(std::string_view name);

struct SvmParams {
    Kernel kernel = Kernel::Linear;
    double c = 1.0;
    double gamma = 0.1;     // rbf / polynomial
    int degree = 3;         // polynomial
    double coef0 = 0.0;     // polynomial
    double tol = 1e-3;
    uint64_t max_epochs = 10000; // iteration budget = max_epochs * n
};

double kernel_value(const SvmParams& p, const std::vector<double>& u, const std::vector<double>& v);

/// Trained C-SVC: f(x) = Σ dual_i K(sv_i, x) + bias, predict 1 iff f(x) > 0.
struct SvmModel {
    SvmParams params;
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefs; // alpha_i * y_i, |dual| <= C
    double bias = 0.0;

    // convergence diagnostics
    double kkt_gap = 0.0;       // final max-violating-pair gap
    double alpha_y_residual = 0.0; // |Σ alpha_i y_i|
    uint64_t iterations = 0;
    bool converged = false;

    double decision_value(const std::vector<double>& x) const;
    int predict(const std::vector<double>& x) const;
    double accuracy_on(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels) const;
};

/// Sequential minimal optimization on the C-SVC dual, maximal-violating-pair
/// selection, until the KKT gap drops below params.tol or the iteration
/// budget runs out. Features must be standardized upstream. Throws
/// Error{Input} when labels are single-class or C/gamma are not positive.
SvmModel svm_train(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, const SvmParams& params);

/// kernel in {linear, rbf, polynomial} x C in {0.1,1,10,100} x
/// gamma in {0.001,0.01,0.1,1}, in that nesting order.
std::vector<SvmParams> default_grid();

struct GridSearchResult {
    SvmModel best_model;
    SvmParams best_params;
    double val_accuracy = 0.0;
};

/// Trains every config on the training set, evaluates on validation,
/// returns the argmax (ties: first in grid order). Empty grid is an error.
GridSearchResult grid_search(const std::vector<std::vector<double>>& train_x,
                             const std::vector<int>& train_y,
                             const std::vector<std::vector<double>>& val_x,
                             const std::vector<int>& val_y,
                             const std::vector<SvmParams>& grid);

/// Full inference bundle: scaler + feature order + trained SVM.
struct SvmPipelineModel {
    Standardizer standardizer;
    std::vector<std::string> feature_names;
    SvmModel model;

    int predict_raw(const std::vector<double>& unscaled_row) const;
};

std::string to_model_json(const SvmPipelineModel& m, const std::string& config_hash = "");
SvmPipelineModel model_from_json(const std::string& text);
void save_model(const SvmPipelineModel& m, const std::filesystem::path& path,
                const std::string& config_hash = "");
SvmPipelineModel load_model(const std::filesystem::path& path);

} // namespace cooc
