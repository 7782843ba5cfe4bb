#include "cooc/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cooc/error.hpp"
#include "cooc/rng.hpp"
#include "cooc/util.hpp"

namespace cooc {

ThresholdResult tune_threshold(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size() || scores.empty())
        fail(ErrorKind::Input, "tune_threshold: score/label length mismatch");
    bool has_pos = false, has_neg = false;
    for (int l : labels) (l == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        fail(ErrorKind::Input, "tune_threshold: both labels must be present");

    std::vector<double> distinct = scores;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> candidates;
    candidates.push_back(distinct.front() - 1.0); // predict-all-ones sentinel
    for (size_t i = 0; i + 1 < distinct.size(); ++i)
        candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
    candidates.push_back(distinct.back() + 1.0); // predict-all-zeros sentinel

    ThresholdResult best{candidates.front(), -1.0};
    for (double t : candidates) {
        size_t hits = 0;
        for (size_t i = 0; i < scores.size(); ++i)
            if ((scores[i] > t ? 1 : 0) == labels[i]) ++hits;
        double acc = static_cast<double>(hits) / static_cast<double>(scores.size());
        if (acc > best.accuracy) best = {t, acc}; // ties keep the smaller threshold
    }
    return best;
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.size() != labels.size())
        fail(ErrorKind::Input, "accuracy: length mismatch (" + std::to_string(predictions.size()) +
                                   " vs " + std::to_string(labels.size()) + ")");
    if (predictions.empty()) fail(ErrorKind::Input, "accuracy: empty input");
    size_t hits = 0;
    for (size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

ModelSpec parse_model_spec(std::string_view text) {
    ModelSpec spec;
    spec.id = std::string(text);
    if (text == "random") {
        spec.kind = ModelKind::Random;
        return spec;
    }
    if (text.substr(0, 7) == "cosine:") {
        spec.kind = ModelKind::Cosine;
        spec.representations.push_back(std::string(text.substr(7)));
        if (spec.representations.front().empty())
            fail(ErrorKind::Config, "cosine model needs a representation");
        return spec;
    }
    if (text.substr(0, 4) == "svm:") {
        spec.kind = ModelKind::Svm;
        for (auto part : split(text.substr(4), '+')) {
            auto p = trim(part);
            if (!p.empty() && p != "heuristics") spec.representations.emplace_back(p);
        }
        return spec;
    }
    spec.kind = ModelKind::Heuristic;
    spec.measure = measure_from_name(text);
    return spec;
}

namespace {

// pairs of a stage in (positives..., negatives...) order with labels
void stage_pairs_labels(const SplitStage& stage, std::vector<LabeledPair>& pairs,
                        std::vector<int>& labels) {
    pairs.clear();
    labels.clear();
    for (const auto& p : stage.positives) {
        pairs.push_back(p);
        labels.push_back(1);
    }
    for (const auto& p : stage.negatives) {
        pairs.push_back(p);
        labels.push_back(0);
    }
}

// Resolves one representation id to a concrete table. Graph-averaged tables
// use the validation graph, which is where graph topology is taken from for
// every representation-based model.
EmbeddingTable resolve_table(const ExperimentContext& ctx, const std::string& repr) {
    if (repr.rfind("graph:", 0) == 0) {
        std::string base_name = repr.substr(6);
        auto it = ctx.tables.find(base_name);
        if (it == ctx.tables.end())
            fail(ErrorKind::Config, "model needs unknown table '" + base_name + "'");
        return graph_average_embedding(ctx.split->val_graph, it->second).table;
    }
    auto it = ctx.tables.find(repr);
    if (it == ctx.tables.end())
        fail(ErrorKind::Config, "model needs unknown table '" + repr + "'");
    return it->second;
}

std::vector<std::string> expand_representations(const ExperimentContext& ctx,
                                                const std::vector<std::string>& reprs) {
    std::vector<std::string> out;
    for (const auto& r : reprs) {
        if (r == "all") {
            for (const auto& [name, table] : ctx.tables) {
                (void)table;
                out.push_back(name);
            }
        } else {
            out.push_back(r);
        }
    }
    return out;
}

ReportRow heuristic_row(const ExperimentContext& ctx, const ModelSpec& spec) {
    std::vector<LabeledPair> val_pairs, test_pairs;
    std::vector<int> val_labels, test_labels;
    stage_pairs_labels(ctx.split->val, val_pairs, val_labels);
    stage_pairs_labels(ctx.split->test, test_pairs, test_labels);

    auto score_stage = [&](const ActionGraph& g, const std::vector<LabeledPair>& pairs) {
        std::vector<double> out;
        out.reserve(pairs.size());
        for (const auto& [a, b] : pairs)
            out.push_back(heuristic_score(g, g.require_node(a), g.require_node(b), spec.measure));
        return out;
    };
    auto val_scores = score_stage(ctx.split->val_graph, val_pairs);
    auto tuned = tune_threshold(val_scores, val_labels);

    auto test_scores = score_stage(ctx.split->test_graph, test_pairs);
    std::vector<int> preds;
    preds.reserve(test_scores.size());
    for (double s : test_scores) preds.push_back(s > tuned.threshold ? 1 : 0);

    nlohmann::json cfg = {{"threshold", tuned.threshold}, {"val_accuracy", tuned.accuracy}};
    return {std::string(measure_name(spec.measure)), "none", accuracy(preds, test_labels),
            ctx.seed, cfg.dump()};
}

ReportRow cosine_row(const ExperimentContext& ctx, const ModelSpec& spec) {
    const std::string& repr = spec.representations.front();
    EmbeddingTable table = resolve_table(ctx, repr);

    auto score_pairs = [&](const std::vector<LabeledPair>& pairs) {
        std::vector<double> out;
        out.reserve(pairs.size());
        for (const auto& [a, b] : pairs) out.push_back(cosine(table.at(a), table.at(b)));
        return out;
    };
    std::vector<LabeledPair> val_pairs, test_pairs;
    std::vector<int> val_labels, test_labels;
    stage_pairs_labels(ctx.split->val, val_pairs, val_labels);
    stage_pairs_labels(ctx.split->test, test_pairs, test_labels);

    auto tuned = tune_threshold(score_pairs(val_pairs), val_labels);
    auto test_scores = score_pairs(test_pairs);
    std::vector<int> preds;
    preds.reserve(test_scores.size());
    for (double s : test_scores) preds.push_back(s > tuned.threshold ? 1 : 0);

    nlohmann::json cfg = {{"threshold", tuned.threshold}, {"val_accuracy", tuned.accuracy}};
    return {"cosine", repr, accuracy(preds, test_labels), ctx.seed, cfg.dump()};
}

ReportRow svm_row(const ExperimentContext& ctx, const ModelSpec& spec) {
    auto reprs = expand_representations(ctx, spec.representations);
    std::vector<EmbeddingTable> resolved;
    resolved.reserve(reprs.size());
    for (const auto& r : reprs) resolved.push_back(resolve_table(ctx, r));

    auto features_for = [&](const ActionGraph& g, const std::vector<LabeledPair>& pairs) {
        PairFeatureSpec fs;
        for (size_t i = 0; i < reprs.size(); ++i) fs.tables.emplace_back(reprs[i], &resolved[i]);
        fs.graph = &g;
        std::vector<std::vector<double>> rows;
        rows.reserve(pairs.size());
        for (const auto& [a, b] : pairs) rows.push_back(assemble_features(a, b, fs));
        return rows;
    };

    std::vector<LabeledPair> train_pairs, val_pairs, test_pairs;
    std::vector<int> train_labels, val_labels, test_labels;
    stage_pairs_labels(ctx.split->train, train_pairs, train_labels);
    stage_pairs_labels(ctx.split->val, val_pairs, val_labels);
    stage_pairs_labels(ctx.split->test, test_pairs, test_labels);

    auto train_x = features_for(ctx.split->train_graph, train_pairs);
    auto val_x = features_for(ctx.split->val_graph, val_pairs);
    auto test_x = features_for(ctx.split->test_graph, test_pairs);

    Standardizer scaler = fit_standardizer(train_x);
    train_x = apply_standardizer(scaler, train_x);
    val_x = apply_standardizer(scaler, val_x);
    test_x = apply_standardizer(scaler, test_x);

    GridSearchResult gs = grid_search(train_x, train_labels, val_x, val_labels, ctx.grid);
    double test_acc = gs.best_model.accuracy_on(test_x, test_labels);

    std::string repr_label = reprs.empty() ? "heuristics" : reprs.front();
    for (size_t i = 1; i < reprs.size(); ++i) repr_label += "+" + reprs[i];
    nlohmann::json cfg = {{"kernel", std::string(kernel_name(gs.best_params.kernel))},
                          {"c", gs.best_params.c},
                          {"gamma", gs.best_params.gamma},
                          {"val_accuracy", gs.val_accuracy}};
    return {"svm", repr_label, test_acc, ctx.seed, cfg.dump()};
}

} // namespace

ReportRow run_experiment(const ExperimentContext& ctx, const ModelSpec& spec) {
    if (ctx.split == nullptr) fail(ErrorKind::Config, "experiment context has no split");
    switch (spec.kind) {
        case ModelKind::Random: {
            std::vector<LabeledPair> test_pairs;
            std::vector<int> test_labels;
            stage_pairs_labels(ctx.split->test, test_pairs, test_labels);
            if (test_pairs.empty()) fail(ErrorKind::Input, "empty test stage");
            SeededRng rng(ctx.seed);
            std::vector<int> preds;
            preds.reserve(test_labels.size());
            for (size_t i = 0; i < test_labels.size(); ++i)
                preds.push_back(rng.uniform_double() < 0.5 ? 1 : 0);
            return {"random", "none", accuracy(preds, test_labels), ctx.seed, "{}"};
        }
        case ModelKind::Heuristic: return heuristic_row(ctx, spec);
        case ModelKind::Cosine: return cosine_row(ctx, spec);
        case ModelKind::Svm: return svm_row(ctx, spec);
    }
    fail(ErrorKind::Config, "unknown model kind");
}

std::vector<ReportRow> run_experiments(const ExperimentContext& ctx,
                                       const std::vector<std::string>& model_ids) {
    std::vector<ReportRow> rows;
    rows.reserve(model_ids.size());
    for (const auto& id : model_ids) rows.push_back(run_experiment(ctx, parse_model_spec(id)));
    return rows;
}

std::string to_report_csv(const std::vector<ReportRow>& rows, const std::string& config_hash) {
    std::ostringstream out;
    if (!config_hash.empty()) out << "# config=" << config_hash << "\n";
    out << "model,representation,accuracy,seed,config_json\n";
    for (const auto& r : rows) {
        std::string cfg = r.config_json;
        // CSV-quote the embedded JSON
        std::string quoted = "\"";
        for (char c : cfg) {
            if (c == '"') quoted += "\"\"";
            else quoted += c;
        }
        quoted += "\"";
        out << r.model << "," << r.representation << "," << format_double(r.accuracy) << ","
            << r.seed << "," << quoted << "\n";
    }
    return out.str();
}

std::string format_report_table(const std::vector<ReportRow>& rows) {
    size_t wm = 5, wr = 14;
    for (const auto& r : rows) {
        wm = std::max(wm, r.model.size());
        wr = std::max(wr, r.representation.size());
    }
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(wm + 2)) << "model"
        << std::setw(static_cast<int>(wr + 2)) << "representation"
        << "accuracy\n";
    out << std::string(wm + wr + 12, '-') << "\n";
    for (const auto& r : rows) {
        std::ostringstream acc;
        acc << std::fixed << std::setprecision(3) << r.accuracy;
        out << std::left << std::setw(static_cast<int>(wm + 2)) << r.model
            << std::setw(static_cast<int>(wr + 2)) << r.representation << acc.str() << "\n";
    }
    return out.str();
}

} // namespace cooc
