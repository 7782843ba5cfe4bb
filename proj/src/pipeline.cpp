#include "cooc/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "cooc/analysis.hpp"
#include "cooc/embeddings.hpp"
#include "cooc/error.hpp"
#include "cooc/eval.hpp"
#include "cooc/graph.hpp"
#include "cooc/records.hpp"
#include "cooc/split.hpp"
#include "cooc/util.hpp"

namespace cooc {

namespace {

struct RawConfig {
    std::map<std::string, std::string> values; // "section.key" -> value
};

RawConfig parse_raw(const std::string& text) {
    RawConfig raw;
    std::string section;
    size_t line_no = 0;
    for (auto line_view : split(text, '\n')) {
        ++line_no;
        auto line = trim(line_view);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(ErrorKind::Config, "config:" + std::to_string(line_no) + ": bad section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::Config, "config:" + std::to_string(line_no) + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) fail(ErrorKind::Config, "config:" + std::to_string(line_no) + ": empty key");
        raw.values[section.empty() ? key : section + "." + key] = value;
    }
    return raw;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(ErrorKind::Config, "config key '" + key + "': expected a boolean, got '" + v + "'");
}

} // namespace

PipelineConfig parse_pipeline_config(const std::string& text,
                                     const std::filesystem::path& base_dir) {
    RawConfig raw = parse_raw(text);
    PipelineConfig cfg;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };

    std::set<std::string> consumed;
    auto take = [&](const std::string& key) -> const std::string* {
        auto it = raw.values.find(key);
        if (it == raw.values.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    };

    if (auto* v = take("inputs.records")) cfg.records_path = resolve(*v);
    if (auto* v = take("inputs.allowlist")) cfg.allowlist_path = resolve(*v);
    if (auto* v = take("inputs.gold_neighbors")) cfg.gold_neighbors_path = resolve(*v);
    for (const auto& [key, value] : raw.values) {
        if (key.rfind("inputs.embedding.", 0) == 0) {
            cfg.embedding_paths[key.substr(17)] = resolve(value);
            consumed.insert(key);
        }
    }

    auto take_double = [&](const std::string& key, double& out) {
        if (auto* v = take(key)) {
            if (!parse_double(*v, out))
                fail(ErrorKind::Config, "config key '" + key + "': bad number '" + *v + "'");
        }
    };
    auto take_u64 = [&](const std::string& key, uint64_t& out) {
        double d;
        if (auto* v = take(key)) {
            if (!parse_double(*v, d) || d < 0 || d != static_cast<double>(static_cast<uint64_t>(d)))
                fail(ErrorKind::Config, "config key '" + key + "': bad integer '" + *v + "'");
            out = static_cast<uint64_t>(d);
        }
    };

    take_double("ingest.window_s", cfg.window_s);
    if (auto* v = take("cluster.enabled")) cfg.cluster_enabled = parse_bool(*v, "cluster.enabled");
    if (auto* v = take("cluster.table")) cfg.cluster_table = *v;
    take_double("cluster.threshold", cfg.cluster_threshold);
    if (auto* v = take("cluster.cost_scale")) cfg.ward_cost = ward_cost_scale_from_name(*v);
    if (auto* v = take("cluster.normalize"))
        cfg.normalize_embeddings = parse_bool(*v, "cluster.normalize");
    take_u64("graph.min_weight", cfg.min_weight);
    take_double("split.fraction", cfg.fraction);
    if (auto* v = take("eval.models")) {
        for (auto part : split(*v, ','))
            if (!trim(part).empty()) cfg.eval_models.emplace_back(trim(part));
    }
    take_u64("analyze.min_count", cfg.ppmi_min_count);
    uint64_t k = cfg.knn_k;
    take_u64("retrieve.k", k);
    cfg.knn_k = static_cast<size_t>(k);
    if (auto* v = take("retrieve.table")) cfg.retrieve_table = *v;
    take_u64("run.seed", cfg.seed);

    for (const auto& [key, value] : raw.values) {
        (void)value;
        if (!consumed.count(key))
            fail(ErrorKind::Config, "unknown config key: " + key);
    }
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return parse_pipeline_config(read_file(path), path.parent_path());
}

std::string config_fingerprint(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["records"] = cfg.records_path.string();
    j["allowlist"] = cfg.allowlist_path.string();
    j["gold_neighbors"] = cfg.gold_neighbors_path.string();
    for (const auto& [name, path] : cfg.embedding_paths) j["embedding"][name] = path.string();
    j["window_s"] = cfg.window_s;
    j["cluster_enabled"] = cfg.cluster_enabled;
    j["cluster_table"] = cfg.cluster_table;
    j["cluster_threshold"] = cfg.cluster_threshold;
    j["ward_cost"] = cfg.ward_cost == WardCostScale::Distance ? "distance" : "sse";
    j["normalize"] = cfg.normalize_embeddings;
    j["min_weight"] = cfg.min_weight;
    j["fraction"] = cfg.fraction;
    j["eval_models"] = cfg.eval_models;
    j["ppmi_min_count"] = cfg.ppmi_min_count;
    j["knn_k"] = cfg.knn_k;
    j["retrieve_table"] = cfg.retrieve_table;
    j["seed"] = cfg.seed;
    j["tool_version"] = kToolVersion;
    return fnv1a_hex(j.dump());
}

namespace {

nlohmann::json verb_action_counts(const std::set<std::string>& actions) {
    std::set<std::string> verbs;
    for (const auto& a : actions) verbs.insert(std::string(first_token(a)));
    return {{"verbs", verbs.size()}, {"actions", actions.size()}};
}

std::set<std::string> graph_actions(const ActionGraph& g) {
    auto names = g.sorted_nodes();
    return {names.begin(), names.end()};
}

} // namespace

PipelineOutcome run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& out_dir) {
    std::string stage = "setup";
    try {
        std::filesystem::create_directories(out_dir);

        // fail before any stage runs if a referenced input is missing
        auto require_file = [](const std::filesystem::path& p, const std::string& what) {
            if (!std::filesystem::exists(p))
                fail(ErrorKind::Config, what + " does not exist: " + p.string());
        };
        require_file(cfg.records_path, "records file");
        if (!cfg.allowlist_path.empty()) require_file(cfg.allowlist_path, "allowlist file");
        if (!cfg.gold_neighbors_path.empty())
            require_file(cfg.gold_neighbors_path, "gold neighbors file");
        for (const auto& [name, path] : cfg.embedding_paths)
            require_file(path, "embedding table '" + name + "'");
        if (cfg.cluster_enabled && !cfg.embedding_paths.count(cfg.cluster_table))
            fail(ErrorKind::Config, "cluster table '" + cfg.cluster_table + "' is not configured");

        const std::string hash = config_fingerprint(cfg);
        const std::vector<std::string> stamp = {"config=" + hash};
        nlohmann::json manifest;
        manifest["tool_version"] = kToolVersion;
        manifest["seed"] = cfg.seed;
        manifest["config_hash"] = hash;
        std::vector<std::string> warnings;

        // ---- ingest ----
        stage = "ingest";
        auto records = load_records(cfg.records_path);
        if (!cfg.allowlist_path.empty())
            records = filter_visual(records, load_allowlist(cfg.allowlist_path));
        std::set<std::string> initial_actions;
        for (const auto& r : records) initial_actions.insert(r.action);
        manifest["stage_counts"]["initial"] = verb_action_counts(initial_actions);

        auto pairs = extract_cooccurrences(records, cfg.window_s);
        write_file(out_dir / "pairs.tsv", to_pairs_tsv(pairs, stamp));
        {
            std::set<std::string> actions;
            std::set<std::pair<std::string, std::string>> distinct;
            for (const auto& p : pairs) {
                actions.insert(p.action_a);
                actions.insert(p.action_b);
                distinct.insert({p.action_a, p.action_b});
            }
            auto row = verb_action_counts(actions);
            row["pairs"] = distinct.size();
            manifest["stage_counts"]["cooccurrence"] = row;
        }

        // ---- embeddings ----
        stage = "embeddings";
        std::map<std::string, EmbeddingTable> tables;
        for (const auto& [name, path] : cfg.embedding_paths) {
            EmbeddingTable t = load_table(path);
            if (cfg.normalize_embeddings) t = l2_normalize(t);
            tables.emplace(name, std::move(t));
        }

        // ---- cluster ----
        stage = "cluster";
        std::map<std::string, std::string> rename;
        std::vector<std::string> dropped;
        if (cfg.cluster_enabled) {
            const EmbeddingTable& base = tables.at(cfg.cluster_table);
            EmbeddingTable subset;
            subset.modality = base.modality;
            for (const auto& action : initial_actions) {
                auto it = base.vectors.find(action);
                if (it == base.vectors.end())
                    warnings.push_back("no embedding for action '" + action +
                                       "'; left unclustered");
                else
                    subset.insert(action, it->second);
            }
            if (subset.size() >= 1) {
                auto assignment =
                    agglomerative_cluster(subset, cfg.cluster_threshold, cfg.ward_cost);
                for (const auto& w : assignment.warnings) warnings.push_back(w);
                auto renamed = filter_and_rename(assignment, count_actions(records));
                rename = std::move(renamed.rename);
                dropped = std::move(renamed.dropped);

                nlohmann::json metrics;
                metrics["n_clusters"] = assignment.cluster_count();
                metrics["n_dropped"] = dropped.size();
                try {
                    std::vector<std::vector<double>> pts;
                    std::vector<int> labels;
                    assignment_arrays(subset, assignment, pts, labels);
                    metrics["silhouette"] = silhouette(pts, labels);
                    metrics["calinski_harabasz"] = calinski_harabasz(pts, labels);
                    metrics["davies_bouldin"] = davies_bouldin(pts, labels);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::UndefinedMetric) throw;
                    metrics["note"] = e.what();
                }
                metrics["config_hash"] = hash;
                write_file(out_dir / "cluster_metrics.json", metrics.dump(2) + "\n");
            }
            write_file(out_dir / "rename.tsv", to_rename_tsv(rename, stamp));
        }

        // ---- graph ----
        stage = "graph";
        std::map<std::string, std::vector<CoocPair>> by_video;
        for (const auto& p : pairs) by_video[p.video_id].push_back(p);
        std::vector<ActionGraph> video_graphs;
        video_graphs.reserve(by_video.size());
        for (const auto& [vid, vpairs] : by_video) {
            (void)vid;
            video_graphs.push_back(build_video_graph(vpairs, rename, dropped));
        }
        ActionGraph full = merge_graphs(video_graphs);
        save_edge_list(full, out_dir / "graph_full.tsv", stamp);
        {
            auto row = verb_action_counts(graph_actions(full));
            row["pairs"] = full.edge_count();
            manifest["stage_counts"]["clustering"] = row;
        }
        ActionGraph graph = filter_min_weight(full, cfg.min_weight);
        graph.validate();
        save_edge_list(graph, out_dir / "graph.tsv", stamp);
        {
            auto row = verb_action_counts(graph_actions(graph));
            row["pairs"] = graph.edge_count();
            manifest["stage_counts"]["graph"] = row;
        }

        // ---- split ----
        stage = "split";
        SplitManifest sm = transductive_split(graph, cfg.fraction, cfg.seed);
        validate_split(sm, graph);
        save_split(sm, out_dir, hash);

        // ---- eval ----
        stage = "eval";
        ExperimentContext ctx;
        ctx.split = &sm;
        ctx.tables = tables;
        ctx.seed = cfg.seed;
        std::vector<std::string> models = cfg.eval_models;
        if (models.empty()) {
            models = {"random"};
            for (Measure m : kAllMeasures) models.emplace_back(measure_name(m));
            for (const auto& [name, t] : tables) {
                (void)t;
                models.push_back("cosine:" + name);
            }
            if (tables.count(cfg.cluster_table))
                models.push_back("cosine:graph:" + cfg.cluster_table);
            if (!tables.empty()) models.push_back("svm:all");
        }
        auto rows = run_experiments(ctx, models);
        write_file(out_dir / "report.csv", to_report_csv(rows, hash));
        manifest["eval_models"] = models;

        // ---- analyze ----
        stage = "analyze";
        {
            std::map<LabeledPair, uint64_t> pair_counts;
            for (const auto& [pair, w] : full.edges()) {
                const std::string& a = full.name(pair.first);
                const std::string& b = full.name(pair.second);
                pair_counts[a < b ? LabeledPair{a, b} : LabeledPair{b, a}] = w;
            }
            std::map<std::string, uint64_t> canon_counts;
            for (const auto& r : records) {
                auto it = rename.find(r.action);
                const std::string& canon = it == rename.end() ? r.action : it->second;
                ++canon_counts[canon];
            }
            try {
                PpmiMatrix matrix = ppmi(pair_counts, canon_counts, cfg.ppmi_min_count);
                write_file(out_dir / "ppmi.csv", to_ppmi_csv(matrix, hash));
            } catch (const Error& e) {
                warnings.push_back(std::string("ppmi skipped: ") + e.what());
            }
        }

        // ---- retrieve ----
        stage = "retrieve";
        if (!cfg.retrieve_table.empty()) {
            EmbeddingTable rt;
            if (cfg.retrieve_table.rfind("graph:", 0) == 0) {
                const std::string base_name = cfg.retrieve_table.substr(6);
                auto it = tables.find(base_name);
                if (it == tables.end())
                    fail(ErrorKind::Config, "retrieve table '" + base_name + "' not configured");
                auto avg = graph_average_embedding(graph, it->second);
                for (const auto& w : avg.warnings) warnings.push_back(w);
                rt = std::move(avg.table);
            } else {
                auto it = tables.find(cfg.retrieve_table);
                if (it == tables.end())
                    fail(ErrorKind::Config,
                         "retrieve table '" + cfg.retrieve_table + "' not configured");
                rt = it->second;
            }
            std::map<std::string, std::set<std::string>> gold;
            if (!cfg.gold_neighbors_path.empty()) gold = load_gold_neighbors(cfg.gold_neighbors_path);
            std::vector<std::string> queries;
            for (const auto& name : graph.sorted_nodes())
                if (rt.contains(name)) queries.push_back(name);
            if (queries.size() > cfg.knn_k && cfg.knn_k > 0 && rt.size() > cfg.knn_k) {
                auto report = retrieval_report(queries, cfg.knn_k, rt, gold);
                write_file(out_dir / "retrieval.jsonl", to_retrieval_jsonl(report, hash));
            } else {
                warnings.push_back("retrieval skipped: not enough actions for k=" +
                                   std::to_string(cfg.knn_k));
            }
        }

        // ---- manifest ----
        stage = "manifest";
        manifest["warnings"] = warnings;
        nlohmann::json artifacts;
        for (const char* name :
             {"pairs.tsv", "rename.tsv", "cluster_metrics.json", "graph_full.tsv", "graph.tsv",
              "split.json", "test_graph.tsv", "val_graph.tsv", "train_graph.tsv", "report.csv",
              "ppmi.csv", "retrieval.jsonl"}) {
            if (std::filesystem::exists(out_dir / name)) artifacts[name] = name;
        }
        manifest["artifacts"] = artifacts;
        PipelineOutcome outcome;
        outcome.manifest = manifest;
        outcome.manifest_path = out_dir / "manifest.json";
        write_file(outcome.manifest_path, manifest.dump(2) + "\n");
        return outcome;
    } catch (const std::exception& e) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        write_file(out_dir / "FAILED", "stage=" + stage + "\nerror=" + e.what() + "\n");
        throw;
    }
}

std::string format_stage_counts(const nlohmann::json& manifest) {
    const auto& counts = manifest.at("stage_counts");
    struct Row {
        const char* key;
        const char* label;
    };
    const Row rows[] = {{"initial", "Initial"},
                        {"cooccurrence", "Co-occurrence"},
                        {"clustering", "Clustering"},
                        {"graph", "Graph"}};
    std::ostringstream out;
    out << std::left << std::setw(15) << "stage" << std::right << std::setw(8) << "verbs"
        << std::setw(10) << "actions" << std::setw(8) << "pairs" << "\n";
    for (const auto& row : rows) {
        if (!counts.contains(row.key)) continue;
        const auto& c = counts.at(row.key);
        out << std::left << std::setw(15) << row.label << std::right << std::setw(8)
            << c.at("verbs").get<uint64_t>() << std::setw(10) << c.at("actions").get<uint64_t>();
        if (c.contains("pairs"))
            out << std::setw(8) << c.at("pairs").get<uint64_t>();
        else
            out << std::setw(8) << "-";
        out << "\n";
    }
    return out.str();
}

} // namespace cooc
