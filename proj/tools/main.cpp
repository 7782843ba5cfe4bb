// cooc: action co-occurrence graph construction and link prediction toolkit.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cooc/analysis.hpp"
#include "cooc/classifier.hpp"
#include "cooc/clustering.hpp"
#include "cooc/embeddings.hpp"
#include "cooc/error.hpp"
#include "cooc/eval.hpp"
#include "cooc/graph.hpp"
#include "cooc/heuristics.hpp"
#include "cooc/pipeline.hpp"
#include "cooc/records.hpp"
#include "cooc/split.hpp"
#include "cooc/util.hpp"

namespace fs = std::filesystem;
using namespace cooc;

namespace {

// fingerprint of a standalone subcommand's effective options
std::string options_hash(const nlohmann::json& opts) {
    return fnv1a_hex(opts.dump());
}

std::map<std::string, EmbeddingTable> load_named_tables(const std::vector<std::string>& specs) {
    std::map<std::string, EmbeddingTable> tables;
    for (const auto& spec : specs) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Config, "embedding spec must be name=path, got '" + spec + "'");
        tables.emplace(spec.substr(0, eq), load_table(spec.substr(eq + 1)));
    }
    return tables;
}

std::vector<std::pair<std::string, std::string>> load_candidate_pairs(const fs::path& path) {
    std::vector<std::pair<std::string, std::string>> out;
    size_t line_no = 0;
    for (const auto& line : read_lines(path)) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        auto fields = split(line, '\t');
        if (fields.size() < 2)
            fail(ErrorKind::Parse, path.filename().string() + ":" + std::to_string(line_no) +
                                       ": expected `action_a \\t action_b`");
        out.emplace_back(std::string(trim(fields[0])), std::string(trim(fields[1])));
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"action co-occurrence graphs and link prediction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("cooc ") + kToolVersion);

    uint64_t seed = 7;
    std::string out_dir = "out";
    std::string config_path;
    app.add_option("--seed", seed, "seed for every random draw")->capture_default_str();
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--config", config_path, "pipeline config file");

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "parse records and extract co-occurring pairs");
    std::string in_records, in_allowlist, out_pairs = "pairs.tsv";
    double window_s = 10.0;
    ingest->add_option("--records", in_records, "JSONL action records")->required();
    ingest->add_option("--allowlist", in_allowlist, "visual-verb allowlist");
    ingest->add_option("--window", window_s, "co-occurrence window, seconds")
        ->capture_default_str();
    ingest->add_option("--out", out_pairs, "output pairs TSV")->capture_default_str();

    // ---- cluster ----
    auto* cluster = app.add_subcommand("cluster", "group near-duplicate actions and rename them");
    std::string cl_embeddings, cl_records, cl_scale = "distance";
    std::string cl_out_rename = "rename.tsv", cl_out_metrics = "cluster_metrics.json",
                cl_out_dropped = "dropped.txt";
    double cl_threshold = 1.5;
    bool cl_normalize = false;
    cluster->add_option("--embeddings", cl_embeddings, "action embedding TSV")->required();
    cluster->add_option("--records", cl_records, "JSONL records (occurrence counts)")->required();
    cluster->add_option("--threshold", cl_threshold, "ward merge threshold")
        ->capture_default_str();
    cluster->add_option("--cost-scale", cl_scale, "'distance' (sqrt(2*SSE)) or 'sse'")
        ->capture_default_str();
    cluster->add_flag("--normalize", cl_normalize, "L2-normalize embeddings first");
    cluster->add_option("--out-rename", cl_out_rename)->capture_default_str();
    cluster->add_option("--out-metrics", cl_out_metrics)->capture_default_str();
    cluster->add_option("--out-dropped", cl_out_dropped)->capture_default_str();

    // ---- build-graph ----
    auto* build = app.add_subcommand("build-graph", "build, merge and weight-filter the graph");
    std::string bg_pairs, bg_rename, bg_dropped, bg_out = "graph.tsv", bg_out_full;
    uint64_t bg_min_weight = 2;
    build->add_option("--pairs", bg_pairs, "co-occurrence pairs TSV")->required();
    build->add_option("--rename", bg_rename, "rename map TSV");
    build->add_option("--dropped", bg_dropped, "dropped actions, one per line");
    build->add_option("--min-weight", bg_min_weight, "minimum edge weight kept")
        ->capture_default_str();
    build->add_option("--out", bg_out, "filtered edge-list TSV")->capture_default_str();
    build->add_option("--out-full", bg_out_full, "unfiltered edge-list TSV");

    // ---- split ----
    auto* split_cmd = app.add_subcommand("split", "transductive test/val/train edge split");
    std::string sp_graph;
    double sp_fraction = 0.1;
    split_cmd->add_option("--graph", sp_graph, "edge-list TSV")->required();
    split_cmd->add_option("--fraction", sp_fraction, "edge fraction removed per stage")
        ->capture_default_str();

    // ---- score ----
    auto* score = app.add_subcommand("score", "topology heuristic scores for candidate pairs");
    std::string sc_graph, sc_pairs, sc_measures = "all", sc_out = "scores.tsv";
    score->add_option("--graph", sc_graph, "edge-list TSV")->required();
    score->add_option("--pairs", sc_pairs, "candidate pairs TSV (action_a \\t action_b)")
        ->required();
    score->add_option("--measures", sc_measures, "'all' or comma list (cn,aa,...)")
        ->capture_default_str();
    score->add_option("--out", sc_out)->capture_default_str();

    // ---- train ----
    auto* train = app.add_subcommand("train", "grid-searched SVM on a split manifest");
    std::string tr_manifest, tr_out = "model.json";
    std::vector<std::string> tr_tables, tr_reprs;
    train->add_option("--split-manifest", tr_manifest, "split.json path")->required();
    train->add_option("--embeddings", tr_tables, "name=path embedding tables");
    train->add_option("--representations", tr_reprs,
                      "representation ids (table, graph:table, all)");
    train->add_option("--out", tr_out)->capture_default_str();

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "model x representation accuracy report");
    std::string ev_manifest, ev_out = "report.csv";
    std::vector<std::string> ev_tables, ev_models;
    eval_cmd->add_option("--split-manifest", ev_manifest, "split.json path")->required();
    eval_cmd->add_option("--embeddings", ev_tables, "name=path embedding tables");
    eval_cmd->add_option("--models", ev_models, "model ids (random, cn, cosine:t, svm:all, ...)")
        ->required();
    eval_cmd->add_option("--out", ev_out)->capture_default_str();

    // ---- analyze ----
    auto* analyze = app.add_subcommand("analyze", "PPMI co-occurrence matrix");
    std::string an_pairs, an_records, an_rename, an_out = "ppmi.csv";
    uint64_t an_min_count = 10;
    analyze->add_option("--pairs", an_pairs, "co-occurrence pairs TSV")->required();
    analyze->add_option("--records", an_records, "JSONL records (occurrence counts)")->required();
    analyze->add_option("--rename", an_rename, "rename map TSV");
    analyze->add_option("--min-count", an_min_count, "minimum action occurrences")
        ->capture_default_str();
    analyze->add_option("--out", an_out)->capture_default_str();

    // ---- retrieve ----
    auto* retrieve = app.add_subcommand("retrieve", "kNN retrieval diagnostics");
    std::string rt_embeddings, rt_graph, rt_gold, rt_out = "retrieval.jsonl";
    std::vector<std::string> rt_queries;
    uint64_t rt_k = 3;
    retrieve->add_option("--embeddings", rt_embeddings, "embedding TSV")->required();
    retrieve->add_option("--graph", rt_graph,
                         "edge-list TSV; when set, vectors are graph-averaged first");
    retrieve->add_option("--gold", rt_gold, "gold temporal neighbors TSV");
    retrieve->add_option("--queries", rt_queries, "query actions (default: all)");
    retrieve->add_option("--k", rt_k, "neighbors per query")->capture_default_str();
    retrieve->add_option("--out", rt_out)->capture_default_str();

    // ---- pipeline ----
    auto* pipeline = app.add_subcommand("pipeline", "run every stage from one config file");

    CLI11_PARSE(app, argc, argv);
    fs::create_directories(out_dir);
    auto out_path = [&](const std::string& name) { return fs::path(out_dir) / name; };

    if (*ingest) {
        auto records = load_records(in_records);
        if (!in_allowlist.empty()) records = filter_visual(records, load_allowlist(in_allowlist));
        auto pairs = extract_cooccurrences(records, window_s);
        std::string hash = options_hash({{"records", in_records},
                                         {"allowlist", in_allowlist},
                                         {"window", window_s}});
        write_file(out_path(out_pairs), to_pairs_tsv(pairs, {"config=" + hash}));
        std::cout << records.size() << " records -> " << pairs.size() << " co-occurrence pairs\n";
        return 0;
    }

    if (*cluster) {
        EmbeddingTable table = load_table(cl_embeddings);
        if (cl_normalize) table = l2_normalize(table);
        auto records = load_records(cl_records);
        auto counts = count_actions(records);
        // cluster only the actions the corpus actually uses
        EmbeddingTable subset;
        for (const auto& [action, c] : counts) {
            (void)c;
            if (table.contains(action)) subset.insert(action, table.at(action));
        }
        auto assignment =
            agglomerative_cluster(subset, cl_threshold, ward_cost_scale_from_name(cl_scale));
        for (const auto& w : assignment.warnings) std::cerr << "warning: " << w << "\n";
        auto renamed = filter_and_rename(assignment, counts);
        std::string hash = options_hash({{"embeddings", cl_embeddings},
                                         {"records", cl_records},
                                         {"threshold", cl_threshold},
                                         {"scale", cl_scale},
                                         {"normalize", cl_normalize}});
        write_file(out_path(cl_out_rename), to_rename_tsv(renamed.rename, {"config=" + hash}));
        std::string dropped_text = "# config=" + hash + "\n";
        for (const auto& d : renamed.dropped) dropped_text += d + "\n";
        write_file(out_path(cl_out_dropped), dropped_text);

        nlohmann::json metrics;
        metrics["config_hash"] = hash;
        metrics["n_clusters"] = assignment.cluster_count();
        metrics["n_dropped"] = renamed.dropped.size();
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
        write_file(out_path(cl_out_metrics), metrics.dump(2) + "\n");
        std::cout << assignment.cluster_count() << " clusters, " << renamed.dropped.size()
                  << " actions dropped\n";
        return 0;
    }

    if (*build) {
        auto pairs = load_pairs_tsv(bg_pairs);
        std::map<std::string, std::string> rename;
        if (!bg_rename.empty()) rename = load_rename_tsv(bg_rename);
        std::vector<std::string> dropped;
        if (!bg_dropped.empty())
            for (const auto& line : read_lines(bg_dropped))
                if (!is_skippable_line(line)) dropped.emplace_back(trim(line));
        std::map<std::string, std::vector<CoocPair>> by_video;
        for (const auto& p : pairs) by_video[p.video_id].push_back(p);
        std::vector<ActionGraph> graphs;
        for (const auto& [vid, vpairs] : by_video) {
            (void)vid;
            graphs.push_back(build_video_graph(vpairs, rename, dropped));
        }
        ActionGraph full = merge_graphs(graphs);
        ActionGraph filtered = filter_min_weight(full, bg_min_weight);
        std::string hash = options_hash({{"pairs", bg_pairs},
                                         {"rename", bg_rename},
                                         {"min_weight", bg_min_weight}});
        if (!bg_out_full.empty()) save_edge_list(full, out_path(bg_out_full), {"config=" + hash});
        save_edge_list(filtered, out_path(bg_out), {"config=" + hash});
        std::cout << "full graph: " << full.node_count() << " nodes / " << full.edge_count()
                  << " edges; filtered (min weight " << bg_min_weight
                  << "): " << filtered.node_count() << " nodes / " << filtered.edge_count()
                  << " edges\n";
        return 0;
    }

    if (*split_cmd) {
        auto graph = load_edge_list(sp_graph);
        auto manifest = transductive_split(graph, sp_fraction, seed);
        validate_split(manifest, graph);
        std::string hash =
            options_hash({{"graph", sp_graph}, {"fraction", sp_fraction}, {"seed", seed}});
        save_split(manifest, out_dir, hash);
        std::cout << "test/val/train positives: " << manifest.test.positives.size() << "/"
                  << manifest.val.positives.size() << "/" << manifest.train.positives.size()
                  << "\n";
        return 0;
    }

    if (*score) {
        auto graph = load_edge_list(sc_graph);
        auto pairs = load_candidate_pairs(sc_pairs);
        std::vector<Measure> measures;
        if (sc_measures == "all") {
            measures.assign(kAllMeasures.begin(), kAllMeasures.end());
        } else {
            for (auto part : split(sc_measures, ','))
                measures.push_back(measure_from_name(trim(part)));
        }
        auto rows = score_pairs(graph, pairs, measures);
        std::string hash = options_hash({{"graph", sc_graph}, {"measures", sc_measures}});
        write_file(out_path(sc_out), to_scores_tsv(rows, {"config=" + hash}));
        std::cout << rows.size() << " scores written\n";
        return 0;
    }

    if (*train) {
        SplitManifest manifest = load_split(tr_manifest);
        ExperimentContext ctx;
        ctx.split = &manifest;
        ctx.tables = load_named_tables(tr_tables);
        ctx.seed = seed;
        std::string model_id = "svm:";
        if (tr_reprs.empty()) {
            model_id += ctx.tables.empty() ? "heuristics" : "all";
        } else {
            for (size_t i = 0; i < tr_reprs.size(); ++i)
                model_id += (i ? "+" : "") + tr_reprs[i];
        }
        auto row = run_experiment(ctx, parse_model_spec(model_id));
        std::cout << "svm test accuracy " << format_double(row.accuracy) << " ("
                  << row.config_json << ")\n";

        // persist the full inference bundle refit on the winning config
        auto spec = parse_model_spec(model_id);
        std::vector<std::string> reprs;
        for (const auto& r : spec.representations) {
            if (r == "all") {
                for (const auto& [name, t] : ctx.tables) {
                    (void)t;
                    reprs.push_back(name);
                }
            } else {
                reprs.push_back(r);
            }
        }
        std::vector<EmbeddingTable> resolved;
        resolved.reserve(reprs.size());
        for (const auto& r : reprs) {
            if (r.rfind("graph:", 0) == 0)
                resolved.push_back(
                    graph_average_embedding(manifest.val_graph, ctx.tables.at(r.substr(6))).table);
            else
                resolved.push_back(ctx.tables.at(r));
        }
        PairFeatureSpec fs_spec;
        for (size_t i = 0; i < reprs.size(); ++i) fs_spec.tables.emplace_back(reprs[i], &resolved[i]);
        fs_spec.graph = &manifest.train_graph;
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (const auto& [a, b] : manifest.train.positives) {
            x.push_back(assemble_features(a, b, fs_spec));
            y.push_back(1);
        }
        for (const auto& [a, b] : manifest.train.negatives) {
            x.push_back(assemble_features(a, b, fs_spec));
            y.push_back(0);
        }
        SvmPipelineModel pm;
        pm.standardizer = fit_standardizer(x);
        pm.feature_names = feature_manifest(fs_spec);
        auto cfg = nlohmann::json::parse(row.config_json);
        SvmParams params;
        params.kernel = kernel_from_name(cfg.at("kernel").get<std::string>());
        params.c = cfg.at("c").get<double>();
        params.gamma = cfg.at("gamma").get<double>();
        pm.model = svm_train(apply_standardizer(pm.standardizer, x), y, params);
        save_model(pm, out_path(tr_out),
                   options_hash({{"manifest", tr_manifest}, {"model", model_id}}));
        return 0;
    }

    if (*eval_cmd) {
        SplitManifest manifest = load_split(ev_manifest);
        ExperimentContext ctx;
        ctx.split = &manifest;
        ctx.tables = load_named_tables(ev_tables);
        ctx.seed = seed;
        auto rows = run_experiments(ctx, ev_models);
        std::string hash = options_hash({{"manifest", ev_manifest}, {"seed", seed}});
        write_file(out_path(ev_out), to_report_csv(rows, hash));
        std::cout << format_report_table(rows);
        return 0;
    }

    if (*analyze) {
        auto pairs = load_pairs_tsv(an_pairs);
        auto records = load_records(an_records);
        std::map<std::string, std::string> rename;
        if (!an_rename.empty()) rename = load_rename_tsv(an_rename);
        auto canon = [&](const std::string& a) {
            auto it = rename.find(a);
            return it == rename.end() ? a : it->second;
        };
        std::map<LabeledPair, uint64_t> pair_counts;
        for (const auto& p : pairs) {
            std::string a = canon(p.action_a), b = canon(p.action_b);
            if (a == b) continue;
            if (b < a) std::swap(a, b);
            ++pair_counts[{a, b}];
        }
        std::map<std::string, uint64_t> action_counts;
        for (const auto& r : records) ++action_counts[canon(r.action)];
        auto matrix = ppmi(pair_counts, action_counts, an_min_count);
        std::string hash = options_hash(
            {{"pairs", an_pairs}, {"records", an_records}, {"min_count", an_min_count}});
        write_file(out_path(an_out), to_ppmi_csv(matrix, hash));
        std::cout << matrix.actions.size() << " actions in the matrix\n";
        return 0;
    }

    if (*retrieve) {
        EmbeddingTable table = load_table(rt_embeddings);
        if (!rt_graph.empty()) {
            auto graph = load_edge_list(rt_graph);
            auto avg = graph_average_embedding(graph, table);
            for (const auto& w : avg.warnings) std::cerr << "warning: " << w << "\n";
            table = std::move(avg.table);
        }
        std::map<std::string, std::set<std::string>> gold;
        if (!rt_gold.empty()) gold = load_gold_neighbors(rt_gold);
        std::vector<std::string> queries = rt_queries;
        if (queries.empty())
            for (const auto& [name, vec] : table.vectors) {
                (void)vec;
                queries.push_back(name);
            }
        auto rows = retrieval_report(queries, rt_k, table, gold);
        std::string hash = options_hash({{"embeddings", rt_embeddings},
                                         {"graph", rt_graph},
                                         {"k", rt_k}});
        write_file(out_path(rt_out), to_retrieval_jsonl(rows, hash));
        double mean_overlap = 0.0;
        for (const auto& r : rows) mean_overlap += r.overlap;
        std::cout << rows.size() << " queries, mean overlap "
                  << format_double(rows.empty() ? 0.0 : mean_overlap / rows.size()) << "\n";
        return 0;
    }

    if (*pipeline) {
        if (config_path.empty()) fail(ErrorKind::Config, "pipeline needs --config");
        PipelineConfig cfg = load_pipeline_config(config_path);
        if (app.count("--seed")) cfg.seed = seed;
        auto outcome = run_pipeline(cfg, out_dir);
        std::cout << format_stage_counts(outcome.manifest);
        std::cout << "manifest: " << outcome.manifest_path.string() << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Config ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
