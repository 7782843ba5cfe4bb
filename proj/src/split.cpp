#include "cooc/split.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "cooc/error.hpp"
#include "cooc/rng.hpp"
#include "cooc/util.hpp"

namespace cooc {

const ActionGraph& SplitManifest::stage_graph(std::string_view stage) const {
    if (stage == "test") return test_graph;
    if (stage == "val") return val_graph;
    if (stage == "train") return train_graph;
    fail(ErrorKind::Input, "unknown stage: " + std::string(stage));
}

const SplitStage& SplitManifest::stage_pairs(std::string_view stage) const {
    if (stage == "test") return test;
    if (stage == "val") return val;
    if (stage == "train") return train;
    fail(ErrorKind::Input, "unknown stage: " + std::string(stage));
}

namespace {

ActionGraph copy_graph(const ActionGraph& g) {
    ActionGraph out;
    for (const auto& name : g.sorted_nodes()) out.add_node(name);
    for (const auto& [pair, w] : g.edges())
        out.add_edge(g.name(pair.first), g.name(pair.second), w);
    return out;
}

LabeledPair ordered_pair(const std::string& a, const std::string& b) {
    return a < b ? LabeledPair{a, b} : LabeledPair{b, a};
}

} // namespace

SplitManifest transductive_split(const ActionGraph& graph, double fraction, uint64_t seed) {
    if (!(fraction > 0.0) || !(fraction < 1.0))
        fail(ErrorKind::Config, "split fraction must lie in (0, 1)");

    SplitManifest m;
    m.seed = seed;
    m.fraction = fraction;
    SeededRng rng(seed);

    const std::vector<std::string> node_names = graph.sorted_nodes();
    const size_t n = node_names.size();

    // canonical name-pair set of original edges, for negative rejection
    std::set<LabeledPair> original_edges;
    for (const auto& [pair, w] : graph.edges()) {
        (void)w;
        original_edges.insert(ordered_pair(graph.name(pair.first), graph.name(pair.second)));
    }

    const size_t max_pairs = n * (n - 1) / 2;
    const size_t non_edge_count = max_pairs - original_edges.size();

    // chained sizing first, so sizing errors fire before any sampling
    size_t sizes[3];
    size_t remaining = graph.edge_count();
    size_t total_negatives = 0;
    const char* stage_names[3] = {"test", "val", "train"};
    for (int s = 0; s < 3; ++s) {
        sizes[s] = static_cast<size_t>(fraction * static_cast<double>(remaining));
        if (sizes[s] == 0)
            fail(ErrorKind::Sizing,
                 std::string("stage '") + stage_names[s] + "' would be empty: floor(" +
                     format_double(fraction) + " * " + std::to_string(remaining) + ") = 0");
        remaining -= sizes[s];
        total_negatives += sizes[s];
    }
    if (total_negatives > non_edge_count)
        fail(ErrorKind::Sizing, "need " + std::to_string(total_negatives) +
                                    " negatives but the graph has only " +
                                    std::to_string(non_edge_count) + " non-edges");

    std::set<LabeledPair> used_negatives;
    ActionGraph current = copy_graph(graph);
    SplitStage* stages[3] = {&m.test, &m.val, &m.train};
    ActionGraph* graphs[3] = {&m.test_graph, &m.val_graph, &m.train_graph};

    for (int s = 0; s < 3; ++s) {
        // positives: uniform sample, without replacement, from the sorted edge list
        std::vector<LabeledPair> edge_list;
        edge_list.reserve(current.edge_count());
        for (const auto& [pair, w] : current.edges()) {
            (void)w;
            edge_list.push_back(ordered_pair(current.name(pair.first), current.name(pair.second)));
        }
        std::sort(edge_list.begin(), edge_list.end());
        for (size_t idx : rng.sample_indices(edge_list.size(), sizes[s]))
            stages[s]->positives.push_back(edge_list[idx]);
        std::sort(stages[s]->positives.begin(), stages[s]->positives.end());

        for (const auto& [a, b] : stages[s]->positives)
            current.remove_edge(current.require_node(a), current.require_node(b));

        // negatives: rejection sampling over node pairs, with a deterministic
        // dense-graph fallback to enumeration
        size_t attempts = 0;
        const size_t attempt_budget = 200 * sizes[s] + 1000;
        while (stages[s]->negatives.size() < sizes[s] && attempts < attempt_budget) {
            ++attempts;
            size_t i = rng.uniform_index(n);
            size_t j = rng.uniform_index(n);
            if (i == j) continue;
            LabeledPair cand = ordered_pair(node_names[i], node_names[j]);
            if (original_edges.count(cand) || used_negatives.count(cand)) continue;
            used_negatives.insert(cand);
            stages[s]->negatives.push_back(cand);
        }
        if (stages[s]->negatives.size() < sizes[s]) {
            std::vector<LabeledPair> pool;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) {
                    LabeledPair cand{node_names[i], node_names[j]};
                    if (!original_edges.count(cand) && !used_negatives.count(cand))
                        pool.push_back(cand);
                }
            size_t need = sizes[s] - stages[s]->negatives.size();
            for (size_t idx : rng.sample_indices(pool.size(), need)) {
                used_negatives.insert(pool[idx]);
                stages[s]->negatives.push_back(pool[idx]);
            }
        }
        std::sort(stages[s]->negatives.begin(), stages[s]->negatives.end());

        *graphs[s] = copy_graph(current);
    }
    return m;
}

namespace {

std::set<LabeledPair> name_edge_set(const ActionGraph& g) {
    std::set<LabeledPair> out;
    for (const auto& [pair, w] : g.edges()) {
        (void)w;
        out.insert(ordered_pair(g.name(pair.first), g.name(pair.second)));
    }
    return out;
}

} // namespace

void validate_split(const SplitManifest& m, const ActionGraph& original) {
    const auto nodes = original.sorted_nodes();
    for (const ActionGraph* g : {&m.test_graph, &m.val_graph, &m.train_graph})
        if (g->sorted_nodes() != nodes)
            fail(ErrorKind::Validation, "stage graph node set differs from the original");

    auto orig_edges = name_edge_set(original);
    auto test_edges = name_edge_set(m.test_graph);
    auto val_edges = name_edge_set(m.val_graph);
    auto train_edges = name_edge_set(m.train_graph);

    auto subset = [](const std::set<LabeledPair>& a, const std::set<LabeledPair>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    if (!subset(test_edges, orig_edges) || !subset(val_edges, test_edges) ||
        !subset(train_edges, val_edges))
        fail(ErrorKind::Validation, "edge containment chain broken");

    struct StageView {
        const char* name;
        const SplitStage* pairs;
        const std::set<LabeledPair>* graph_edges;
    };
    StageView views[3] = {{"test", &m.test, &test_edges},
                          {"val", &m.val, &val_edges},
                          {"train", &m.train, &train_edges}};

    std::set<LabeledPair> all_positives, all_negatives;
    for (const auto& view : views) {
        if (view.pairs->positives.size() != view.pairs->negatives.size())
            fail(ErrorKind::Validation, std::string(view.name) + ": positives/negatives unbalanced");
        for (const auto& p : view.pairs->positives) {
            if (!orig_edges.count(p))
                fail(ErrorKind::Validation, std::string(view.name) + ": positive is not an original edge");
            if (view.graph_edges->count(p))
                fail(ErrorKind::Validation, std::string(view.name) + ": positive still present in stage graph");
            if (!all_positives.insert(p).second)
                fail(ErrorKind::Validation, "positive sampled in two stages");
        }
        for (const auto& p : view.pairs->negatives) {
            if (orig_edges.count(p))
                fail(ErrorKind::Validation, std::string(view.name) + ": negative is an original edge");
            if (p.first == p.second)
                fail(ErrorKind::Validation, "self-pair sampled as negative");
            if (!all_negatives.insert(p).second)
                fail(ErrorKind::Validation, "negative sampled in two stages");
        }
    }
    for (const auto& p : all_negatives)
        if (all_positives.count(p))
            fail(ErrorKind::Validation, "pair appears as both positive and negative");
}

std::string to_manifest_json(const SplitManifest& m, const std::string& config_hash) {
    nlohmann::json j;
    j["seed"] = m.seed;
    j["fraction"] = m.fraction;
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    const SplitStage* stages[3] = {&m.test, &m.val, &m.train};
    const char* names[3] = {"test", "val", "train"};
    for (int s = 0; s < 3; ++s) {
        nlohmann::json stage;
        auto& removed = stage["removed_edges"] = nlohmann::json::array();
        for (const auto& [a, b] : stages[s]->positives) removed.push_back({a, b});
        auto& negatives = stage["negatives"] = nlohmann::json::array();
        for (const auto& [a, b] : stages[s]->negatives) negatives.push_back({a, b});
        j["stages"][names[s]] = std::move(stage);
    }
    j["graph_files"] = {{"test", "test_graph.tsv"},
                        {"val", "val_graph.tsv"},
                        {"train", "train_graph.tsv"}};
    return j.dump(2) + "\n";
}

void save_split(const SplitManifest& m, const std::filesystem::path& dir,
                const std::string& config_hash) {
    std::vector<std::string> header;
    if (!config_hash.empty()) header.push_back("config=" + config_hash);
    save_edge_list(m.test_graph, dir / "test_graph.tsv", header);
    save_edge_list(m.val_graph, dir / "val_graph.tsv", header);
    save_edge_list(m.train_graph, dir / "train_graph.tsv", header);
    write_file(dir / "split.json", to_manifest_json(m, config_hash));
}

SplitManifest load_split(const std::filesystem::path& manifest_path) {
    nlohmann::json j = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::Parse, "invalid JSON in " + manifest_path.string());
    SplitManifest m;
    m.seed = j.at("seed").get<uint64_t>();
    m.fraction = j.at("fraction").get<double>();
    SplitStage* stages[3] = {&m.test, &m.val, &m.train};
    const char* names[3] = {"test", "val", "train"};
    for (int s = 0; s < 3; ++s) {
        const auto& stage = j.at("stages").at(names[s]);
        for (const auto& e : stage.at("removed_edges"))
            stages[s]->positives.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        for (const auto& e : stage.at("negatives"))
            stages[s]->negatives.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    const auto dir = manifest_path.parent_path();
    const auto& files = j.at("graph_files");
    m.test_graph = load_edge_list(dir / files.at("test").get<std::string>());
    m.val_graph = load_edge_list(dir / files.at("val").get<std::string>());
    m.train_graph = load_edge_list(dir / files.at("train").get<std::string>());
    return m;
}

} // namespace cooc
