#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cooc/graph.hpp"

namespace cooc {

using LabeledPair = std::pair<std::string, std::string>; // lexicographically ordered

struct SplitStage {
    std::vector<LabeledPair> positives; // edges removed at this stage
    std::vector<LabeledPair> negatives; // sampled original non-edges
};

/// Chained transductive split. Node sets of all three graphs equal the
/// original's; edge sets satisfy train ⊆ val ⊆ test ⊆ original; per stage
/// |positives| == |negatives|; negatives are original non-edges, disjoint
/// across stages.
struct SplitManifest {
    uint64_t seed = 0;
    double fraction = 0.0;
    ActionGraph test_graph;
    ActionGraph val_graph;
    ActionGraph train_graph;
    SplitStage test;
    SplitStage val;
    SplitStage train;

    const ActionGraph& stage_graph(std::string_view stage) const;
    const SplitStage& stage_pairs(std::string_view stage) const;
};

/// Removes floor(fraction*|E|) uniformly sampled edges per stage (test, then
/// validation from the test graph, then train from the validation graph) and
/// samples an equal number of distinct negatives from the original graph's
/// non-edges. All randomness comes from the seed. Throws Error{Sizing} with
/// counts when a stage would be empty or negatives cannot be satisfied.
SplitManifest transductive_split(const ActionGraph& graph, double fraction, uint64_t seed);

/// Checks every manifest invariant against the original graph; throws
/// Error{Validation} describing the first violation.
void validate_split(const SplitManifest& manifest, const ActionGraph& original);

/// Manifest JSON: {seed, fraction, stages:{test|val|train:{removed_edges,
/// negatives}}, graph_files?}. Graphs are referenced by edge-list files when
/// saved via save_split.
std::string to_manifest_json(const SplitManifest& manifest, const std::string& config_hash = "");
void save_split(const SplitManifest& manifest, const std::filesystem::path& dir,
                const std::string& config_hash = "");
SplitManifest load_split(const std::filesystem::path& manifest_path);

} // namespace cooc
