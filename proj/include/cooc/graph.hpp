#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cooc {

struct CoocPair;

using NodeId = uint32_t;

/// Weighted undirected graph over action labels. No self-loops; absent edge
/// means weight 0. Edges are stored once under the canonical (min,max) id
/// pair; the adjacency index mirrors them in both directions.
class ActionGraph {
public:
    ActionGraph() = default;

    /// Id for an existing node, or nullopt.
    std::optional<NodeId> find_node(std::string_view action) const;
    /// Id for a node, inserting it if new.
    NodeId add_node(std::string_view action);

    const std::string& name(NodeId id) const { return names_[id]; }
    size_t node_count() const { return names_.size(); }
    size_t edge_count() const { return edges_.size(); }

    /// Node names in lexicographic order.
    std::vector<std::string> sorted_nodes() const;
    /// All node ids, ordered by insertion.
    std::vector<NodeId> node_ids() const;

    /// Adds weight to the a-b edge (creating nodes/edge as needed).
    /// Self-loops are rejected.
    void add_edge(std::string_view a, std::string_view b, uint64_t weight = 1);
    void add_edge(NodeId a, NodeId b, uint64_t weight = 1);
    /// Removes an edge if present; nodes are kept.
    void remove_edge(NodeId a, NodeId b);

    uint64_t edge_weight(NodeId a, NodeId b) const;
    uint64_t edge_weight(std::string_view a, std::string_view b) const;
    bool has_edge(NodeId a, NodeId b) const { return edge_weight(a, b) > 0; }

    /// Neighbors of x, sorted by neighbor id, with edge weights.
    std::span<const std::pair<NodeId, uint64_t>> neighbors(NodeId x) const;

    size_t degree(NodeId x) const { return neighbors(x).size(); }
    /// Sum of incident edge weights.
    uint64_t strength(NodeId x) const;

    /// Edge list under canonical id orientation, ordered by (a,b).
    const std::map<std::pair<NodeId, NodeId>, uint64_t>& edges() const { return edges_; }

    /// Edges keyed by lexicographically ordered name pairs; node-id free, so
    /// two graphs compare equal iff they are the same weighted graph.
    std::map<std::pair<std::string, std::string>, uint64_t> name_edges() const;

    /// Resolves a node name or throws Error{Input}.
    NodeId require_node(std::string_view action) const;

    /// Checks the adjacency index against the edge map; throws on corruption.
    void validate() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::map<std::pair<NodeId, NodeId>, uint64_t> edges_;
    mutable std::vector<std::vector<std::pair<NodeId, uint64_t>>> adjacency_;
};

/// Builds one video's graph from its co-occurrence pairs. Actions are renamed
/// through `rename` (identity when absent); pairs touching `dropped` actions
/// are skipped; pairs whose members rename to the same canonical action are
/// discarded. Edge weight = multiplicity of the canonical pair.
/// Throws Error{Input} if pairs span more than one video.
ActionGraph build_video_graph(
    const std::vector<CoocPair>& pairs,
    const std::map<std::string, std::string>& rename = {},
    const std::vector<std::string>& dropped = {});

/// Node union, edge weights summed.
ActionGraph merge_graphs(const std::vector<ActionGraph>& graphs);

/// Drops edges below min_weight, then isolated nodes.
ActionGraph filter_min_weight(const ActionGraph& graph, uint64_t min_weight);

/// Unweighted BFS hop count; nullopt when unreachable; 0 when x == y.
std::optional<size_t> shortest_path_length(const ActionGraph& graph, NodeId x, NodeId y);
std::optional<size_t> shortest_path_length(const ActionGraph& graph,
                                           std::string_view x, std::string_view y);

/// Edge-list TSV: `action_a \t action_b \t weight`, actions lexicographically
/// ordered within a line, lines sorted. `header` lines are prepended as
/// `#`-comments.
std::string to_edge_list_tsv(const ActionGraph& graph, const std::vector<std::string>& header = {});
void save_edge_list(const ActionGraph& graph, const std::filesystem::path& path,
                    const std::vector<std::string>& header = {});
/// Parses and validates an edge-list TSV (weights >= 1, no self-loops).
ActionGraph load_edge_list(const std::filesystem::path& path);
ActionGraph parse_edge_list(std::string_view content, const std::string& source_name);

} // namespace cooc
