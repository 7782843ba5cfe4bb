#include "cooc/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "cooc/error.hpp"
#include "cooc/records.hpp"
#include "cooc/util.hpp"

namespace cooc {

std::optional<NodeId> ActionGraph::find_node(std::string_view action) const {
    auto it = index_.find(std::string(action));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId ActionGraph::add_node(std::string_view action) {
    std::string key(action);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(key);
    index_.emplace(std::move(key), id);
    adjacency_.emplace_back();
    return id;
}

std::vector<std::string> ActionGraph::sorted_nodes() const {
    std::vector<std::string> out = names_;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NodeId> ActionGraph::node_ids() const {
    std::vector<NodeId> out(names_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<NodeId>(i);
    return out;
}

std::map<std::pair<std::string, std::string>, uint64_t> ActionGraph::name_edges() const {
    std::map<std::pair<std::string, std::string>, uint64_t> out;
    for (const auto& [pair, w] : edges_) {
        const std::string& a = names_[pair.first];
        const std::string& b = names_[pair.second];
        out[a < b ? std::make_pair(a, b) : std::make_pair(b, a)] = w;
    }
    return out;
}

NodeId ActionGraph::require_node(std::string_view action) const {
    auto id = find_node(action);
    if (!id) fail(ErrorKind::Input, "unknown node: " + std::string(action));
    return *id;
}

void ActionGraph::add_edge(std::string_view a, std::string_view b, uint64_t weight) {
    add_edge(add_node(a), add_node(b), weight);
}

void ActionGraph::add_edge(NodeId a, NodeId b, uint64_t weight) {
    if (a == b) fail(ErrorKind::Input, "self-loop rejected: " + names_[a]);
    if (weight == 0) return;
    auto key = std::minmax(a, b);
    auto [it, inserted] = edges_.try_emplace({key.first, key.second}, weight);
    if (!inserted) {
        it->second += weight;
        for (auto& [n, w] : adjacency_[a])
            if (n == b) w = it->second;
        for (auto& [n, w] : adjacency_[b])
            if (n == a) w = it->second;
        return;
    }
    auto insert_sorted = [&](NodeId from, NodeId to, uint64_t w) {
        auto& adj = adjacency_[from];
        auto pos = std::lower_bound(adj.begin(), adj.end(), to,
                                    [](const auto& p, NodeId v) { return p.first < v; });
        adj.insert(pos, {to, w});
    };
    insert_sorted(a, b, weight);
    insert_sorted(b, a, weight);
}

void ActionGraph::remove_edge(NodeId a, NodeId b) {
    auto key = std::minmax(a, b);
    auto it = edges_.find({key.first, key.second});
    if (it == edges_.end()) return;
    edges_.erase(it);
    auto drop = [&](NodeId from, NodeId to) {
        auto& adj = adjacency_[from];
        auto pos = std::lower_bound(adj.begin(), adj.end(), to,
                                    [](const auto& p, NodeId v) { return p.first < v; });
        if (pos != adj.end() && pos->first == to) adj.erase(pos);
    };
    drop(a, b);
    drop(b, a);
}

uint64_t ActionGraph::edge_weight(NodeId a, NodeId b) const {
    if (a == b) return 0;
    auto key = std::minmax(a, b);
    auto it = edges_.find({key.first, key.second});
    return it == edges_.end() ? 0 : it->second;
}

uint64_t ActionGraph::edge_weight(std::string_view a, std::string_view b) const {
    auto ia = find_node(a);
    auto ib = find_node(b);
    if (!ia || !ib) return 0;
    return edge_weight(*ia, *ib);
}

std::span<const std::pair<NodeId, uint64_t>> ActionGraph::neighbors(NodeId x) const {
    if (x >= adjacency_.size()) fail(ErrorKind::Input, "node id out of range");
    return adjacency_[x];
}

uint64_t ActionGraph::strength(NodeId x) const {
    uint64_t s = 0;
    for (auto [n, w] : neighbors(x)) s += w;
    return s;
}

void ActionGraph::validate() const {
    size_t mirrored = 0;
    for (NodeId x = 0; x < adjacency_.size(); ++x) {
        NodeId prev = 0;
        bool first = true;
        for (auto [n, w] : adjacency_[x]) {
            if (!first && n <= prev) fail(ErrorKind::Validation, "adjacency not sorted");
            prev = n;
            first = false;
            if (n == x) fail(ErrorKind::Validation, "self-loop in adjacency: " + names_[x]);
            if (edge_weight(x, n) != w)
                fail(ErrorKind::Validation, "adjacency weight mismatch at " + names_[x]);
            ++mirrored;
        }
    }
    if (mirrored != 2 * edges_.size())
        fail(ErrorKind::Validation, "adjacency entry count disagrees with edge map");
    for (const auto& [pair, w] : edges_) {
        if (w == 0) fail(ErrorKind::Validation, "zero-weight edge stored");
        if (pair.first == pair.second) fail(ErrorKind::Validation, "self-loop stored");
    }
}

ActionGraph build_video_graph(const std::vector<CoocPair>& pairs,
                              const std::map<std::string, std::string>& rename,
                              const std::vector<std::string>& dropped) {
    ActionGraph g;
    if (pairs.empty()) return g;
    const std::string& vid = pairs.front().video_id;
    auto canonical = [&](const std::string& action) -> const std::string& {
        auto it = rename.find(action);
        return it == rename.end() ? action : it->second;
    };
    auto is_dropped = [&](const std::string& action) {
        return std::find(dropped.begin(), dropped.end(), action) != dropped.end();
    };
    for (const auto& p : pairs) {
        if (p.video_id != vid)
            fail(ErrorKind::Input,
                 "pairs from multiple videos: " + vid + " vs " + p.video_id);
        if (is_dropped(p.action_a) || is_dropped(p.action_b)) continue;
        const std::string& a = canonical(p.action_a);
        const std::string& b = canonical(p.action_b);
        if (a == b) continue; // both sides collapsed to one canonical action
        g.add_edge(a, b, 1);
    }
    return g;
}

ActionGraph merge_graphs(const std::vector<ActionGraph>& graphs) {
    ActionGraph out;
    for (const auto& g : graphs) {
        for (const auto& name : g.sorted_nodes()) out.add_node(name);
        for (const auto& [pair, w] : g.edges())
            out.add_edge(g.name(pair.first), g.name(pair.second), w);
    }
    return out;
}

ActionGraph filter_min_weight(const ActionGraph& graph, uint64_t min_weight) {
    ActionGraph out;
    for (const auto& [pair, w] : graph.edges()) {
        if (w >= min_weight)
            out.add_edge(graph.name(pair.first), graph.name(pair.second), w);
    }
    return out;
}

std::optional<size_t> shortest_path_length(const ActionGraph& graph, NodeId x, NodeId y) {
    if (x >= graph.node_count() || y >= graph.node_count())
        fail(ErrorKind::Input, "node id out of range");
    if (x == y) return 0;
    std::vector<uint32_t> dist(graph.node_count(), UINT32_MAX);
    std::deque<NodeId> queue;
    dist[x] = 0;
    queue.push_back(x);
    while (!queue.empty()) {
        NodeId cur = queue.front();
        queue.pop_front();
        for (auto [n, w] : graph.neighbors(cur)) {
            (void)w;
            if (dist[n] != UINT32_MAX) continue;
            dist[n] = dist[cur] + 1;
            if (n == y) return dist[n];
            queue.push_back(n);
        }
    }
    return std::nullopt;
}

std::optional<size_t> shortest_path_length(const ActionGraph& graph,
                                           std::string_view x, std::string_view y) {
    return shortest_path_length(graph, graph.require_node(x), graph.require_node(y));
}

std::string to_edge_list_tsv(const ActionGraph& graph, const std::vector<std::string>& header) {
    std::vector<std::string> lines;
    lines.reserve(graph.edge_count());
    for (const auto& [pair, w] : graph.edges()) {
        const std::string& a = graph.name(pair.first);
        const std::string& b = graph.name(pair.second);
        const std::string& lo = a < b ? a : b;
        const std::string& hi = a < b ? b : a;
        lines.push_back(lo + "\t" + hi + "\t" + std::to_string(w));
    }
    std::sort(lines.begin(), lines.end());
    std::ostringstream out;
    for (const auto& h : header) out << "# " << h << "\n";
    for (const auto& l : lines) out << l << "\n";
    // isolated nodes need an explicit marker to survive a round trip
    for (const auto& name : graph.sorted_nodes()) {
        NodeId id = *graph.find_node(name);
        if (graph.degree(id) == 0) out << name << "\t\t0\n";
    }
    return out.str();
}

void save_edge_list(const ActionGraph& graph, const std::filesystem::path& path,
                    const std::vector<std::string>& header) {
    write_file(path, to_edge_list_tsv(graph, header));
}

ActionGraph parse_edge_list(std::string_view content, const std::string& source_name) {
    ActionGraph g;
    size_t line_no = 0;
    for (auto line : split(content, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        auto fields = split(line, '\t');
        auto where = source_name + ":" + std::to_string(line_no);
        if (fields.size() != 3)
            fail(ErrorKind::Parse, where + ": expected 3 tab-separated fields");
        std::string a(trim(fields[0]));
        std::string b(trim(fields[1]));
        std::string wtext(trim(fields[2]));
        if (b.empty() && wtext == "0") { // isolated-node marker
            g.add_node(a);
            continue;
        }
        if (a.empty() || b.empty()) fail(ErrorKind::Parse, where + ": empty action name");
        if (a == b) fail(ErrorKind::Validation, where + ": self-loop " + a);
        uint64_t w = 0;
        for (char c : wtext) {
            if (c < '0' || c > '9') fail(ErrorKind::Parse, where + ": bad weight '" + wtext + "'");
            w = w * 10 + static_cast<uint64_t>(c - '0');
        }
        if (w < 1) fail(ErrorKind::Validation, where + ": edge weight must be >= 1");
        if (g.edge_weight(a, b) > 0) fail(ErrorKind::Validation, where + ": duplicate edge " + a + " - " + b);
        g.add_edge(a, b, w);
    }
    g.validate();
    return g;
}

ActionGraph load_edge_list(const std::filesystem::path& path) {
    return parse_edge_list(read_file(path), path.filename().string());
}

} // namespace cooc
