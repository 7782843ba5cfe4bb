#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace cooc {

struct EmbeddingTable;

/// Scale on which the merge threshold is interpreted.
///   Distance:    sqrt(2 * SSE increase) — the dendrogram-height units common
///                scikit-learn/scipy output uses; default, so 1.5 means the
///                same thing it does there.
///   SseIncrease: the raw increase in total within-cluster sum of squared
///                Euclidean distances.
enum class WardCostScale { Distance, SseIncrease };

WardCostScale ward_cost_scale_from_name(std::string_view name);

struct ClusterAssignment {
    std::map<std::string, int> labels;               // action -> cluster id
    std::map<int, std::string> canonical;            // cluster id -> canonical action
    std::map<int, std::vector<std::string>> members; // cluster id -> sorted members
    std::vector<std::string> warnings;

    size_t cluster_count() const { return members.size(); }
};

/// Bottom-up Ward merging until no remaining merge costs less than
/// distance_threshold. Deterministic: equal-cost merges are resolved in
/// favor of the pair with the lowest smallest member index (then the lowest
/// other index); member order is the table's (lexicographic by action).
/// Canonical names are placeholders until filter_and_rename assigns them.
/// Fewer than 2 actions yields one trivial cluster plus a warning.
ClusterAssignment agglomerative_cluster(const EmbeddingTable& points,
                                        double distance_threshold,
                                        WardCostScale scale = WardCostScale::Distance);

struct RenameResult {
    std::map<std::string, std::string> rename; // member -> canonical (identity included)
    std::vector<std::string> dropped;          // members of singleton clusters, sorted
};

/// Drops singleton clusters; in each surviving cluster the canonical action
/// is the member with the highest occurrence count (ties: lexicographically
/// smallest). Throws Error{Input} naming any action missing from counts.
RenameResult filter_and_rename(const ClusterAssignment& assignment,
                               const std::map<std::string, uint64_t>& counts);

/// Sentinel used where a quality metric diverges (zero within-dispersion or
/// coincident centroids with spread).
constexpr double kMetricCap = 1e15;

/// Mean silhouette value over points; singleton-cluster points score 0;
/// (b-a)/max(a,b) with the 0/0 -> 0 convention. Needs >= 2 clusters.
double silhouette(const std::vector<std::vector<double>>& points,
                  const std::vector<int>& labels);

/// (between-dispersion/(k-1)) / (within-dispersion/(n-k)); capped when the
/// within-dispersion is zero. Needs 2 <= k < n.
double calinski_harabasz(const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels);

/// Mean over clusters of the worst (S_i+S_j)/M_ij ratio; lower is better.
/// Needs >= 2 clusters; capped for coincident centroids with spread.
double davies_bouldin(const std::vector<std::vector<double>>& points,
                      const std::vector<int>& labels);

/// Flattens a table + assignment into parallel (points, labels) arrays,
/// ordered by action name.
void assignment_arrays(const EmbeddingTable& table, const ClusterAssignment& assignment,
                       std::vector<std::vector<double>>& points, std::vector<int>& labels);

/// `action \t canonical_action` per line, sorted.
std::string to_rename_tsv(const std::map<std::string, std::string>& rename,
                          const std::vector<std::string>& header = {});
std::map<std::string, std::string> parse_rename_tsv(std::string_view content,
                                                    const std::string& source_name = "rename");
std::map<std::string, std::string> load_rename_tsv(const std::filesystem::path& path);

} // namespace cooc
