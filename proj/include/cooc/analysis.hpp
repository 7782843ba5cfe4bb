#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cooc/embeddings.hpp"
#include "cooc/split.hpp"

namespace cooc {

/// Symmetric positive-PMI association matrix over frequency-filtered actions.
struct PpmiMatrix {
    std::vector<std::string> actions;         // sorted
    std::vector<std::vector<double>> values;  // symmetric, zero diagonal

    double at(const std::string& a, const std::string& b) const;
};

/// max(ln(P(ai,aj) / (P(ai) P(aj))), 0) with P(ai,aj) = #(ai,aj)/#pairs and
/// P(ak) = #ak/#actions, totals taken over all provided counts. Actions with
/// fewer than min_count occurrences are excluded from the matrix; pairs
/// that never co-occur score 0.
PpmiMatrix ppmi(const std::map<LabeledPair, uint64_t>& pair_counts,
                const std::map<std::string, uint64_t>& action_counts, uint64_t min_count = 10);

/// CSV with a header row and leading name column.
std::string to_ppmi_csv(const PpmiMatrix& matrix, const std::string& config_hash = "");

/// k nearest actions to the query by descending cosine similarity (ties:
/// lexicographic), query excluded. Requires query in the table and
/// k < table size.
std::vector<std::string> knn(const std::string& query, size_t k, const EmbeddingTable& table);

/// Share of retrieved-action word tokens (with multiplicity) that also occur
/// as query tokens. Retrieved must be non-empty.
double overlap_score(const std::string& query, const std::vector<std::string>& retrieved);

/// |gold ∩ predicted| / |gold|. Gold must be non-empty.
double location_recall(const std::set<std::string>& gold_neighbors,
                       const std::vector<std::string>& predicted);

/// `query \t neighbor` per line.
std::map<std::string, std::set<std::string>> parse_gold_neighbors(
    std::string_view content, const std::string& source_name = "gold");
std::map<std::string, std::set<std::string>> load_gold_neighbors(
    const std::filesystem::path& path);

struct RetrievalRow {
    std::string query;
    size_t k = 0;
    std::vector<std::string> retrieved;
    double overlap = 0.0;
    std::optional<double> recall; // present when gold neighbors were supplied
};

/// Runs kNN for each query; computes overlap and, where gold neighbors
/// exist, location recall.
std::vector<RetrievalRow> retrieval_report(
    const std::vector<std::string>& queries, size_t k, const EmbeddingTable& table,
    const std::map<std::string, std::set<std::string>>& gold = {});

/// JSONL, one {query, k, retrieved, overlap, recall?} object per row.
std::string to_retrieval_jsonl(const std::vector<RetrievalRow>& rows,
                               const std::string& config_hash = "");

} // namespace cooc
