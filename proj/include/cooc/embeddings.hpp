#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cooc {

class ActionGraph;

enum class Modality { Textual, Visual, Multimodal, Graph };

std::string_view modality_name(Modality m);
Modality modality_from_name(std::string_view name);

/// Fixed-dimension real vectors keyed by action label.
struct EmbeddingTable {
    size_t dim = 0;
    std::map<std::string, std::vector<double>> vectors;
    Modality modality = Modality::Textual;

    bool contains(std::string_view action) const {
        return vectors.count(std::string(action)) > 0;
    }
    const std::vector<double>& at(std::string_view action) const;
    size_t size() const { return vectors.size(); }

    /// Inserts a vector, enforcing the uniform dimension.
    void insert(std::string_view action, std::vector<double> vec);
};

/// TSV format: `action \t v1,v2,...,vd`. Ragged rows, duplicate actions,
/// non-finite values and empty tables are errors (with line numbers).
EmbeddingTable parse_embedding_tsv(std::string_view content,
                                   const std::string& source_name = "embeddings",
                                   Modality modality = Modality::Textual);
EmbeddingTable load_table(const std::filesystem::path& path,
                          Modality modality = Modality::Textual);
std::string to_embedding_tsv(const EmbeddingTable& table,
                             const std::vector<std::string>& header = {});
void save_table(const EmbeddingTable& table, const std::filesystem::path& path,
                const std::vector<std::string>& header = {});

/// Elementwise mean over the intersection of actions. Dimension mismatch or
/// an empty intersection is an error.
EmbeddingTable multimodal_average(const EmbeddingTable& a, const EmbeddingTable& b);

struct GraphAverageResult {
    EmbeddingTable table; // modality = Graph
    std::vector<std::string> warnings;
};

/// Edge-weight-weighted mean of neighbor embeddings per node; isolated nodes
/// keep their base vector. Graph nodes missing from the base table are
/// skipped and reported; missing neighbors simply drop out of the mean.
GraphAverageResult graph_average_embedding(const ActionGraph& graph, const EmbeddingTable& base);

/// u.v / (|u||v|); 0 when either norm is 0; dimensions must match.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

/// L2-normalizes every vector (zero vectors stay zero).
EmbeddingTable l2_normalize(const EmbeddingTable& table);

} // namespace cooc
