#include "cooc/embeddings.hpp"

#include <cmath>
#include <sstream>

#include "cooc/error.hpp"
#include "cooc/graph.hpp"
#include "cooc/util.hpp"

namespace cooc {

std::string_view modality_name(Modality m) {
    switch (m) {
        case Modality::Textual: return "textual";
        case Modality::Visual: return "visual";
        case Modality::Multimodal: return "multimodal";
        case Modality::Graph: return "graph";
    }
    return "textual";
}

Modality modality_from_name(std::string_view name) {
    if (name == "textual") return Modality::Textual;
    if (name == "visual") return Modality::Visual;
    if (name == "multimodal") return Modality::Multimodal;
    if (name == "graph") return Modality::Graph;
    fail(ErrorKind::Config, "unknown modality: " + std::string(name));
}

const std::vector<double>& EmbeddingTable::at(std::string_view action) const {
    auto it = vectors.find(std::string(action));
    if (it == vectors.end())
        fail(ErrorKind::Input, "no embedding for action: " + std::string(action));
    return it->second;
}

void EmbeddingTable::insert(std::string_view action, std::vector<double> vec) {
    if (vec.empty()) fail(ErrorKind::Validation, "zero-dimension vector for " + std::string(action));
    if (vectors.empty()) dim = vec.size();
    if (vec.size() != dim)
        fail(ErrorKind::Validation, "dimension mismatch for " + std::string(action) + ": " +
                                        std::to_string(vec.size()) + " vs " + std::to_string(dim));
    for (double v : vec)
        if (!std::isfinite(v))
            fail(ErrorKind::Validation, "non-finite value for " + std::string(action));
    auto [it, inserted] = vectors.emplace(std::string(action), std::move(vec));
    (void)it;
    if (!inserted) fail(ErrorKind::Validation, "duplicate action: " + std::string(action));
}

EmbeddingTable parse_embedding_tsv(std::string_view content, const std::string& source_name,
                                   Modality modality) {
    EmbeddingTable table;
    table.modality = modality;
    size_t line_no = 0;
    for (auto line : split(content, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        std::string where = source_name + ":" + std::to_string(line_no);
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            fail(ErrorKind::Parse, where + ": expected `action \\t v1,v2,...`");
        std::string action(trim(fields[0]));
        if (action.empty()) fail(ErrorKind::Parse, where + ": empty action");
        std::vector<double> vec;
        for (auto part : split(fields[1], ',')) {
            double v;
            if (!parse_double(part, v))
                fail(ErrorKind::Parse, where + ": bad value '" + std::string(part) + "'");
            vec.push_back(v);
        }
        if (!table.vectors.empty() && vec.size() != table.dim)
            fail(ErrorKind::Parse, where + ": ragged row (dim " + std::to_string(vec.size()) +
                                       " vs " + std::to_string(table.dim) + ")");
        try {
            table.insert(action, std::move(vec));
        } catch (const Error& e) {
            fail(e.kind(), where + ": " + e.what());
        }
    }
    if (table.vectors.empty())
        fail(ErrorKind::Validation, source_name + ": empty embedding table");
    return table;
}

EmbeddingTable load_table(const std::filesystem::path& path, Modality modality) {
    return parse_embedding_tsv(read_file(path), path.filename().string(), modality);
}

std::string to_embedding_tsv(const EmbeddingTable& table, const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& h : header) out << "# " << h << "\n";
    for (const auto& [action, vec] : table.vectors) {
        out << action << "\t";
        for (size_t i = 0; i < vec.size(); ++i) {
            if (i) out << ",";
            out << format_double(vec[i]);
        }
        out << "\n";
    }
    return out.str();
}

void save_table(const EmbeddingTable& table, const std::filesystem::path& path,
                const std::vector<std::string>& header) {
    write_file(path, to_embedding_tsv(table, header));
}

EmbeddingTable multimodal_average(const EmbeddingTable& a, const EmbeddingTable& b) {
    if (a.dim != b.dim)
        fail(ErrorKind::Input, "multimodal average needs equal dims (" + std::to_string(a.dim) +
                                   " vs " + std::to_string(b.dim) + ")");
    EmbeddingTable out;
    out.modality = Modality::Multimodal;
    for (const auto& [action, va] : a.vectors) {
        auto it = b.vectors.find(action);
        if (it == b.vectors.end()) continue;
        std::vector<double> mean(a.dim);
        for (size_t i = 0; i < a.dim; ++i) mean[i] = 0.5 * (va[i] + it->second[i]);
        out.insert(action, std::move(mean));
    }
    if (out.vectors.empty())
        fail(ErrorKind::Input, "multimodal average: action sets do not intersect");
    return out;
}

GraphAverageResult graph_average_embedding(const ActionGraph& graph, const EmbeddingTable& base) {
    GraphAverageResult result;
    result.table.modality = Modality::Graph;
    for (const auto& name : graph.sorted_nodes()) {
        auto it = base.vectors.find(name);
        if (it == base.vectors.end()) {
            result.warnings.push_back("no base embedding for node '" + name + "'; skipped");
            continue;
        }
        NodeId id = *graph.find_node(name);
        std::vector<double> acc(base.dim, 0.0);
        double total_w = 0.0;
        for (auto [nbr, w] : graph.neighbors(id)) {
            auto nit = base.vectors.find(graph.name(nbr));
            if (nit == base.vectors.end()) continue;
            for (size_t i = 0; i < base.dim; ++i) acc[i] += static_cast<double>(w) * nit->second[i];
            total_w += static_cast<double>(w);
        }
        if (total_w == 0.0) {
            result.table.insert(name, it->second); // isolated: keep base vector
        } else {
            for (double& v : acc) v /= total_w;
            result.table.insert(name, std::move(acc));
        }
    }
    return result;
}

double cosine(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        fail(ErrorKind::Input, "cosine: dimension mismatch (" + std::to_string(u.size()) +
                                   " vs " + std::to_string(v.size()) + ")");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

EmbeddingTable l2_normalize(const EmbeddingTable& table) {
    EmbeddingTable out;
    out.modality = table.modality;
    for (const auto& [action, vec] : table.vectors) {
        double norm = 0.0;
        for (double v : vec) norm += v * v;
        norm = std::sqrt(norm);
        std::vector<double> scaled = vec;
        if (norm > 0.0)
            for (double& v : scaled) v /= norm;
        out.insert(action, std::move(scaled));
    }
    return out;
}

} // namespace cooc
