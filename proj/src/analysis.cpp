#include "cooc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cooc/error.hpp"
#include "cooc/util.hpp"

namespace cooc {

double PpmiMatrix::at(const std::string& a, const std::string& b) const {
    auto find = [&](const std::string& name) {
        auto it = std::lower_bound(actions.begin(), actions.end(), name);
        if (it == actions.end() || *it != name)
            fail(ErrorKind::Input, "action not in matrix: " + name);
        return static_cast<size_t>(it - actions.begin());
    };
    return values[find(a)][find(b)];
}

PpmiMatrix ppmi(const std::map<LabeledPair, uint64_t>& pair_counts,
                const std::map<std::string, uint64_t>& action_counts, uint64_t min_count) {
    if (min_count < 1) fail(ErrorKind::Config, "ppmi min_count must be >= 1");

    uint64_t total_pairs = 0;
    for (const auto& [pair, c] : pair_counts) {
        (void)pair;
        total_pairs += c;
    }
    uint64_t total_actions = 0;
    for (const auto& [action, c] : action_counts) {
        (void)action;
        total_actions += c;
    }
    if (total_pairs == 0) fail(ErrorKind::Input, "ppmi: no pair counts");

    PpmiMatrix m;
    for (const auto& [action, c] : action_counts)
        if (c >= min_count) m.actions.push_back(action);
    if (m.actions.empty())
        fail(ErrorKind::Input, "ppmi: no action reaches min_count=" + std::to_string(min_count));

    const size_t k = m.actions.size();
    m.values.assign(k, std::vector<double>(k, 0.0));
    for (size_t i = 0; i < k; ++i) {
        double pi = static_cast<double>(action_counts.at(m.actions[i])) /
                    static_cast<double>(total_actions);
        for (size_t j = i + 1; j < k; ++j) {
            LabeledPair key = m.actions[i] < m.actions[j]
                                  ? LabeledPair{m.actions[i], m.actions[j]}
                                  : LabeledPair{m.actions[j], m.actions[i]};
            auto it = pair_counts.find(key);
            if (it == pair_counts.end() || it->second == 0) continue;
            double pj = static_cast<double>(action_counts.at(m.actions[j])) /
                        static_cast<double>(total_actions);
            double pij = static_cast<double>(it->second) / static_cast<double>(total_pairs);
            double v = std::max(std::log(pij / (pi * pj)), 0.0);
            m.values[i][j] = v;
            m.values[j][i] = v;
        }
    }
    return m;
}

std::string to_ppmi_csv(const PpmiMatrix& matrix, const std::string& config_hash) {
    std::ostringstream out;
    if (!config_hash.empty()) out << "# config=" << config_hash << "\n";
    out << "action";
    for (const auto& a : matrix.actions) out << "," << a;
    out << "\n";
    for (size_t i = 0; i < matrix.actions.size(); ++i) {
        out << matrix.actions[i];
        for (size_t j = 0; j < matrix.actions.size(); ++j)
            out << "," << format_double(matrix.values[i][j]);
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> knn(const std::string& query, size_t k, const EmbeddingTable& table) {
    auto qit = table.vectors.find(query);
    if (qit == table.vectors.end())
        fail(ErrorKind::Input, "knn: unknown query action '" + query + "'");
    if (k >= table.size())
        fail(ErrorKind::Input, "knn: k=" + std::to_string(k) + " must be < table size " +
                                   std::to_string(table.size()));

    std::vector<std::pair<double, const std::string*>> ranked;
    ranked.reserve(table.size() - 1);
    for (const auto& [action, vec] : table.vectors) {
        if (action == query) continue;
        ranked.emplace_back(cosine(qit->second, vec), &action);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first; // descending similarity
        return *a.second < *b.second;                     // ties: lexicographic
    });
    std::vector<std::string> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) out.push_back(*ranked[i].second);
    return out;
}

double overlap_score(const std::string& query, const std::vector<std::string>& retrieved) {
    if (retrieved.empty()) fail(ErrorKind::Input, "overlap_score: empty retrieved list");
    std::set<std::string> query_tokens;
    for (auto t : tokenize(query)) query_tokens.insert(std::string(t));

    size_t total = 0, overlapping = 0;
    for (const auto& action : retrieved) {
        for (auto t : tokenize(action)) {
            ++total;
            if (query_tokens.count(std::string(t))) ++overlapping;
        }
    }
    if (total == 0) fail(ErrorKind::Input, "overlap_score: retrieved actions have no tokens");
    return static_cast<double>(overlapping) / static_cast<double>(total);
}

double location_recall(const std::set<std::string>& gold_neighbors,
                       const std::vector<std::string>& predicted) {
    if (gold_neighbors.empty()) fail(ErrorKind::Input, "location_recall: empty gold set");
    std::set<std::string> pred(predicted.begin(), predicted.end());
    size_t hits = 0;
    for (const auto& g : gold_neighbors)
        if (pred.count(g)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(gold_neighbors.size());
}

std::map<std::string, std::set<std::string>> parse_gold_neighbors(std::string_view content,
                                                                  const std::string& source_name) {
    std::map<std::string, std::set<std::string>> out;
    size_t line_no = 0;
    for (auto line : split(content, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            fail(ErrorKind::Parse,
                 source_name + ":" + std::to_string(line_no) + ": expected `query \\t neighbor`");
        out[std::string(trim(fields[0]))].insert(std::string(trim(fields[1])));
    }
    return out;
}

std::map<std::string, std::set<std::string>> load_gold_neighbors(const std::filesystem::path& path) {
    return parse_gold_neighbors(read_file(path), path.filename().string());
}

std::vector<RetrievalRow> retrieval_report(const std::vector<std::string>& queries, size_t k,
                                           const EmbeddingTable& table,
                                           const std::map<std::string, std::set<std::string>>& gold) {
    std::vector<RetrievalRow> rows;
    rows.reserve(queries.size());
    for (const auto& q : queries) {
        RetrievalRow row;
        row.query = q;
        row.k = k;
        row.retrieved = knn(q, k, table);
        row.overlap = overlap_score(q, row.retrieved);
        auto git = gold.find(q);
        if (git != gold.end() && !git->second.empty())
            row.recall = location_recall(git->second, row.retrieved);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string to_retrieval_jsonl(const std::vector<RetrievalRow>& rows,
                               const std::string& config_hash) {
    std::ostringstream out;
    if (!config_hash.empty()) out << "# config=" << config_hash << "\n";
    for (const auto& row : rows) {
        nlohmann::json j;
        j["query"] = row.query;
        j["k"] = row.k;
        j["retrieved"] = row.retrieved;
        j["overlap"] = row.overlap;
        if (row.recall) j["recall"] = *row.recall;
        out << j.dump() << "\n";
    }
    return out.str();
}

} // namespace cooc
