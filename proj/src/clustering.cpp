#include "cooc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cooc/embeddings.hpp"
#include "cooc/error.hpp"
#include "cooc/util.hpp"

namespace cooc {

namespace {

double sq_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    return std::sqrt(sq_euclidean(a, b));
}

// Candidate merge key: (squared ward distance, smaller slot, larger slot).
// Slots are smallest-member indices because merges collapse into min(i,j),
// so lexicographic comparison implements the documented tie-break.
struct MergeKey {
    double d2 = std::numeric_limits<double>::infinity();
    size_t lo = 0;
    size_t hi = 0;

    bool operator<(const MergeKey& o) const {
        if (d2 != o.d2) return d2 < o.d2;
        if (lo != o.lo) return lo < o.lo;
        return hi < o.hi;
    }
};

MergeKey make_key(double d2, size_t i, size_t j) {
    return {d2, std::min(i, j), std::max(i, j)};
}

} // namespace

WardCostScale ward_cost_scale_from_name(std::string_view name) {
    if (name == "distance") return WardCostScale::Distance;
    if (name == "sse") return WardCostScale::SseIncrease;
    fail(ErrorKind::Config, "unknown ward cost scale: " + std::string(name) +
                                " (expected 'distance' or 'sse')");
}

ClusterAssignment agglomerative_cluster(const EmbeddingTable& points,
                                        double distance_threshold, WardCostScale scale) {
    if (!(distance_threshold > 0.0))
        fail(ErrorKind::Config, "distance threshold must be > 0");
    const size_t n = points.size();
    if (n == 0) fail(ErrorKind::Input, "cannot cluster an empty table");

    std::vector<std::string> actions;
    std::vector<const std::vector<double>*> vecs;
    actions.reserve(n);
    vecs.reserve(n);
    for (const auto& [action, vec] : points.vectors) {
        actions.push_back(action);
        vecs.push_back(&vec);
    }

    ClusterAssignment out;
    if (n < 2) {
        out.warnings.push_back("fewer than 2 actions; produced one trivial cluster");
        out.labels[actions[0]] = 0;
        out.members[0] = {actions[0]};
        out.canonical[0] = actions[0];
        return out;
    }

    // all merge costs are compared as squared ward distances
    const double limit_d2 = scale == WardCostScale::Distance
                                ? distance_threshold * distance_threshold
                                : 2.0 * distance_threshold;

    // condensed upper-triangle matrix of squared ward distances
    auto tri = [n](size_t i, size_t j) {
        if (i > j) std::swap(i, j);
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    };
    std::vector<double> d2(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) d2[tri(i, j)] = sq_euclidean(*vecs[i], *vecs[j]);

    std::vector<char> alive(n, 1);
    std::vector<double> csize(n, 1.0);
    std::vector<std::vector<size_t>> cmembers(n);
    for (size_t i = 0; i < n; ++i) cmembers[i] = {i};

    std::vector<MergeKey> nn(n);
    auto rescan = [&](size_t i) {
        MergeKey best;
        for (size_t j = 0; j < n; ++j) {
            if (j == i || !alive[j]) continue;
            MergeKey k = make_key(d2[tri(i, j)], i, j);
            if (k < best) best = k;
        }
        nn[i] = best;
    };
    for (size_t i = 0; i < n; ++i) rescan(i);

    size_t alive_count = n;
    while (alive_count > 1) {
        MergeKey best;
        for (size_t i = 0; i < n; ++i)
            if (alive[i] && nn[i] < best) best = nn[i];
        if (!(best.d2 < limit_d2)) break;

        const size_t keep = best.lo;
        const size_t gone = best.hi;
        const double sk = csize[keep], sg = csize[gone], dkg = best.d2;
        alive[gone] = 0;
        --alive_count;
        csize[keep] = sk + sg;
        cmembers[keep].insert(cmembers[keep].end(), cmembers[gone].begin(), cmembers[gone].end());
        cmembers[gone].clear();

        // Lance-Williams ward update on squared distances
        for (size_t l = 0; l < n; ++l) {
            if (!alive[l] || l == keep) continue;
            const double sl = csize[l];
            const double dk = d2[tri(keep, l)];
            const double dg = d2[tri(gone, l)];
            d2[tri(keep, l)] = ((sk + sl) * dk + (sg + sl) * dg - sl * dkg) / (sk + sg + sl);
        }

        rescan(keep);
        for (size_t l = 0; l < n; ++l) {
            if (!alive[l] || l == keep) continue;
            if (nn[l].lo == keep || nn[l].hi == keep || nn[l].lo == gone || nn[l].hi == gone) {
                rescan(l);
            } else {
                MergeKey k = make_key(d2[tri(keep, l)], keep, l);
                if (k < nn[l]) nn[l] = k;
            }
        }
    }

    int next_id = 0;
    for (size_t slot = 0; slot < n; ++slot) {
        if (!alive[slot]) continue;
        int id = next_id++;
        std::vector<std::string> names;
        names.reserve(cmembers[slot].size());
        for (size_t m : cmembers[slot]) names.push_back(actions[m]);
        std::sort(names.begin(), names.end());
        for (const auto& name : names) out.labels[name] = id;
        out.canonical[id] = names.front();
        out.members[id] = std::move(names);
    }
    return out;
}

RenameResult filter_and_rename(const ClusterAssignment& assignment,
                               const std::map<std::string, uint64_t>& counts) {
    RenameResult result;
    for (const auto& [id, members] : assignment.members) {
        (void)id;
        if (members.size() < 2) {
            result.dropped.insert(result.dropped.end(), members.begin(), members.end());
            continue;
        }
        std::string best;
        uint64_t best_count = 0;
        for (const auto& member : members) {
            auto it = counts.find(member);
            if (it == counts.end())
                fail(ErrorKind::Input, "no occurrence count for action: " + member);
            if (best.empty() || it->second > best_count ||
                (it->second == best_count && member < best)) {
                best = member;
                best_count = it->second;
            }
        }
        for (const auto& member : members) result.rename[member] = best;
    }
    std::sort(result.dropped.begin(), result.dropped.end());
    return result;
}

double silhouette(const std::vector<std::vector<double>>& points,
                  const std::vector<int>& labels) {
    const size_t n = points.size();
    if (n != labels.size()) fail(ErrorKind::Input, "points/labels length mismatch");
    std::map<int, std::vector<size_t>> clusters;
    for (size_t i = 0; i < n; ++i) clusters[labels[i]].push_back(i);
    if (clusters.size() < 2)
        fail(ErrorKind::UndefinedMetric, "silhouette needs at least 2 clusters");

    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const auto& own = clusters[labels[i]];
        if (own.size() < 2) continue; // singleton scores 0
        double a = 0.0;
        for (size_t j : own)
            if (j != i) a += euclidean(points[i], points[j]);
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, members] : clusters) {
            if (label == labels[i]) continue;
            double mean = 0.0;
            for (size_t j : members) mean += euclidean(points[i], points[j]);
            mean /= static_cast<double>(members.size());
            b = std::min(b, mean);
        }
        double denom = std::max(a, b);
        total += denom == 0.0 ? 0.0 : (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

namespace {

std::vector<double> centroid_of(const std::vector<std::vector<double>>& points,
                                const std::vector<size_t>& members) {
    std::vector<double> c(points[members.front()].size(), 0.0);
    for (size_t i : members)
        for (size_t d = 0; d < c.size(); ++d) c[d] += points[i][d];
    for (double& v : c) v /= static_cast<double>(members.size());
    return c;
}

} // namespace

double calinski_harabasz(const std::vector<std::vector<double>>& points,
                         const std::vector<int>& labels) {
    const size_t n = points.size();
    if (n != labels.size()) fail(ErrorKind::Input, "points/labels length mismatch");
    std::map<int, std::vector<size_t>> clusters;
    for (size_t i = 0; i < n; ++i) clusters[labels[i]].push_back(i);
    const size_t k = clusters.size();
    if (k < 2) fail(ErrorKind::UndefinedMetric, "calinski-harabasz needs at least 2 clusters");
    if (k >= n) fail(ErrorKind::UndefinedMetric, "calinski-harabasz needs n > k");

    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<double> global = centroid_of(points, all);

    double between = 0.0, within = 0.0;
    for (const auto& [label, members] : clusters) {
        (void)label;
        std::vector<double> c = centroid_of(points, members);
        between += static_cast<double>(members.size()) * sq_euclidean(c, global);
        for (size_t i : members) within += sq_euclidean(points[i], c);
    }
    if (within == 0.0) return kMetricCap;
    return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
}

double davies_bouldin(const std::vector<std::vector<double>>& points,
                      const std::vector<int>& labels) {
    const size_t n = points.size();
    if (n != labels.size()) fail(ErrorKind::Input, "points/labels length mismatch");
    std::map<int, std::vector<size_t>> clusters;
    for (size_t i = 0; i < n; ++i) clusters[labels[i]].push_back(i);
    const size_t k = clusters.size();
    if (k < 2) fail(ErrorKind::UndefinedMetric, "davies-bouldin needs at least 2 clusters");

    std::vector<std::vector<double>> centroids;
    std::vector<double> scatter;
    for (const auto& [label, members] : clusters) {
        (void)label;
        std::vector<double> c = centroid_of(points, members);
        double s = 0.0;
        for (size_t i : members) s += euclidean(points[i], c);
        scatter.push_back(s / static_cast<double>(members.size()));
        centroids.push_back(std::move(c));
    }

    double total = 0.0;
    for (size_t i = 0; i < k; ++i) {
        double worst = 0.0;
        for (size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            double m = euclidean(centroids[i], centroids[j]);
            double s = scatter[i] + scatter[j];
            double r;
            if (m == 0.0)
                r = s == 0.0 ? 0.0 : kMetricCap;
            else
                r = s / m;
            worst = std::max(worst, r);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

void assignment_arrays(const EmbeddingTable& table, const ClusterAssignment& assignment,
                       std::vector<std::vector<double>>& points, std::vector<int>& labels) {
    points.clear();
    labels.clear();
    for (const auto& [action, label] : assignment.labels) {
        auto it = table.vectors.find(action);
        if (it == table.vectors.end())
            fail(ErrorKind::Input, "no embedding for clustered action: " + action);
        points.push_back(it->second);
        labels.push_back(label);
    }
}

std::string to_rename_tsv(const std::map<std::string, std::string>& rename,
                          const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& h : header) out << "# " << h << "\n";
    for (const auto& [from, to] : rename) out << from << "\t" << to << "\n";
    return out.str();
}

std::map<std::string, std::string> parse_rename_tsv(std::string_view content,
                                                    const std::string& source_name) {
    std::map<std::string, std::string> out;
    size_t line_no = 0;
    for (auto line : split(content, '\n')) {
        ++line_no;
        if (is_skippable_line(line)) continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2)
            fail(ErrorKind::Parse,
                 source_name + ":" + std::to_string(line_no) + ": expected 2 fields");
        out[std::string(trim(fields[0]))] = std::string(trim(fields[1]));
    }
    return out;
}

std::map<std::string, std::string> load_rename_tsv(const std::filesystem::path& path) {
    return parse_rename_tsv(read_file(path), path.filename().string());
}

} // namespace cooc
