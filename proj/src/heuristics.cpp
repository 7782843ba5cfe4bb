#include "cooc/heuristics.hpp"

#include <cmath>
#include <sstream>

#include "cooc/error.hpp"
#include "cooc/util.hpp"

namespace cooc {

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::CN: return "cn";
        case Measure::Salton: return "salton";
        case Measure::HPI: return "hpi";
        case Measure::HDI: return "hdi";
        case Measure::AA: return "aa";
        case Measure::RA: return "ra";
        case Measure::SP: return "sp";
        case Measure::WCN: return "wcn";
        case Measure::WAA: return "waa";
        case Measure::WRA: return "wra";
    }
    return "cn";
}

Measure measure_from_name(std::string_view name) {
    for (Measure m : kAllMeasures)
        if (measure_name(m) == name) return m;
    fail(ErrorKind::Config, "unknown measure: " + std::string(name));
}

namespace {

void check_pair(const ActionGraph& g, NodeId x, NodeId y) {
    if (x >= g.node_count() || y >= g.node_count())
        fail(ErrorKind::Input, "node id out of range");
    if (x == y) fail(ErrorKind::Input, "measures are undefined for x == y");
}

// Walks the two sorted adjacency lists in lockstep, invoking fn per common
// neighbor z with the incident weights w(x,z) and w(z,y).
template <typename Fn>
void for_common_neighbors(const ActionGraph& g, NodeId x, NodeId y, Fn&& fn) {
    auto ax = g.neighbors(x);
    auto ay = g.neighbors(y);
    size_t i = 0, j = 0;
    while (i < ax.size() && j < ay.size()) {
        if (ax[i].first < ay[j].first) {
            ++i;
        } else if (ax[i].first > ay[j].first) {
            ++j;
        } else {
            fn(ax[i].first, ax[i].second, ay[j].second);
            ++i;
            ++j;
        }
    }
}

} // namespace

double common_neighbors(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    size_t count = 0;
    for_common_neighbors(g, x, y, [&](NodeId, uint64_t, uint64_t) { ++count; });
    return static_cast<double>(count);
}

double salton(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double kx = static_cast<double>(g.degree(x));
    double ky = static_cast<double>(g.degree(y));
    if (kx == 0.0 || ky == 0.0) return 0.0;
    return common_neighbors(g, x, y) / std::sqrt(kx * ky);
}

double hub_promoted(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double kmin = static_cast<double>(std::min(g.degree(x), g.degree(y)));
    if (kmin == 0.0) return 0.0;
    return common_neighbors(g, x, y) / kmin;
}

double hub_depressed(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double kmax = static_cast<double>(std::max(g.degree(x), g.degree(y)));
    if (kmax == 0.0) return 0.0;
    return common_neighbors(g, x, y) / kmax;
}

double adamic_adar(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double sum = 0.0;
    // common neighbor z has k_z >= 2, so ln(k_z) > 0
    for_common_neighbors(g, x, y, [&](NodeId z, uint64_t, uint64_t) {
        sum += 1.0 / std::log(static_cast<double>(g.degree(z)));
    });
    return sum;
}

double resource_allocation(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double sum = 0.0;
    for_common_neighbors(g, x, y, [&](NodeId z, uint64_t, uint64_t) {
        sum += 1.0 / static_cast<double>(g.degree(z));
    });
    return sum;
}

double shortest_path_score(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    auto hops = shortest_path_length(g, x, y);
    if (!hops) return 0.0;
    return 1.0 / static_cast<double>(*hops);
}

double weighted_common_neighbors(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double sum = 0.0;
    for_common_neighbors(g, x, y, [&](NodeId, uint64_t wxz, uint64_t wzy) {
        sum += 0.5 * (static_cast<double>(wxz) + static_cast<double>(wzy));
    });
    return sum;
}

double weighted_adamic_adar(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double sum = 0.0;
    for_common_neighbors(g, x, y, [&](NodeId z, uint64_t wxz, uint64_t wzy) {
        double denom = 2.0 * std::log(1.0 + static_cast<double>(g.strength(z)));
        sum += (static_cast<double>(wxz) + static_cast<double>(wzy)) / denom;
    });
    return sum;
}

double weighted_resource_allocation(const ActionGraph& g, NodeId x, NodeId y) {
    check_pair(g, x, y);
    double sum = 0.0;
    for_common_neighbors(g, x, y, [&](NodeId z, uint64_t wxz, uint64_t wzy) {
        sum += (static_cast<double>(wxz) + static_cast<double>(wzy)) /
               (2.0 * static_cast<double>(g.strength(z)));
    });
    return sum;
}

double heuristic_score(const ActionGraph& g, NodeId x, NodeId y, Measure m) {
    switch (m) {
        case Measure::CN: return common_neighbors(g, x, y);
        case Measure::Salton: return salton(g, x, y);
        case Measure::HPI: return hub_promoted(g, x, y);
        case Measure::HDI: return hub_depressed(g, x, y);
        case Measure::AA: return adamic_adar(g, x, y);
        case Measure::RA: return resource_allocation(g, x, y);
        case Measure::SP: return shortest_path_score(g, x, y);
        case Measure::WCN: return weighted_common_neighbors(g, x, y);
        case Measure::WAA: return weighted_adamic_adar(g, x, y);
        case Measure::WRA: return weighted_resource_allocation(g, x, y);
    }
    fail(ErrorKind::Input, "unknown measure");
}

double heuristic_score(const ActionGraph& g, std::string_view x, std::string_view y, Measure m) {
    return heuristic_score(g, g.require_node(x), g.require_node(y), m);
}

std::array<double, 10> all_heuristic_scores(const ActionGraph& g, NodeId x, NodeId y) {
    std::array<double, 10> out;
    for (size_t i = 0; i < kAllMeasures.size(); ++i)
        out[i] = heuristic_score(g, x, y, kAllMeasures[i]);
    return out;
}

std::vector<ScoredPair> score_pairs(const ActionGraph& g,
                                    const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const std::vector<Measure>& measures) {
    std::vector<ScoredPair> out;
    out.reserve(pairs.size() * measures.size());
    for (const auto& [a, b] : pairs) {
        NodeId x = g.require_node(a);
        NodeId y = g.require_node(b);
        for (Measure m : measures)
            out.push_back({a, b, m, heuristic_score(g, x, y, m)});
    }
    return out;
}

std::string to_scores_tsv(const std::vector<ScoredPair>& scores,
                          const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& h : header) out << "# " << h << "\n";
    for (const auto& s : scores)
        out << s.action_a << "\t" << s.action_b << "\t" << measure_name(s.measure) << "\t"
            << format_double(s.score) << "\n";
    return out.str();
}

} // namespace cooc
