#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cooc/graph.hpp"

namespace cooc {

/// Topology similarity measures. Declared order is the feature order used
/// everywhere downstream.
enum class Measure { CN, Salton, HPI, HDI, AA, RA, SP, WCN, WAA, WRA };

constexpr std::array<Measure, 10> kAllMeasures = {
    Measure::CN,  Measure::Salton, Measure::HPI, Measure::HDI, Measure::AA,
    Measure::RA,  Measure::SP,     Measure::WCN, Measure::WAA, Measure::WRA,
};

std::string_view measure_name(Measure m);
Measure measure_from_name(std::string_view name);

// Every measure requires x, y in the graph and x != y (Error{Input}
// otherwise), and is symmetric in node order. Degenerate cases score 0.

/// |Γ(x) ∩ Γ(y)|
double common_neighbors(const ActionGraph& g, NodeId x, NodeId y);
/// CN / sqrt(k_x k_y)
double salton(const ActionGraph& g, NodeId x, NodeId y);
/// CN / min(k_x, k_y)
double hub_promoted(const ActionGraph& g, NodeId x, NodeId y);
/// CN / max(k_x, k_y)
double hub_depressed(const ActionGraph& g, NodeId x, NodeId y);
/// Σ_z 1/ln(k_z) over common neighbors z
double adamic_adar(const ActionGraph& g, NodeId x, NodeId y);
/// Σ_z 1/k_z over common neighbors z
double resource_allocation(const ActionGraph& g, NodeId x, NodeId y);
/// 1 / (shortest path hops); 0 when disconnected
double shortest_path_score(const ActionGraph& g, NodeId x, NodeId y);
/// Σ_z (w(x,z)+w(z,y))/2
double weighted_common_neighbors(const ActionGraph& g, NodeId x, NodeId y);
/// Σ_z (w(x,z)+w(z,y)) / (2 ln(1+strength(z)))
double weighted_adamic_adar(const ActionGraph& g, NodeId x, NodeId y);
/// Σ_z (w(x,z)+w(z,y)) / (2 strength(z))
double weighted_resource_allocation(const ActionGraph& g, NodeId x, NodeId y);

double heuristic_score(const ActionGraph& g, NodeId x, NodeId y, Measure m);
double heuristic_score(const ActionGraph& g, std::string_view x, std::string_view y, Measure m);

/// All 10 measures in declared order.
std::array<double, 10> all_heuristic_scores(const ActionGraph& g, NodeId x, NodeId y);

struct ScoredPair {
    std::string action_a;
    std::string action_b;
    Measure measure;
    double score;
};

/// Scores every candidate pair under every requested measure.
std::vector<ScoredPair> score_pairs(const ActionGraph& g,
                                    const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const std::vector<Measure>& measures);

/// `action_a \t action_b \t measure \t score` per row.
std::string to_scores_tsv(const std::vector<ScoredPair>& scores,
                          const std::vector<std::string>& header = {});

} // namespace cooc
