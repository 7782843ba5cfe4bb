#pragma once

#include <cstdint>
#include <string>

#include "cooc/embeddings.hpp"
#include "cooc/graph.hpp"

namespace cooc {

/// G(n,m): n nodes, m distinct unit-weight edges drawn uniformly.
/// Node names are zero-padded ("n000", ...); every node exists even when
/// isolated. Requires m <= n(n-1)/2.
ActionGraph gnm_random_graph(size_t n, size_t m, uint64_t seed);

/// G(n,p) with integer weights drawn uniformly from [1, max_weight].
ActionGraph gnp_random_graph(size_t n, double p, uint64_t seed, uint64_t max_weight = 1);

/// Two-block planted partition: `communities` blocks of `size` nodes, edge
/// probability in_p inside a block and out_p across blocks, unit weights.
/// Node names carry the community ("c0_n007").
ActionGraph planted_partition_graph(size_t communities, size_t size, double in_p, double out_p,
                                    uint64_t seed);

/// One embedding per planted-partition node: a one-hot community indicator
/// (dimension = #communities) plus N(0, sigma^2) noise on every coordinate.
EmbeddingTable noisy_community_indicators(size_t communities, size_t size, double sigma,
                                          uint64_t seed);

} // namespace cooc
