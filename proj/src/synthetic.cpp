#include "cooc/synthetic.hpp"

#include <set>

#include "cooc/error.hpp"
#include "cooc/rng.hpp"

namespace cooc {

namespace {

std::string padded(std::string_view prefix, size_t i, size_t max_value) {
    size_t digits = 1;
    for (size_t v = max_value; v >= 10; v /= 10) ++digits;
    std::string num = std::to_string(i);
    std::string out(prefix);
    out.append(digits - num.size(), '0');
    out += num;
    return out;
}

} // namespace

ActionGraph gnm_random_graph(size_t n, size_t m, uint64_t seed) {
    if (n < 2) fail(ErrorKind::Config, "gnm graph needs n >= 2");
    const size_t max_edges = n * (n - 1) / 2;
    if (m > max_edges)
        fail(ErrorKind::Config, "gnm graph: m=" + std::to_string(m) + " exceeds " +
                                    std::to_string(max_edges));
    ActionGraph g;
    for (size_t i = 0; i < n; ++i) g.add_node(padded("n", i, n - 1));

    SeededRng rng(seed);
    std::set<std::pair<size_t, size_t>> chosen;
    while (chosen.size() < m) {
        size_t a = rng.uniform_index(n);
        size_t b = rng.uniform_index(n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (chosen.insert({a, b}).second)
            g.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b), 1);
    }
    return g;
}

ActionGraph gnp_random_graph(size_t n, double p, uint64_t seed, uint64_t max_weight) {
    if (n < 1) fail(ErrorKind::Config, "gnp graph needs n >= 1");
    if (!(p >= 0.0) || !(p <= 1.0)) fail(ErrorKind::Config, "gnp edge probability out of [0,1]");
    if (max_weight < 1) fail(ErrorKind::Config, "max_weight must be >= 1");
    ActionGraph g;
    for (size_t i = 0; i < n; ++i) g.add_node(padded("n", i, n - 1));
    SeededRng rng(seed);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (rng.uniform_double() < p) {
                uint64_t w = max_weight == 1 ? 1 : 1 + rng.uniform_u64(max_weight);
                g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), w);
            }
    return g;
}

ActionGraph planted_partition_graph(size_t communities, size_t size, double in_p, double out_p,
                                    uint64_t seed) {
    if (communities < 1 || size < 1) fail(ErrorKind::Config, "planted partition needs k,size >= 1");
    const size_t n = communities * size;
    ActionGraph g;
    for (size_t c = 0; c < communities; ++c)
        for (size_t i = 0; i < size; ++i)
            g.add_node("c" + std::to_string(c) + "_" + padded("n", i, size - 1));
    SeededRng rng(seed);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            bool same = (i / size) == (j / size);
            double p = same ? in_p : out_p;
            if (rng.uniform_double() < p)
                g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), 1);
        }
    return g;
}

EmbeddingTable noisy_community_indicators(size_t communities, size_t size, double sigma,
                                          uint64_t seed) {
    EmbeddingTable table;
    SeededRng rng(seed);
    for (size_t c = 0; c < communities; ++c)
        for (size_t i = 0; i < size; ++i) {
            std::vector<double> vec(communities, 0.0);
            vec[c] = 1.0;
            for (double& v : vec) v += sigma * rng.gaussian();
            table.insert("c" + std::to_string(c) + "_" + padded("n", i, size - 1),
                         std::move(vec));
        }
    return table;
}

} // namespace cooc
