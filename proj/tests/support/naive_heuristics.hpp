#pragma once

// Independent brute-force re-implementations of the topology measures, used
// only as test oracles. Everything works on a dense weight matrix and avoids
// the library's adjacency/BFS code paths on purpose.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cooc/graph.hpp"

namespace naive {

struct DenseGraph {
    size_t n = 0;
    std::vector<std::vector<uint64_t>> w;

    static DenseGraph from(const cooc::ActionGraph& g) {
        DenseGraph d;
        d.n = g.node_count();
        d.w.assign(d.n, std::vector<uint64_t>(d.n, 0));
        for (const auto& [pair, weight] : g.edges()) {
            d.w[pair.first][pair.second] = weight;
            d.w[pair.second][pair.first] = weight;
        }
        return d;
    }

    size_t degree(size_t x) const {
        size_t k = 0;
        for (size_t z = 0; z < n; ++z)
            if (w[x][z] > 0) ++k;
        return k;
    }

    uint64_t strength(size_t x) const {
        uint64_t s = 0;
        for (size_t z = 0; z < n; ++z) s += w[x][z];
        return s;
    }

    std::vector<size_t> common(size_t x, size_t y) const {
        std::vector<size_t> out;
        for (size_t z = 0; z < n; ++z)
            if (w[x][z] > 0 && w[y][z] > 0) out.push_back(z);
        return out;
    }
};

inline double cn(const DenseGraph& g, size_t x, size_t y) {
    return static_cast<double>(g.common(x, y).size());
}

inline double salton(const DenseGraph& g, size_t x, size_t y) {
    double kx = static_cast<double>(g.degree(x)), ky = static_cast<double>(g.degree(y));
    if (kx == 0 || ky == 0) return 0.0;
    return cn(g, x, y) / std::sqrt(kx * ky);
}

inline double hpi(const DenseGraph& g, size_t x, size_t y) {
    double k = static_cast<double>(std::min(g.degree(x), g.degree(y)));
    return k == 0 ? 0.0 : cn(g, x, y) / k;
}

inline double hdi(const DenseGraph& g, size_t x, size_t y) {
    double k = static_cast<double>(std::max(g.degree(x), g.degree(y)));
    return k == 0 ? 0.0 : cn(g, x, y) / k;
}

inline double aa(const DenseGraph& g, size_t x, size_t y) {
    double s = 0.0;
    for (size_t z : g.common(x, y)) s += 1.0 / std::log(static_cast<double>(g.degree(z)));
    return s;
}

inline double ra(const DenseGraph& g, size_t x, size_t y) {
    double s = 0.0;
    for (size_t z : g.common(x, y)) s += 1.0 / static_cast<double>(g.degree(z));
    return s;
}

// all-pairs hop counts via Floyd-Warshall
inline std::vector<std::vector<double>> hops(const DenseGraph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(g.n, std::vector<double>(g.n, inf));
    for (size_t i = 0; i < g.n; ++i) d[i][i] = 0.0;
    for (size_t i = 0; i < g.n; ++i)
        for (size_t j = 0; j < g.n; ++j)
            if (g.w[i][j] > 0) d[i][j] = 1.0;
    for (size_t k = 0; k < g.n; ++k)
        for (size_t i = 0; i < g.n; ++i)
            for (size_t j = 0; j < g.n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

inline double sp(const DenseGraph& g, size_t x, size_t y) {
    auto d = hops(g);
    if (!std::isfinite(d[x][y])) return 0.0; // disconnected; callers never pass x == y
    return 1.0 / d[x][y];
}

inline double wcn(const DenseGraph& g, size_t x, size_t y) {
    double s = 0.0;
    for (size_t z : g.common(x, y))
        s += (static_cast<double>(g.w[x][z]) + static_cast<double>(g.w[z][y])) / 2.0;
    return s;
}

inline double waa(const DenseGraph& g, size_t x, size_t y) {
    double s = 0.0;
    for (size_t z : g.common(x, y))
        s += (static_cast<double>(g.w[x][z]) + static_cast<double>(g.w[z][y])) /
             (2.0 * std::log(1.0 + static_cast<double>(g.strength(z))));
    return s;
}

inline double wra(const DenseGraph& g, size_t x, size_t y) {
    double s = 0.0;
    for (size_t z : g.common(x, y))
        s += (static_cast<double>(g.w[x][z]) + static_cast<double>(g.w[z][y])) /
             (2.0 * static_cast<double>(g.strength(z)));
    return s;
}

inline double score(const DenseGraph& g, size_t x, size_t y, cooc::Measure m) {
    using cooc::Measure;
    switch (m) {
        case Measure::CN: return cn(g, x, y);
        case Measure::Salton: return salton(g, x, y);
        case Measure::HPI: return hpi(g, x, y);
        case Measure::HDI: return hdi(g, x, y);
        case Measure::AA: return aa(g, x, y);
        case Measure::RA: return ra(g, x, y);
        case Measure::SP: return sp(g, x, y);
        case Measure::WCN: return wcn(g, x, y);
        case Measure::WAA: return waa(g, x, y);
        case Measure::WRA: return wra(g, x, y);
    }
    return 0.0;
}

} // namespace naive
