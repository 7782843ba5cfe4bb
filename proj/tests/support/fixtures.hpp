#pragma once

// Shared test fixtures. G0 is the canonical 4-node graph used across module
// tests; the expected values asserted against it were computed by hand and
// double-checked with the dense-matrix oracle.

#include "cooc/graph.hpp"
#include "cooc/records.hpp"

namespace fixtures {

// nodes {A,B,C,D}; edges A-B:2, A-C:3, B-C:2, C-D:2
// degrees k_A=2 k_B=2 k_C=3 k_D=1; strength(C)=7
inline cooc::ActionGraph g0() {
    cooc::ActionGraph g;
    g.add_edge("A", "B", 2);
    g.add_edge("A", "C", 3);
    g.add_edge("B", "C", 2);
    g.add_edge("C", "D", 2);
    return g;
}

inline cooc::ActionGraph k4(uint64_t weight = 1) {
    cooc::ActionGraph g;
    const char* names[4] = {"a", "b", "c", "d"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.add_edge(names[i], names[j], weight);
    return g;
}

inline cooc::ActionRecord record(const std::string& video, const std::string& action,
                                 double start, double end) {
    return {video, action, start, end};
}

} // namespace fixtures
