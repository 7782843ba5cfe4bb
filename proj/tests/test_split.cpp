#include <doctest.h>

#include "cooc/error.hpp"
#include "cooc/split.hpp"
#include "cooc/synthetic.hpp"

using namespace cooc;

TEST_SUITE("split") {

TEST_CASE("chained floor arithmetic on a 100-edge graph at fraction 0.1") {
    auto g = gnm_random_graph(60, 100, 1);
    auto m = transductive_split(g, 0.1, 1);
    CHECK(m.test.positives.size() == 10);
    CHECK(m.test.negatives.size() == 10);
    CHECK(m.test_graph.edge_count() == 90);
    CHECK(m.val.positives.size() == 9); // floor(0.1 * 90)
    CHECK(m.val_graph.edge_count() == 81);
    CHECK(m.train.positives.size() == 8); // floor(0.1 * 81)
    CHECK(m.train_graph.edge_count() == 73);
    validate_split(m, g);
}

TEST_CASE("same seed reproduces the manifest byte for byte") {
    auto g = gnm_random_graph(40, 120, 9);
    auto a = transductive_split(g, 0.1, 123);
    auto b = transductive_split(g, 0.1, 123);
    CHECK(to_manifest_json(a) == to_manifest_json(b));
    CHECK(to_edge_list_tsv(a.train_graph) == to_edge_list_tsv(b.train_graph));
}

TEST_CASE("different seeds change samples but preserve counts") {
    auto g = gnm_random_graph(40, 120, 9);
    auto a = transductive_split(g, 0.1, 1);
    auto b = transductive_split(g, 0.1, 2);
    CHECK(a.test.positives.size() == b.test.positives.size());
    CHECK(a.val.positives.size() == b.val.positives.size());
    CHECK(a.train.positives.size() == b.train.positives.size());
    CHECK(to_manifest_json(a) != to_manifest_json(b));
    validate_split(a, g);
    validate_split(b, g);
}

TEST_CASE("a 4-edge path at fraction 0.5 exhausts the train stage") {
    ActionGraph g;
    g.add_edge("a", "b", 1);
    g.add_edge("b", "c", 1);
    g.add_edge("c", "d", 1);
    g.add_edge("d", "e", 1);
    // sizing: test floor(2)=2, val floor(1)=1, train floor(0.5)=0 -> error
    try {
        transductive_split(g, 0.5, 7);
        FAIL("expected a sizing error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Sizing);
        CHECK(std::string(e.what()).find("train") != std::string::npos);
    }
}

TEST_CASE("insufficient non-edges is a sizing error with counts") {
    // K5 minus one edge: 9 edges, only 1 non-edge; fraction 0.34 needs 3+ negatives
    ActionGraph g;
    const char* names[5] = {"a", "b", "c", "d", "e"};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (!(i == 0 && j == 1)) g.add_edge(names[i], names[j], 1);
    try {
        transductive_split(g, 0.34, 7);
        FAIL("expected a sizing error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Sizing);
        CHECK(std::string(e.what()).find("non-edge") != std::string::npos);
    }
}

TEST_CASE("bad fraction is a configuration error") {
    auto g = gnm_random_graph(10, 20, 1);
    CHECK_THROWS_AS(transductive_split(g, 0.0, 1), Error);
    CHECK_THROWS_AS(transductive_split(g, 1.0, 1), Error);
}

TEST_CASE("nodes are preserved even when isolated by edge removal") {
    // star graph: removing edges isolates leaves; node set must not shrink
    ActionGraph g;
    for (int i = 0; i < 12; ++i) g.add_edge("hub", "leaf" + std::to_string(i), 1);
    auto m = transductive_split(g, 0.25, 3);
    CHECK(m.train_graph.node_count() == g.node_count());
    validate_split(m, g);
}

TEST_CASE("manifest invariants hold across seeds and graph shapes") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto g = gnm_random_graph(30 + seed, 60 + 5 * seed, seed);
        auto m = transductive_split(g, 0.15, seed * 31 + 7);
        validate_split(m, g);
    }
}

TEST_CASE("dense graphs fall back to non-edge enumeration deterministically") {
    // 20 nodes, 170 of 190 possible edges: rejection sampling will struggle
    auto g = gnm_random_graph(20, 170, 4);
    auto a = transductive_split(g, 0.03, 11); // 5,4,4 positives; 13 negatives of 20 non-edges
    auto b = transductive_split(g, 0.03, 11);
    validate_split(a, g);
    CHECK(to_manifest_json(a) == to_manifest_json(b));
}

TEST_CASE("manifest JSON + graph files round trip") {
    auto g = gnm_random_graph(25, 70, 2);
    auto m = transductive_split(g, 0.1, 5);
    auto dir = std::filesystem::temp_directory_path() / "cooc_split_rt";
    std::filesystem::remove_all(dir);
    save_split(m, dir, "cafe0123");
    auto back = load_split(dir / "split.json");
    CHECK(back.seed == m.seed);
    CHECK(back.fraction == m.fraction);
    CHECK(back.test.positives == m.test.positives);
    CHECK(back.train.negatives == m.train.negatives);
    CHECK(back.val_graph.name_edges() == m.val_graph.name_edges());
    validate_split(back, g);
    std::filesystem::remove_all(dir);
}

} // TEST_SUITE
