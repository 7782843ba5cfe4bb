#include <doctest.h>

#include <cmath>

#include "cooc/embeddings.hpp"
#include "cooc/error.hpp"
#include "cooc/graph.hpp"
#include "cooc/rng.hpp"
#include "support/fixtures.hpp"

using namespace cooc;

TEST_SUITE("embeddings") {

TEST_CASE("load_table parses uniform rows") {
    auto t = parse_embedding_tsv("wash face\t1,0,0.5\nmake tea\t0,1,-0.25\n");
    CHECK(t.dim == 3);
    CHECK(t.size() == 2);
    CHECK(t.at("make tea")[2] == doctest::Approx(-0.25));
}

TEST_CASE("load_table rejects ragged rows with the line number") {
    try {
        parse_embedding_tsv("a\t1,2,3\nb\t1,2\n", "emb");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("emb:2") != std::string::npos);
    }
}

TEST_CASE("load_table rejects duplicates, non-finite values and empty files") {
    CHECK_THROWS_AS(parse_embedding_tsv("a\t1,2\na\t3,4\n"), Error);
    CHECK_THROWS_AS(parse_embedding_tsv("a\t1,nan\n"), Error);
    CHECK_THROWS_AS(parse_embedding_tsv("a\t1,inf\n"), Error);
    CHECK_THROWS_AS(parse_embedding_tsv(""), Error);
    CHECK_THROWS_AS(parse_embedding_tsv("# just a comment\n"), Error);
}

TEST_CASE("multimodal_average is the elementwise mean on the intersection") {
    EmbeddingTable a, b;
    a.insert("x", {1.0, 0.0});
    a.insert("only a", {5.0, 5.0});
    b.insert("x", {0.0, 1.0});
    b.insert("only b", {7.0, 7.0});
    auto m = multimodal_average(a, b);
    CHECK(m.size() == 1);
    CHECK(m.at("x") == std::vector<double>{0.5, 0.5});
}

TEST_CASE("multimodal_average of identical tables is the identity") {
    EmbeddingTable a;
    a.insert("x", {1.0, 2.0});
    a.insert("y", {3.0, 4.0});
    auto m = multimodal_average(a, a);
    CHECK(m.at("x") == a.at("x"));
    CHECK(m.at("y") == a.at("y"));
}

TEST_CASE("multimodal_average error cases") {
    EmbeddingTable a, b, c;
    a.insert("x", {1.0, 2.0});
    b.insert("x", {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(multimodal_average(a, b), Error); // dim mismatch
    c.insert("z", {1.0, 2.0});
    CHECK_THROWS_AS(multimodal_average(a, c), Error); // empty intersection
}

TEST_CASE("multimodal_average is commutative") {
    EmbeddingTable a, b;
    SeededRng rng(17);
    for (int i = 0; i < 6; ++i) {
        std::string name = "act" + std::to_string(i);
        a.insert(name, {rng.gaussian(), rng.gaussian()});
        b.insert(name, {rng.gaussian(), rng.gaussian()});
    }
    auto ab = multimodal_average(a, b);
    auto ba = multimodal_average(b, a);
    for (const auto& [name, vec] : ab.vectors) CHECK(ba.at(name) == vec);
}

TEST_CASE("graph_average_embedding weighted mean") {
    // node a with neighbors b (w=2, e=(1,0)) and c (w=3, e=(0,1)) -> (0.4, 0.6)
    ActionGraph g;
    g.add_edge("a", "b", 2);
    g.add_edge("a", "c", 3);
    EmbeddingTable base;
    base.insert("a", {9.0, 9.0});
    base.insert("b", {1.0, 0.0});
    base.insert("c", {0.0, 1.0});
    auto result = graph_average_embedding(g, base);
    CHECK(result.table.at("a") == std::vector<double>{0.4, 0.6});
    CHECK(result.warnings.empty());
    CHECK(result.table.modality == Modality::Graph);
}

TEST_CASE("single-neighbor node copies its neighbor's embedding") {
    ActionGraph g;
    g.add_edge("a", "b", 5);
    EmbeddingTable base;
    base.insert("a", {1.0, 1.0});
    base.insert("b", {0.25, -0.75});
    auto result = graph_average_embedding(g, base);
    CHECK(result.table.at("a") == base.at("b"));
}

TEST_CASE("isolated node keeps its base embedding") {
    ActionGraph g;
    g.add_edge("a", "b", 1);
    g.add_node("loner");
    EmbeddingTable base;
    base.insert("a", {1.0});
    base.insert("b", {2.0});
    base.insert("loner", {42.0});
    auto result = graph_average_embedding(g, base);
    CHECK(result.table.at("loner") == std::vector<double>{42.0});
}

TEST_CASE("nodes missing from the base table are skipped with a warning") {
    ActionGraph g;
    g.add_edge("a", "mystery", 1);
    EmbeddingTable base;
    base.insert("a", {1.0});
    base.insert("x", {0.0});
    auto result = graph_average_embedding(g, base);
    CHECK(!result.table.contains("mystery"));
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("mystery") != std::string::npos);
    // 'a' has no neighbor with an embedding left, so it keeps its own
    CHECK(result.table.at("a") == std::vector<double>{1.0});
}

TEST_CASE("averaged coordinates stay inside the neighbor hull") {
    SeededRng rng(23);
    ActionGraph g = fixtures::g0();
    EmbeddingTable base;
    for (const auto& name : g.sorted_nodes())
        base.insert(name, {rng.gaussian(), rng.gaussian(), rng.gaussian()});
    auto result = graph_average_embedding(g, base);
    for (const auto& name : g.sorted_nodes()) {
        NodeId id = g.require_node(name);
        if (g.degree(id) == 0) continue;
        for (size_t d = 0; d < base.dim; ++d) {
            double lo = 1e18, hi = -1e18;
            for (auto [nbr, w] : g.neighbors(id)) {
                (void)w;
                lo = std::min(lo, base.at(g.name(nbr))[d]);
                hi = std::max(hi, base.at(g.name(nbr))[d]);
            }
            CHECK(result.table.at(name)[d] >= lo - 1e-12);
            CHECK(result.table.at(name)[d] <= hi + 1e-12);
        }
    }
}

TEST_CASE("cosine basics") {
    CHECK(cosine({1.0, 2.0}, {1.0, 2.0}) == doctest::Approx(1.0));
    CHECK(cosine({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(cosine({1.0, 2.0}, {2.0, 1.0}) == doctest::Approx(0.8));
    CHECK(cosine({0.0, 0.0}, {1.0, 1.0}) == 0.0); // zero-norm convention
    CHECK_THROWS_AS(cosine({1.0}, {1.0, 2.0}), Error);
}

TEST_CASE("cosine is invariant to positive scaling") {
    SeededRng rng(29);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> u = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
        std::vector<double> v = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
        double alpha = 0.1 + 5.0 * rng.uniform_double();
        double beta = 0.1 + 5.0 * rng.uniform_double();
        auto su = u, sv = v;
        for (auto& x : su) x *= alpha;
        for (auto& x : sv) x *= beta;
        CHECK(cosine(su, sv) == doctest::Approx(cosine(u, v)).epsilon(1e-12));
    }
}

TEST_CASE("embedding TSV round trip is bit-identical") {
    EmbeddingTable t;
    SeededRng rng(37);
    for (int i = 0; i < 8; ++i)
        t.insert("action " + std::to_string(i),
                 {rng.gaussian(), rng.uniform_double() * 1e-7, -rng.uniform_double() * 1e7});
    auto text = to_embedding_tsv(t);
    auto back = parse_embedding_tsv(text);
    CHECK(back.vectors == t.vectors);
    CHECK(to_embedding_tsv(back) == text);
}

TEST_CASE("l2_normalize produces unit vectors and keeps zeros") {
    EmbeddingTable t;
    t.insert("a", {3.0, 4.0});
    t.insert("z", {0.0, 0.0});
    auto n = l2_normalize(t);
    CHECK(n.at("a")[0] == doctest::Approx(0.6));
    CHECK(n.at("a")[1] == doctest::Approx(0.8));
    CHECK(n.at("z") == std::vector<double>{0.0, 0.0});
}

} // TEST_SUITE
