#include <doctest.h>

#include <vector>

#include "equitree/exact.hpp"
#include "equitree/generators.hpp"
#include "equitree/graph.hpp"

using namespace equitree;

TEST_CASE("pruned search agrees with the naive oracle on all graphs up to n=5") {
    // every labeled graph on n vertices, all k in 1..3, both directions
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        const int pc = static_cast<int>(pairs.size());
        for (long long mask = 0; mask < (1LL << pc); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < pc; ++i)
                if (mask & (1LL << i)) edges.push_back(pairs[i]);
            Graph g = build_graph(n, edges);
            for (int k = 1; k <= 3; ++k) {
                Decision dec = exact_equitable_tree_k(g, k);
                REQUIRE(dec.verdict != Verdict::indeterminate);
                bool naive = cross_check_naive(g, k);
                REQUIRE((dec.verdict == Verdict::sat) == naive);
                if (dec.verdict == Verdict::sat) {
                    REQUIRE(dec.witness.has_value());
                    VerificationReport rep = verify(g, *dec.witness);
                    REQUIRE(rep.ok());
                    REQUIRE(dec.witness->k == k);
                }
            }
        }
    }
}

TEST_CASE("pruned search agrees with the naive oracle on random graphs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 7 + static_cast<int>(rng.bounded(3));  // 7..9
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bounded(100) < 40) edges.emplace_back(u, v);
        Graph g = build_graph(n, edges);
        for (int k = 2; k <= 4; ++k) {
            Decision dec = exact_equitable_tree_k(g, k);
            REQUIRE(dec.verdict != Verdict::indeterminate);
            REQUIRE((dec.verdict == Verdict::sat) == cross_check_naive(g, k));
            if (dec.witness) REQUIRE(verify(g, *dec.witness).ok());
        }
    }
}

TEST_CASE("witness respects the unique equitable profile") {
    Graph g = random_d_degenerate(13, 2, Attachment::uniform, 3);
    Decision dec = exact_equitable_tree_k(g, 4);  // profile 4,3,3,3
    REQUIRE(dec.verdict == Verdict::sat);
    const Coloring& c = *dec.witness;
    int big = 0, small = 0;
    for (int col = 1; col <= 4; ++col) {
        if (c.class_sizes[col] == 4) ++big;
        if (c.class_sizes[col] == 3) ++small;
    }
    CHECK(big == 1);
    CHECK(small == 3);
}

TEST_CASE("complete bipartite K9,9 decisions") {
    Graph g = complete_bipartite(9, 9);
    Decision two = exact_equitable_tree_k(g, 2);
    CHECK(two.verdict == Verdict::sat);
    Decision three = exact_equitable_tree_k(g, 3);
    CHECK(three.verdict == Verdict::unsat);
}

TEST_CASE("K6 with two classes is unsat") {
    // any 3+3 split of K6 puts a triangle in each class
    Decision dec = exact_equitable_tree_k(complete_graph(6), 2);
    CHECK(dec.verdict == Verdict::unsat);
}

TEST_CASE("small graphs are always sat for k=3") {
    // n <= 6 means class sizes <= 2 under three classes: always forests
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = random_d_degenerate(6, 3, Attachment::uniform, seed);
        CHECK(exact_equitable_tree_k(g, 3).verdict == Verdict::sat);
    }
}

TEST_CASE("node budget exhaustion reports indeterminate") {
    Graph g = complete_bipartite(9, 9);
    SearchBudget tiny;
    tiny.node_limit = 50;
    Decision dec = exact_equitable_tree_k(g, 3, tiny);
    CHECK(dec.verdict == Verdict::indeterminate);
    CHECK(dec.nodes <= 51);
    CHECK_FALSE(dec.witness.has_value());
}

TEST_CASE("treewidth gadget thresholds at k = d") {
    const int d = 3;
    Graph g = treewidth_gadget(d, 2 * d - 3);
    CHECK(exact_equitable_tree_k(g, d - 1).verdict == Verdict::unsat);
    CHECK(exact_equitable_tree_k(g, d).verdict == Verdict::sat);
}

TEST_CASE("va_eq on standard families") {
    VaEqResult c5 = va_eq(cycle_graph(5));
    CHECK(c5.verdict == Verdict::sat);
    CHECK(c5.value == 2);

    VaEqResult tree = va_eq(path_graph(9));
    CHECK(tree.value == 1);

    VaEqResult k99 = va_eq(complete_bipartite(9, 9));
    CHECK(k99.verdict == Verdict::sat);
    CHECK(k99.value == 2);
}

TEST_CASE("va_eq_star differs from va_eq when the spectrum has gaps") {
    // K9,9: k=2 works, k=3 fails, everything from 4 up works
    Graph g = complete_bipartite(9, 9);
    VaEqResult star = va_eq_star(g);
    CHECK(star.verdict == Verdict::sat);
    CHECK(star.value == 4);
    for (int k = 4; k <= 9; ++k)
        CHECK(exact_equitable_tree_k(g, k).verdict == Verdict::sat);

    VaEqResult c5 = va_eq_star(cycle_graph(5));
    CHECK(c5.value == 2);
    VaEqResult forest = va_eq_star(path_graph(9));
    CHECK(forest.value == 1);
}

TEST_CASE("verdict names") {
    CHECK(std::string(verdict_name(Verdict::sat)) == "sat");
    CHECK(std::string(verdict_name(Verdict::unsat)) == "unsat");
    CHECK(std::string(verdict_name(Verdict::indeterminate)) == "indeterminate");
}
