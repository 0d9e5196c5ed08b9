#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "crafted_states.hpp"
#include "equitree/constructive.hpp"
#include "equitree/generators.hpp"
#include "equitree/graph.hpp"

using namespace equitree;

TEST_CASE("split parameters on frozen examples") {
    // degrees low enough that mu = 0
    std::vector<int> flat23(23, 3), flat80(80, 3), flat24(24, 3);

    SplitParams p1 = compute_split_params(23, 5, 2, flat23);
    CHECK(p1.t == 5);
    CHECK(p1.r == 2);
    CHECK(p1.s == 1);
    CHECK(p1.lambda == Frac(6));
    CHECK(p1.mu == 0);

    SplitParams p2 = compute_split_params(80, 8, 2, flat80);
    CHECK(p2.t == 10);
    CHECK(p2.r == 0);
    CHECK(p2.s == 2);
    CHECK(p2.lambda == Frac(6));

    SplitParams p3 = compute_split_params(24, 3, 2, flat24);
    CHECK(p3.t == 8);
    CHECK(p3.r == 0);
    CHECK(p3.s == 2);
    CHECK(p3.lambda == Frac(5));
}

TEST_CASE("mu counts degrees meeting the exact threshold") {
    // n=23, k=5, d=2: t=5, s=1, so the cut is deg*1 >= 6*2 = 12
    std::vector<int> degs{13, 12, 12, 11, 3, 3, 3, 3, 3, 3, 3, 3,
                          3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
    SplitParams p = compute_split_params(23, 5, 2, degs);
    CHECK(p.mu == 3);  // 13 and the two 12s sit on or above the cut; 11 does not
}

TEST_CASE("split parameter validation") {
    std::vector<int> degs{3, 2, 1};
    CHECK_THROWS_AS(compute_split_params(3, 2, 2, degs), std::invalid_argument);  // t=2
    std::vector<int> rising(9, 2);
    rising[4] = 5;  // not non-increasing
    CHECK_THROWS_AS(compute_split_params(9, 3, 2, rising), std::invalid_argument);
    std::vector<int> wrong_size(5, 2);
    CHECK_THROWS_AS(compute_split_params(9, 3, 2, wrong_size), std::invalid_argument);
}

TEST_CASE("mu*t < n*s holds whenever d is the true degeneracy") {
    // follows from the degree-position bound; the split relies on it
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = random_d_degenerate(60, 3, Attachment::skewed, seed);
        int d = degeneracy_ordering(g).degeneracy;
        std::vector<int> degs;
        for (int v : degree_descending_order(g).order) degs.push_back(g.degree(v));
        for (int k = 4; k <= 20; k += 4) {
            if ((g.n + k - 1) / k < 3) continue;
            SplitParams p = compute_split_params(g.n, k, d, degs);
            CHECK(static_cast<long long>(p.mu) * p.t <
                  static_cast<long long>(g.n) * p.s);
        }
    }
}

TEST_CASE("small-deficiency reduction predicate") {
    CHECK(reduce_small_r_applies(2, 1));       // 2 < 4
    CHECK(reduce_small_r_applies(3, 1));       // 3 < 4
    CHECK_FALSE(reduce_small_r_applies(2, 0)); // 2 < 2 fails
    CHECK_FALSE(reduce_small_r_applies(8, 3)); // 8 < 8 fails
    CHECK(reduce_small_r_applies(1, 0));       // 1 < 2
}

static Coloring expect_coloring(SolveResult&& res) {
    REQUIRE(std::holds_alternative<Coloring>(res));
    return std::get<Coloring>(std::move(res));
}

TEST_CASE("pinned outputs on small families") {
    // C5 with k=2 goes through the deficiency reduction: vertex 0 is peeled,
    // the remaining path is round-robin colored, and 0 rejoins class 1.
    Coloring c5 = expect_coloring(equitable_tree_color(cycle_graph(5), 2));
    CHECK(c5.assignment == std::vector<int>{1, 1, 2, 1, 2});

    // degeneracy 1: BFS fill in contiguous blocks
    Coloring p10 = expect_coloring(equitable_tree_color(path_graph(10), 3));
    CHECK(p10.assignment == std::vector<int>{1, 1, 1, 1, 2, 2, 2, 3, 3, 3});

    // t = 2: plain round robin
    Coloring c6 = expect_coloring(equitable_tree_color(cycle_graph(6), 3));
    CHECK(c6.assignment == std::vector<int>{1, 2, 3, 1, 2, 3});

    Coloring one = expect_coloring(equitable_tree_color(build_graph(1, {}), 1));
    CHECK(one.assignment == std::vector<int>{1});

    Coloring empty = expect_coloring(equitable_tree_color(build_graph(0, {}), 2));
    CHECK(empty.n() == 0);
}

TEST_CASE("k at least half the order always succeeds") {
    std::vector<Graph> graphs;
    graphs.push_back(complete_graph(6));
    graphs.push_back(complete_bipartite(4, 5));
    graphs.push_back(cycle_graph(9));
    graphs.push_back(random_d_degenerate(15, 4, Attachment::skewed, 8));
    for (const Graph& g : graphs) {
        for (int k : {(g.n + 1) / 2, (g.n + 1) / 2 + 1, g.n, g.n + 2}) {
            SolveResult res = equitable_tree_color(g, k, {true});
            Coloring col = expect_coloring(std::move(res));
            CHECK(verify(g, col).ok());
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(equitable_tree_color(path_graph(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(equitable_tree_color(path_graph(3), -2), std::invalid_argument);
}

TEST_CASE("theorem-regime solves succeed with debug checks on") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (int d : {2, 3}) {
            MinDeltaResult gen = random_d_degenerate_min_delta(
                120, d, Attachment::skewed, seed * 10 + d, 10 * d);
            const Graph& g = gen.graph;
            int k = g.max_degree() / 2 + 1;
            SolveStats stats;
            SolveResult res = equitable_tree_color(g, k, {true}, &stats);
            Coloring col = expect_coloring(std::move(res));
            VerificationReport rep = verify(g, col);
            CHECK(rep.ok());
            CHECK(col.k == k);
            CHECK(stats.greedy_placements > 0);
            CHECK(stats.reduce_steps + stats.split_steps >= 1);
        }
    }
}

TEST_CASE("solver is deterministic") {
    Graph g = random_d_degenerate(150, 2, Attachment::skewed, 31);
    int k = g.max_degree() / 2 + 1;
    Coloring a = expect_coloring(equitable_tree_color(g, k));
    Coloring b = expect_coloring(equitable_tree_color(g, k));
    CHECK(a.assignment == b.assignment);
}

TEST_CASE("core coloring that breaks a forest is rejected") {
    // triangle 0-1-2 among 22 vertices; t=11 gives s=3, so three core
    // vertices in one class pass the load check but fail the forest check
    std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {1, 2}};
    Graph g = build_graph(22, edges);
    SplitParams p;
    p.n = 22;
    p.k = 2;
    p.t = 11;
    p.r = 0;
    p.s = 3;
    p.lambda = Frac(14, 3);
    p.mu = 3;
    std::vector<int> order;
    for (int v = 0; v < 22; ++v) order.push_back(v);
    std::vector<int> core{1, 1, 1};
    CHECK_THROWS_AS(ExtendState(g, p, 2, order, core), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Crafted mid-extension states

TEST_CASE("crafted states land one full switch that external checks confirm") {
    int multi_layer = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        crafted::CraftedState st = crafted::make_crafted_state(seed);
        SolveStats stats;
        ExtendState es(st.graph, st.params, 2, st.order, {}, {true}, &stats);
        crafted::replay_fills(es, st);
        es.check_conditions();  // the generator must hand over a legal state

        REQUIRE_FALSE(es.greedy_place(st.v));
        WitnessDigraph h = es.build_witness_digraph();
        auto target = es.pick_insert_target(st.v, h);
        REQUIRE(target.has_value());
        REQUIRE(*target == st.target_class);
        REQUIRE(h.layer_of[*target] >= 1);
        REQUIRE(h.layer_of[*target] <= st.designed_depth);
        if (h.layer_of[*target] >= 2) ++multi_layer;

        es.switch_and_insert(st.v, *target, h);  // debug re-checks conditions
        CHECK(stats.case2_insertions == 1);
        CHECK(stats.witness_moves == h.layer_of[*target]);

        // the state is now complete; the restriction must verify cleanly
        Coloring col = es.extract_restriction();
        VerificationReport rep = verify(st.graph, col);
        CHECK(rep.ok());
        CHECK(col.assignment[st.v] == *target);
    }
    // the generator must actually exercise paths longer than one hop
    CHECK(multi_layer > 20);
}

namespace {

// Independent reconstruction of the class digraph by definition.
struct DigraphOracle {
    int k;
    std::vector<std::vector<int>> witness;
    std::vector<int> layer_of, parent_class, parent_witness;
    std::vector<std::vector<int>> layers;
    std::vector<int> frak_order;
};

DigraphOracle digraph_by_definition(const ExtendState& es) {
    const Graph& star = es.star_graph();
    const ForestTracker& ft = es.tracker();
    const int k = es.params().k;
    const int t = es.params().t;
    DigraphOracle o;
    o.k = k;
    o.witness.assign(k + 1, std::vector<int>(k + 1, -1));
    for (int x = 0; x < star.n; ++x) {
        int cx = ft.color(x);
        if (cx == 0 || es.is_protected(x)) continue;
        for (int y = 1; y <= k; ++y) {
            if (y == cx || o.witness[cx][y] != -1) continue;
            int cnt = 0;
            for (int w : star.adj[x]) cnt += (ft.color(w) == y);
            if (cnt <= 1) o.witness[cx][y] = x;
        }
    }
    o.layer_of.assign(k + 1, -1);
    o.parent_class.assign(k + 1, -1);
    o.parent_witness.assign(k + 1, -1);
    std::vector<int> cur;
    for (int c = 1; c <= k; ++c)
        if (ft.class_size(c) < t) {
            o.layer_of[c] = 0;
            cur.push_back(c);
        }
    o.layers.push_back(cur);
    int depth = 0;
    while (!cur.empty()) {
        ++depth;
        std::vector<int> next;
        for (int c = 1; c <= k; ++c) {
            if (o.layer_of[c] != -1) continue;
            int best_parent = -1;
            for (int p : cur)
                if (o.witness[c][p] != -1) {
                    best_parent = p;
                    break;
                }
            if (best_parent != -1) {
                o.layer_of[c] = depth;
                o.parent_class[c] = best_parent;
                o.parent_witness[c] = o.witness[c][best_parent];
                next.push_back(c);
            }
        }
        cur = next;
        if (!cur.empty()) o.layers.push_back(cur);
    }
    for (const auto& layer : o.layers)
        for (int c : layer) o.frak_order.push_back(c);
    return o;
}

}  // namespace

TEST_CASE("witness digraph matches the by-definition oracle") {
    for (std::uint64_t seed = 300; seed < 360; ++seed) {
        bool blocked = (seed % 2) == 0;
        crafted::CraftedState st = crafted::make_crafted_state(seed, blocked);
        ExtendState es(st.graph, st.params, 2, st.order, {});
        crafted::replay_fills(es, st);

        WitnessDigraph h = es.build_witness_digraph();
        DigraphOracle o = digraph_by_definition(es);
        REQUIRE(h.k == o.k);
        REQUIRE(h.witness == o.witness);
        REQUIRE(h.layer_of == o.layer_of);
        REQUIRE(h.parent_class == o.parent_class);
        REQUIRE(h.parent_witness == o.parent_witness);
        REQUIRE(h.layers == o.layers);
        REQUIRE(h.frak_order == o.frak_order);
        REQUIRE(h.y() == static_cast<int>(o.frak_order.size()));

        // frak_order is sorted by (layer, class index), and layers partition it
        for (std::size_t i = 1; i < h.frak_order.size(); ++i) {
            int a = h.frak_order[i - 1], b = h.frak_order[i];
            CHECK(std::make_pair(h.layer_of[a], a) < std::make_pair(h.layer_of[b], b));
        }

        // building twice gives the identical structure
        WitnessDigraph h2 = es.build_witness_digraph();
        REQUIRE(h2.witness == h.witness);
        REQUIRE(h2.frak_order == h.frak_order);
    }
}

TEST_CASE("switching rejects bad requests") {
    crafted::CraftedState st = crafted::make_crafted_state(7);
    ExtendState es(st.graph, st.params, 2, st.order, {});
    crafted::replay_fills(es, st);
    WitnessDigraph h = es.build_witness_digraph();

    // unreachable class: every full class outside the frak
    int unreachable = -1;
    for (int c = 1; c <= st.params.k; ++c)
        if (h.layer_of[c] == -1) unreachable = c;
    if (unreachable != -1)
        CHECK_THROWS_AS(es.switch_and_insert(st.v, unreachable, h),
                        std::invalid_argument);

    // colored vertex cannot be switched in
    int colored = st.fills.front().first;
    CHECK_THROWS_AS(es.switch_and_insert(colored, st.target_class, h),
                    std::invalid_argument);

    // a class where v has two neighbors is not a valid target
    int heavy = -1;
    for (int c : h.frak_order)
        if (c != st.target_class) {
            heavy = c;
            break;
        }
    if (heavy != -1)
        CHECK_THROWS_AS(es.switch_and_insert(st.v, heavy, h), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Stuck-state audits

static const IneqEval& find_eq(const StuckReport& rep, int id) {
    for (const IneqEval& e : rep.inequalities)
        if (e.id == id) return e;
    REQUIRE(false);
    static IneqEval dummy;
    return dummy;
}

TEST_CASE("blocked crafted states audit cleanly") {
    for (std::uint64_t seed = 500; seed < 540; ++seed) {
        crafted::CraftedState st = crafted::make_crafted_state(seed, true);
        ExtendState es(st.graph, st.params, 2, st.order, {});
        crafted::replay_fills(es, st);

        REQUIRE_FALSE(es.greedy_place(st.v));
        WitnessDigraph h = es.build_witness_digraph();
        REQUIRE_FALSE(es.pick_insert_target(st.v, h).has_value());

        StuckReport rep = es.audit_stuck_state(st.v, h);
        CHECK(rep.failing_vertex_local == st.v);
        CHECK((rep.case_id == 1 || rep.case_id == 2));
        CHECK(rep.measured.y == h.y());
        CHECK(rep.measured.y >= 1);
        CHECK(rep.measured.n == st.params.n);
        CHECK(rep.measured.k == st.params.k);
        CHECK(rep.measured.t == st.params.t);
        CHECK(rep.measured.class_sizes.size() ==
              static_cast<std::size_t>(st.params.k));

        // bookkeeping identity always holds
        const IneqEval& book = find_eq(rep, 18);
        CHECK(book.applicable);
        CHECK(book.holds);

        // v has >= 2 neighbors in all k classes, so delta >= 2k and the
        // half-degree hypothesis fails; that consequence must be flagged
        CHECK_FALSE(rep.measured.k_ge_theorem_min);
        CHECK(std::find(rep.violated.begin(), rep.violated.end(), 24) !=
              rep.violated.end());
        CHECK_FALSE(rep.violated.empty());

        // audit is deterministic
        StuckReport rep2 = es.audit_stuck_state(st.v, h);
        CHECK(rep2.violated == rep.violated);
        REQUIRE(rep2.inequalities.size() == rep.inequalities.size());
        for (std::size_t i = 0; i < rep.inequalities.size(); ++i) {
            const IneqEval &a = rep.inequalities[i], &b = rep2.inequalities[i];
            CHECK(a.id == b.id);
            CHECK(a.holds == b.holds);
            CHECK(a.applicable == b.applicable);
            REQUIRE(a.links.size() == b.links.size());
            for (std::size_t l = 0; l < a.links.size(); ++l) {
                CHECK(a.links[l].lhs == b.links[l].lhs);
                CHECK(a.links[l].rhs == b.links[l].rhs);
                CHECK(a.links[l].holds == b.links[l].holds);
            }
        }
    }
}

TEST_CASE("audit refuses states that are not stuck") {
    crafted::CraftedState st = crafted::make_crafted_state(11);
    ExtendState es(st.graph, st.params, 2, st.order, {});
    crafted::replay_fills(es, st);
    WitnessDigraph h = es.build_witness_digraph();
    // a target exists for this state, so the audit must refuse
    CHECK_THROWS_AS(es.audit_stuck_state(st.v, h), std::invalid_argument);
}

TEST_CASE("triangle with one class gets a stuck report") {
    SolveResult res = equitable_tree_color(complete_graph(3), 1);
    REQUIRE(std::holds_alternative<StuckReport>(res));
    const StuckReport& rep = std::get<StuckReport>(res);
    CHECK(rep.failing_vertex == 2);
    CHECK(rep.case_id == 2);  // i=3, n=3: 15 >= 9
    CHECK(rep.measured.y == 1);
    CHECK(rep.measured.delta == 2);
    CHECK_FALSE(rep.measured.k_ge_theorem_min);
    CHECK_FALSE(rep.violated.empty());
    CHECK(rep.trace.empty());
    CHECK(rep.snapshot.n == 3);
    CHECK(rep.snapshot.k == 1);
    CHECK(rep.snapshot.star_assignment ==
          std::vector<int>{1, 1, 0});
}

TEST_CASE("adversarial dense runs produce self-consistent stuck reports") {
    int stuck_seen = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = random_d_degenerate(120, 12, Attachment::uniform, seed);
        for (int k = 4; k <= 6; ++k) {
            SolveResult res = equitable_tree_color(g, k);
            if (std::holds_alternative<Coloring>(res)) {
                CHECK(verify(g, std::get<Coloring>(res)).ok());
                continue;
            }
            ++stuck_seen;
            const StuckReport& rep = std::get<StuckReport>(res);
            CHECK((rep.case_id == 1 || rep.case_id == 2));
            CHECK(rep.measured.y >= 1);
            CHECK(rep.measured.k == k);

            const IneqEval& book = find_eq(rep, 18);
            CHECK(book.applicable);
            CHECK(book.holds);

            // k <= 6 while the max degree of these graphs is >= 13, so the
            // half-degree hypothesis is false and its consequence must fail
            REQUIRE(g.max_degree() >= 2 * k);
            CHECK_FALSE(rep.measured.k_ge_theorem_min);
            CHECK(std::find(rep.violated.begin(), rep.violated.end(), 24) !=
                  rep.violated.end());

            // class sizes in the report sum to the colored vertices
            long long total = 0;
            for (int sz : rep.measured.class_sizes) total += sz;
            CHECK(total == rep.measured.position - 1 + rep.measured.r);

            // snapshot is replayable: sizes from the assignment agree
            std::vector<long long> sizes(k + 1, 0);
            for (int c : rep.snapshot.star_assignment)
                if (c > 0) ++sizes[c];
            for (int c = 1; c <= k; ++c)
                CHECK(sizes[c] == rep.measured.class_sizes[c - 1]);
        }
    }
    CHECK(stuck_seen > 0);
}

TEST_CASE("every stuck inequality keeps exact rational link text") {
    crafted::CraftedState st = crafted::make_crafted_state(901, true);
    ExtendState es(st.graph, st.params, 2, st.order, {});
    crafted::replay_fills(es, st);
    WitnessDigraph h = es.build_witness_digraph();
    StuckReport rep = es.audit_stuck_state(st.v, h);
    std::set<int> ids;
    for (const IneqEval& e : rep.inequalities) {
        ids.insert(e.id);
        if (!e.applicable) continue;
        bool all = true;
        for (const IneqLink& l : e.links) {
            CHECK_FALSE(l.lhs.empty());
            CHECK_FALSE(l.rhs.empty());
            CHECK((l.rel == "<" || l.rel == "<=" || l.rel == ">" ||
                   l.rel == ">=" || l.rel == "=="));
            all = all && l.holds;
        }
        CHECK(e.holds == all);
    }
    // ids 8..24 all present exactly once
    CHECK(ids.size() == rep.inequalities.size());
    CHECK(*ids.begin() == 8);
    CHECK(*ids.rbegin() == 24);
    CHECK(ids.size() == 17);
}
