#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lc/graph.hpp"
#include "testutil.hpp"

using namespace lc;
using namespace lctest;

TEST_CASE("contract_edge basic rules") {
    LabeledGraph tri = complete_graph(3); // {0,1,2}; use {1,2,3} per spec examples
    LabeledGraph triangle = graph_from({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}});
    LabeledGraph r = contract_edge(triangle, 1, 2);
    CHECK(r.vertices() == std::vector<int>{1, 3});
    CHECK(r.has_edge(1, 3));
    CHECK(r.edge_count() == 1);

    LabeledGraph path = path_graph({1, 2, 3});
    r = contract_edge(path, 2, 3);
    CHECK(r.vertices() == std::vector<int>{1, 2});
    CHECK(r.has_edge(1, 2));

    LabeledGraph star = graph_from({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}});
    r = contract_edge(star, 1, 2);
    CHECK(r.vertices() == std::vector<int>{1, 3, 4});
    CHECK(r.edges() == std::vector<std::pair<int, int>>{{1, 3}, {1, 4}});

    CHECK_THROWS_AS(contract_edge(path, 1, 3), NonEdgeError);
    CHECK_THROWS_AS(contract_edge(path, 1, 9), UnknownLabelError);
    (void)tri;
}

TEST_CASE("apply_sequence") {
    LabeledGraph p4 = path_graph({1, 2, 3, 4});
    CHECK(apply_sequence(p4, {}) == p4);

    LabeledGraph r = apply_sequence(p4, {{{2, 3}}});
    CHECK(r == graph_from({1, 2, 4}, {{1, 2}, {2, 4}}));

    LabeledGraph p3 = path_graph({1, 2, 3});
    try {
        apply_sequence(p3, {{{1, 3}}});
        FAIL("expected InvalidStepError");
    } catch (const InvalidStepError& e) {
        CHECK(e.index == 0);
    }
}

TEST_CASE("contraction shrinks V by one and never grows E") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        int n = 3 + static_cast<int>(rng() % 6);
        LabeledGraph g;
        for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((rng() & 3) == 0 && !g.has_edge(u, v)) g.add_edge(u, v);
        auto edges = g.edges();
        auto [u, v] = edges[rng() % edges.size()];
        LabeledGraph r = contract_edge(g, u, v);
        CHECK(r.vertex_count() == g.vertex_count() - 1);
        CHECK(r.edge_count() <= g.edge_count());
    }
}

TEST_CASE("check_witness") {
    InstancePair k2{graph_from({1, 2}, {{1, 2}}), graph_from({1, 2}, {{1, 2}})};
    WitnessStructure identity{{{1, {1}}, {2, {2}}}};
    CHECK(check_witness(k2, identity).valid);

    InstancePair pe{path_graph({1, 2, 3}), graph_from({1, 3}, {{1, 3}})};
    WitnessStructure w{{{1, {1, 2}}, {3, {3}}}};
    CHECK(check_witness(pe, w).valid);

    InstancePair iso{path_graph({1, 2, 3}), graph_from({1, 3}, {})};
    ValidityReport rep = check_witness(iso, w);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].find("adjacent but not an H edge") != std::string::npos);

    // structural failures are hard errors
    WitnessStructure missing{{{1, {1, 2}}}};
    CHECK_THROWS_AS(check_witness(pe, missing), RepresentativeMismatchError);
    WitnessStructure overlap{{{1, {1, 2}}, {3, {2, 3}}}};
    CHECK_THROWS_AS(check_witness(pe, overlap), NotAPartitionError);
    WitnessStructure short_cover{{{1, {1}}, {3, {3}}}};
    CHECK_THROWS_AS(check_witness(pe, short_cover), NotAPartitionError);
}

TEST_CASE("check_witness lists every violation") {
    // two disconnected classes plus one missing H edge
    LabeledGraph g = graph_from({1, 2, 3, 4, 5, 6}, {{1, 3}, {3, 2}, {3, 4}, {4, 6}, {6, 5}});
    LabeledGraph h = graph_from({1, 2, 5}, {{1, 2}, {2, 5}, {1, 5}});
    InstancePair inst{g, h};
    WitnessStructure w{{{1, {1, 4}}, {2, {2, 6}}, {5, {5, 3}}}};
    ValidityReport rep = check_witness(inst, w);
    CHECK_FALSE(rep.valid);
    CHECK(rep.violations.size() >= 3);
}

TEST_CASE("witness_to_sequence") {
    InstancePair same{path_graph({1, 2}), path_graph({1, 2})};
    WitnessStructure singletons{{{1, {1}}, {2, {2}}}};
    CHECK(witness_to_sequence(singletons, same.g).pairs.empty());

    LabeledGraph p3 = path_graph({1, 2, 3});
    WitnessStructure w{{{1, {1, 2}}, {3, {3}}}};
    ContractionSequence seq = witness_to_sequence(w, p3);
    CHECK(seq.pairs == std::vector<std::pair<int, int>>{{1, 2}});

    // random valid witness on 6 vertices: application reaches H exactly
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        LabeledGraph g;
        for (int v = 1; v < 6; ++v) g.add_edge(v, static_cast<int>(rng() % v));
        ContractionSequence s;
        LabeledGraph h = g;
        for (int c = 0; c < 2; ++c) {
            auto edges = h.edges();
            auto [u, v] = edges[rng() % edges.size()];
            s.pairs.emplace_back(u, v);
            h = contract_edge(h, u, v);
        }
        InstancePair inst{g, h};
        WitnessStructure w2 = sequence_to_witness(inst, s);
        CHECK(check_witness(inst, w2).valid);
        CHECK(apply_sequence(g, witness_to_sequence(w2, g)) == h);
    }
}

TEST_CASE("order independence of leaf-first contraction orders") {
    // two different spanning-tree orders of the same witness yield the same graph
    LabeledGraph g = graph_from({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {1, 5}});
    LabeledGraph h = graph_from({1, 5}, {{1, 5}});
    InstancePair inst{g, h};
    WitnessStructure w{{{1, {1, 2, 3, 4}}, {5, {5}}}};
    REQUIRE(check_witness(inst, w).valid);
    ContractionSequence bfs_order = witness_to_sequence(w, g);
    // hand-built alternative leaf-first order onto the same representative
    ContractionSequence other{{{3, 4}, {1, 3}, {1, 2}}};
    CHECK(apply_sequence(g, bfs_order) == apply_sequence(g, other));
}

TEST_CASE("sequence_to_witness") {
    InstancePair same{path_graph({1, 2}), path_graph({1, 2})};
    WitnessStructure w = sequence_to_witness(same, {});
    CHECK(w.classes == std::map<int, std::set<int>>{{1, {1}}, {2, {2}}});

    InstancePair pe{path_graph({1, 2, 3}), graph_from({1, 3}, {{1, 3}})};
    w = sequence_to_witness(pe, {{{1, 2}}});
    CHECK(w.classes == std::map<int, std::set<int>>{{1, {1, 2}}, {3, {3}}});

    // chained removals follow keep-chains to the surviving ancestor
    InstancePair chain{path_graph({1, 2, 3, 4}), graph_from({1, 4}, {{1, 4}})};
    w = sequence_to_witness(chain, {{{2, 3}, {1, 2}}});
    CHECK(w.classes == std::map<int, std::set<int>>{{1, {1, 2, 3}}, {4, {4}}});

    CHECK_THROWS_AS(sequence_to_witness(pe, {}), NotAContractionToHError);
}

TEST_CASE("round trip: sequence_to_witness after witness_to_sequence") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 100; ++it) {
        int n = 4 + static_cast<int>(rng() % 4);
        LabeledGraph g;
        for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
        LabeledGraph h = g;
        ContractionSequence s;
        for (int c = 0; c < 2; ++c) {
            auto edges = h.edges();
            auto [u, v] = edges[rng() % edges.size()];
            s.pairs.emplace_back(u, v);
            h = contract_edge(h, u, v);
        }
        InstancePair inst{g, h};
        WitnessStructure w = sequence_to_witness(inst, s);
        WitnessStructure again = sequence_to_witness(inst, witness_to_sequence(w, g));
        CHECK(w.classes == again.classes);
    }
}

TEST_CASE("degeneracy") {
    CHECK(degeneracy(complete_graph(5)).d == 4);
    CHECK(degeneracy(path_graph({0, 1, 2, 3})).d == 1);
    LabeledGraph tree = graph_from({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {2, 3}, {2, 4}});
    CHECK(degeneracy(tree).d == 1);
    CHECK(degeneracy(cycle_graph(6)).d == 2);
    CHECK(degeneracy(LabeledGraph{}).d == 0);

    // ordering property: each vertex has <= d neighbors later in the order
    DegeneracyResult res = degeneracy(cycle_graph(6));
    std::map<int, int> pos;
    for (std::size_t i = 0; i < res.order.size(); ++i) pos[res.order[i]] = static_cast<int>(i);
    LabeledGraph c6 = cycle_graph(6);
    for (int v : c6.vertices()) {
        int later = 0;
        for (int w : c6.neighbors(v))
            if (pos[w] > pos[v]) ++later;
        CHECK(later <= res.d);
    }
}

TEST_CASE("greedy_coloring") {
    LabeledGraph edgeless = graph_from({1, 5, 9}, {});
    auto col = greedy_coloring(edgeless);
    for (auto [v, c] : col) CHECK(c == 0);

    auto k4 = greedy_coloring(complete_graph(4));
    std::set<int> used;
    for (auto [v, c] : k4) used.insert(c);
    CHECK(used.size() == 4);

    LabeledGraph c5 = cycle_graph(5);
    auto col5 = greedy_coloring(c5);
    std::set<int> used5;
    for (auto [v, c] : col5) used5.insert(c);
    CHECK(used5.size() <= 3);
    for (auto [u, v] : c5.edges()) CHECK(col5[u] != col5[v]);
}

TEST_CASE("coloring is proper and uses at most degeneracy+1 colors") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + static_cast<int>(rng() % 8);
        LabeledGraph g;
        for (int v = 0; v < n; ++v) g.add_vertex(v);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((rng() & 3) == 0) g.add_edge(u, v);
        auto col = greedy_coloring(g);
        for (auto [u, v] : g.edges()) CHECK(col[u] != col[v]);
        std::set<int> used;
        for (auto [v, c] : col) used.insert(c);
        CHECK(static_cast<int>(used.size()) <= degeneracy(g).d + 1);
    }
}

TEST_CASE("degeneracy bounds under contraction") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 300; ++it) {
        int n = 4 + static_cast<int>(rng() % 10);
        LabeledGraph g;
        for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % v));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if ((rng() & 3) == 0 && !g.has_edge(u, v)) g.add_edge(u, v);
        int k = 1 + static_cast<int>(rng() % (n - 2));
        LabeledGraph h = g;
        for (int c = 0; c < k; ++c) {
            auto edges = h.edges();
            auto [u, v] = edges[rng() % edges.size()];
            h = contract_edge(h, u, v);
        }
        int dg = degeneracy(g).d, dh = degeneracy(h).d;
        CHECK(dh <= dg + k);
        CHECK(dh * (n - k) <= dg * 2 * n);
    }
}

TEST_CASE("union_graph") {
    InstancePair same{path_graph({1, 2, 3}), path_graph({1, 2, 3})};
    CHECK(union_graph(same) == same.g);

    InstancePair pe{path_graph({1, 2, 3}), graph_from({1, 3}, {{1, 3}})};
    CHECK(union_graph(pe) == graph_from({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}));

    InstancePair disjoint{graph_from({1, 2, 3}, {{1, 2}}), graph_from({2, 3}, {{2, 3}})};
    CHECK(union_graph(disjoint).edge_count() == 2);
}

TEST_CASE("instance pair validation and sanity helpers") {
    CHECK_THROWS_AS(InstancePair(path_graph({1, 2}), path_graph({1, 3})), Error);

    InstancePair split{graph_from({1, 2, 3, 4}, {{1, 2}, {3, 4}}), graph_from({1, 2}, {{1, 2}})};
    CHECK(has_h_free_component(split));
    InstancePair covered{graph_from({1, 2, 3, 4}, {{1, 2}, {3, 4}}),
                         graph_from({1, 3}, {})};
    CHECK_FALSE(has_h_free_component(covered));
}
