#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "lc/graph.hpp"

namespace lctest {

inline lc::LabeledGraph graph_from(std::initializer_list<int> verts,
                                   std::initializer_list<std::pair<int, int>> edges) {
    lc::LabeledGraph g;
    for (int v : verts) g.add_vertex(v);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline lc::LabeledGraph path_graph(std::initializer_list<int> labels) {
    lc::LabeledGraph g;
    int prev = -1;
    bool first = true;
    for (int v : labels) {
        g.add_vertex(v);
        if (!first) g.add_edge(prev, v);
        prev = v;
        first = false;
    }
    return g;
}

inline lc::LabeledGraph complete_graph(int n) {
    lc::LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline lc::LabeledGraph cycle_graph(int n) {
    lc::LabeledGraph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

// all connected labeled graphs on vertex set {0..n-1}
inline std::vector<lc::LabeledGraph> connected_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<lc::LabeledGraph> out;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        lc::LabeledGraph g;
        for (int i = 0; i < n; ++i) g.add_vertex(i);
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((mask >> s) & 1) g.add_edge(slots[s].first, slots[s].second);
        if (lc::connected_components(g).size() == 1) out.push_back(std::move(g));
    }
    return out;
}

// every distinct graph reachable from g by at most k labeled contractions
inline std::vector<lc::LabeledGraph> contractions_up_to(const lc::LabeledGraph& g, int k) {
    std::vector<lc::LabeledGraph> frontier{g}, all{g};
    for (int step = 0; step < k; ++step) {
        std::vector<lc::LabeledGraph> next;
        for (const auto& cur : frontier)
            for (auto [u, v] : cur.edges())
                for (auto [keep, drop] : {std::pair{u, v}, std::pair{v, u}}) {
                    lc::LabeledGraph res = lc::contract_edge(cur, keep, drop);
                    bool fresh = true;
                    for (const auto& seen : all)
                        if (seen == res) {
                            fresh = false;
                            break;
                        }
                    if (fresh) {
                        all.push_back(res);
                        next.push_back(res);
                    }
                }
        frontier = std::move(next);
    }
    return all;
}

// independent re-implementation of the witness enumeration, used as a
// second opinion on the oracle (different loop structure on purpose)
inline bool double_loop_contractible(const lc::InstancePair& inst) {
    std::vector<int> hv = inst.h.vertices();
    std::vector<int> rest;
    for (int v : inst.g.vertices())
        if (!inst.h.has_vertex(v)) rest.push_back(v);
    std::vector<std::size_t> digits(rest.size(), 0);
    while (true) {
        lc::WitnessStructure w;
        for (int h : hv) w.classes[h].insert(h);
        for (std::size_t i = 0; i < rest.size(); ++i) w.classes[hv[digits[i]]].insert(rest[i]);
        if (lc::check_witness(inst, w).valid) return true;
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == hv.size()) digits[pos++] = 0;
        if (pos == digits.size()) return false;
        if (rest.empty()) return false;
    }
}

// exhaustive search over contraction sequences (the paper's characterization)
inline bool sequence_search_contractible(const lc::InstancePair& inst) {
    for (const auto& m : contractions_up_to(
             inst.g, static_cast<int>(inst.g.vertex_count() - inst.h.vertex_count())))
        if (m == inst.h) return true;
    return false;
}

} // namespace lctest
