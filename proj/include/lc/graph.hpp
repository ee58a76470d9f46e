#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lc/errors.hpp"

namespace lc {

// Simple undirected graph over unique non-negative integer labels.
// Labels need not be contiguous; everything is keyed by label.
class LabeledGraph {
public:
    LabeledGraph() = default;

    void add_vertex(int v);
    void add_edge(int u, int v); // adds endpoints if absent
    void remove_vertex(int v);
    void remove_edge(int u, int v);

    bool has_vertex(int v) const { return adj_.count(v) != 0; }
    bool has_edge(int u, int v) const;

    const std::set<int>& neighbors(int v) const;

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const;

    std::vector<int> vertices() const;
    // edges as (u,v) with u < v, lexicographically sorted
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const LabeledGraph&) const = default;

private:
    std::map<int, std::set<int>> adj_;
};

struct InstancePair {
    LabeledGraph g;
    LabeledGraph h;

    InstancePair(LabeledGraph g_, LabeledGraph h_); // checks V(h) subset of V(g)
};

struct ContractionSequence {
    std::vector<std::pair<int, int>> pairs; // (keep, remove) in application order
};

struct WitnessStructure {
    std::map<int, std::set<int>> classes; // representative (H vertex) -> witness set
};

struct ValidityReport {
    bool valid = false;
    std::vector<std::string> violations;
    int width = -1; // filled by decomposition validation, unused here
};

// G/(u,v): remove v, connect u to N(v) \ N[u]. Keeps label u.
LabeledGraph contract_edge(const LabeledGraph& g, int u, int v);

LabeledGraph apply_sequence(const LabeledGraph& g, const ContractionSequence& s);

ValidityReport check_witness(const InstancePair& inst, const WitnessStructure& w);

// Leaf-first spanning-tree contraction order onto each representative.
ContractionSequence witness_to_sequence(const WitnessStructure& w, const LabeledGraph& g);

WitnessStructure sequence_to_witness(const InstancePair& inst, const ContractionSequence& s);

struct DegeneracyResult {
    int d = 0;
    std::vector<int> order; // removal order: each vertex has <= d neighbors later in order
};

DegeneracyResult degeneracy(const LabeledGraph& g);

// Proper coloring with at most degeneracy+1 colors (greedy along reverse degeneracy order).
std::map<int, int> greedy_coloring(const LabeledGraph& g);

LabeledGraph union_graph(const InstancePair& inst);

std::vector<std::set<int>> connected_components(const LabeledGraph& g);

// A component of G with no H vertex can never be covered by a witness class.
bool has_h_free_component(const InstancePair& inst);

} // namespace lc
