#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "lc/graph.hpp"

namespace lc {

// Rooted tree decomposition: node 0..n-1, parent[root] == -1.
struct TreeDecomposition {
    std::vector<std::set<int>> bags;
    std::vector<int> parent;
    int root = 0;

    int width() const;
};

// vertex coverage, edge coverage, occurrence-subtree connectivity; report.width set
ValidityReport validate(const TreeDecomposition& td, const LabeledGraph& g);

// min-fill elimination ordering, ties by min degree then smallest label
TreeDecomposition heuristic_decompose(const LabeledGraph& g);

TreeDecomposition single_bag_decomposition(const LabeledGraph& g);

// every bag duplicated along a chain; used for redundancy-invariance checks
TreeDecomposition duplicate_bags(const TreeDecomposition& td);

enum class NodeKind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    int child1 = -1;
    int child2 = -1;       // only for Join
    int x = -1;            // IntroduceVertex / Forget
    int u = -1, v = -1;    // IntroduceEdge, u < v
    std::vector<int> bag;  // sorted labels
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes; // indices are ids; children precede parents
    int root = -1;

    int width() const;
};

// Equivalent nice decomposition of the same width. Every edge of g is
// introduced at exactly one IntroduceEdge node, immediately below the lowest
// Forget of either endpoint; same-spot edges ordered lexicographically.
NiceTreeDecomposition nicify(const TreeDecomposition& td, const LabeledGraph& g);

ValidityReport validate_nice(const NiceTreeDecomposition& ntd, const LabeledGraph& g);

// PACE-2017 .td format. Vertex ids in the file are 1-based positions into
// vertex_order (the instance's G-vertex list in file order).
void write_pace_td(std::ostream& out, const TreeDecomposition& td,
                   const std::vector<int>& vertex_order);
TreeDecomposition read_pace_td(std::istream& in, const std::vector<int>& vertex_order);
void write_pace_td_file(const std::string& path, const TreeDecomposition& td,
                        const std::vector<int>& vertex_order);
TreeDecomposition read_pace_td_file(const std::string& path,
                                    const std::vector<int>& vertex_order);

} // namespace lc
