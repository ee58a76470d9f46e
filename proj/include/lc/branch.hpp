#pragma once

#include <map>
#include <set>

#include "lc/solve.hpp"

namespace lc {

enum class ColoringMode { Greedy, Exact };
enum class OrderStrategy { Frontier, Label };

struct BranchConfig {
    ColoringMode coloring_mode = ColoringMode::Greedy; // Exact only for |V(H)| <= 20
    std::uint64_t node_budget = 50'000'000;
    OrderStrategy order_strategy = OrderStrategy::Frontier;
    int threads = 1; // >1 explores the root's candidate branches in parallel
    Deadline deadline;
};

// Branch on the class assignment of each vertex of V(G)\V(H). Candidates are
// filtered by adjacency consistency and class reachability; complete
// assignments are validated with check_witness.
SolveResult solve_branch(const InstancePair& inst, const BranchConfig& cfg = {});

// Candidate classes for assigning x given a partial assignment
// (x in V(G)\V(H), unassigned; partial maps assigned non-H vertices to
// H-vertices). Exposed for direct testing.
std::set<int> candidate_targets(int x, const std::map<int, int>& partial,
                                const std::map<int, int>& coloring, const InstancePair& inst);

// Minimum proper coloring; intended for |V(H)| <= 20.
std::map<int, int> exact_coloring(const LabeledGraph& g);

} // namespace lc
