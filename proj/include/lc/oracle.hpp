#pragma once

#include "lc/solve.hpp"

namespace lc {

struct OracleOptions {
    bool prune = true;             // --paper-faithful turns this off
    std::uint64_t budget = 100'000'000; // assignment steps before BudgetExceeded
    int threads = 1;               // >1 shards the counter space with OpenMP
    Deadline deadline;
};

// Exhaustive witness-partition enumeration: assigns each vertex of
// V(G)\V(H) to one of the |V(H)| classes via a mixed-radix counter and
// checks candidates. YES answers carry the lexicographically first witness
// regardless of thread count.
SolveResult solve_bruteforce(const InstancePair& inst, const OracleOptions& opts = {});

struct MaxCommonResult {
    bool yes = false;
    std::optional<LabeledGraph> common;
    std::optional<ContractionSequence> seq_g;
    std::optional<ContractionSequence> seq_h;
    SolveStats stats;
};

// Enumerates labeled contractions H' of h by witness-partition enumeration,
// then tests each as a labeled contraction of g.
MaxCommonResult solve_maxcommon(const LabeledGraph& g, const LabeledGraph& h, int k,
                                const OracleOptions& opts = {});

} // namespace lc
