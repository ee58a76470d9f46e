#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "lc/graph.hpp"

namespace lc {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline bool past(const Deadline& d) {
    return d && std::chrono::steady_clock::now() >= *d;
}

struct SolveStats {
    std::uint64_t partitions_examined = 0; // oracle: complete partitions checked
    std::uint64_t nodes_explored = 0;      // branch
    int max_branching = 0;                 // branch
    int depth = 0;                         // branch
    int colors_used = 0;                   // branch
    std::size_t max_table_size = 0;        // twdp
    std::size_t table_count = 0;           // twdp: number of dp nodes
    double elapsed_ms = 0.0;
};

struct SolveResult {
    bool yes = false;
    std::optional<WitnessStructure> certificate;
    SolveStats stats;
};

} // namespace lc
