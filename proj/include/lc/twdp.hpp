#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lc/decomposition.hpp"
#include "lc/solve.hpp"

namespace lc {

struct TwdpOptions {
    int threads = 1;                        // >1 parallelizes join-node pair enumeration
    bool tau_quotient = false;              // dedup states by H-twin class of sealed originators
    std::size_t table_budget = 50'000'000;  // total stored signatures
    Deadline deadline;
    std::ostream* trace = nullptr;          // per-node table dump
};

// DP state over a bag. Parent and originator information is kept per bag
// slot; requirement tracking is keyed by originator pairs (pending) and
// realized adjacency facts (adj) whose endpoints are either unresolved
// component roots (bag slots) or H vertices (class level).
struct Signature {
    static constexpr std::int8_t kExplorer = -1;
    static constexpr std::int8_t kResolved = -2;

    std::vector<std::int8_t> parent; // per slot: kExplorer, kResolved, or root slot
    std::vector<std::int16_t> tau;   // per slot: H index or -1
    std::vector<std::pair<std::int16_t, std::int16_t>> adj;     // sorted encoded pairs
    std::vector<std::pair<std::int16_t, std::int16_t>> pending; // sorted H-index pairs

    // adjacency endpoint encoding: slot s >= 0; H class h as -(h+1)
    static std::int16_t enc_class(int h) { return static_cast<std::int16_t>(-(h + 1)); }
    static bool is_class(std::int16_t e) { return e < 0; }
    static int class_of(std::int16_t e) { return -e - 1; }

    auto operator<=>(const Signature&) const = default;
    bool operator==(const Signature&) const = default;
};

struct Provenance {
    enum Tag : std::int8_t {
        Leaf,
        FromChild,      // introduce vertex / forget / edge no-op
        EdgeKeep,       // introduce edge, no merge
        EdgeMergeBintoA, // node's v-component merged under u
        EdgeMergeAintoB,
        Join
    };
    Tag tag = Leaf;
    std::int32_t c1 = -1;
    std::int32_t c2 = -1;
};

struct DPTable {
    std::vector<int> bag;                // sorted labels
    std::vector<std::uint64_t> seen_h;   // bitmask over H indices introduced below
    std::vector<Signature> sigs;
    std::vector<Provenance> prov;        // parallel to sigs

    std::size_t size() const { return sigs.size(); }
};

class TwdpSolver {
public:
    TwdpSolver(const InstancePair& inst, const NiceTreeDecomposition& ntd,
               TwdpOptions opts = {});

    SolveResult solve();

    // node-type transitions, exposed for direct testing; tables carry their bag
    DPTable transition_leaf() const;
    DPTable transition_introduce_vertex(const DPTable& child, int x) const;
    DPTable transition_forget(const DPTable& child, int x) const;
    DPTable transition_introduce_edge(const DPTable& child, int u, int v) const;
    DPTable transition_join(const DPTable& left, const DPTable& right) const;

    // spec-vocabulary rendering of one signature: sigma, tau, R, A
    std::string render(const DPTable& table, const Signature& s) const;

    int h_index(int label) const;
    int h_label(int index) const { return hlabels_[index]; }

private:
    struct Candidate {
        Signature sig;
        Provenance prov;
    };

    const InstancePair& inst_;
    const NiceTreeDecomposition& ntd_;
    TwdpOptions opts_;
    std::vector<int> hlabels_;
    std::map<int, int> hpos_;
    std::vector<std::vector<bool>> eh_;
    std::vector<int> twin_; // H index -> twin class id (equal H neighborhoods)
    mutable std::size_t stored_ = 0; // budget bookkeeping across transitions

    bool seen(const DPTable& t, int hidx) const {
        return (t.seen_h[hidx / 64] >> (hidx % 64)) & 1;
    }
    static void set_seen(DPTable& t, int hidx) { t.seen_h[hidx / 64] |= 1ull << (hidx % 64); }

    bool viable(const Signature& s) const;
    std::string dedup_key(const DPTable& t, const Signature& s) const;
    void finalize(DPTable& t, std::vector<Candidate>&& cands) const;
    void resolve_component(Signature& s, int root_slot, int hidx, bool& reject) const;

    WitnessStructure replay_certificate(const std::vector<DPTable>& tables) const;
};

// Convenience wrapper: runs the DP bottom-up and reports per-node table sizes.
SolveResult solve_twdp(const InstancePair& inst, const NiceTreeDecomposition& ntd,
                       const TwdpOptions& opts = {});

} // namespace lc
