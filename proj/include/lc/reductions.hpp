#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lc/graph.hpp"

namespace lc {

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses; // signed 1-based variable indices
};

CnfFormula read_dimacs(std::istream& in);
CnfFormula read_dimacs_file(const std::string& path);

enum class SatSemantics { OneInThree, Nae, Vanilla };

struct SatResult {
    bool sat = false;
    std::vector<bool> assignment; // 1-based; index 0 unused
};

// exhaustive assignment search, num_vars <= 24
SatResult sat_bruteforce(const CnfFormula& f, SatSemantics semantics);

// ---- 1-in-3-SAT reduction (positive literals, distinct variables per clause)

// deterministic label layout shared by the generator and the certificate
struct OneInThreeLayout {
    int g_true = 0, g_false = 1;
    int n = 0, m = 0;
    int u(int i) const { return 2 + 3 * (i - 1); }        // variable vertex, i in [1,n]
    int v_pos(int i) const { return 3 + 3 * (i - 1); }    // positive literal
    int v_neg(int i) const { return 4 + 3 * (i - 1); }    // negated literal
    int w(int j, int k) const { return 2 + 3 * n + 4 * (j - 1) + k; } // clause, k in [0,3]
};

InstancePair gen_from_1in3sat(const CnfFormula& f);

// ---- Positive-NAE-(3,4)-SAT reduction

// duplicates the last clause until 2m+2 is a power of two
CnfFormula pad_nae(const CnfFormula& f);

InstancePair gen_from_nae34sat(const CnfFormula& f);

enum class CertFamily { OneInThree, Nae34 };

// the paper's forward-direction contraction sequence for a satisfying assignment
ContractionSequence certificate_from_assignment(const CnfFormula& f,
                                                const std::vector<bool>& assignment,
                                                CertFamily which);

// ---- Cross Matching reduction

struct CrossMatchingInstance {
    LabeledGraph graph;
    std::set<int> side_a;
    std::set<int> side_b;
};

void validate_crossmatching(const CrossMatchingInstance& cm); // throws InvalidPartitionError
CrossMatchingInstance read_crossmatching(std::istream& in);
CrossMatchingInstance read_crossmatching_file(const std::string& path);

// G' plus x1,x2 adjacent to all of B; H complete on A+{x1,x2} minus (x1,x2).
// The two new labels are returned through x1/x2 when requested.
InstancePair gen_from_crossmatching(const CrossMatchingInstance& cm, int* x1 = nullptr,
                                    int* x2 = nullptr);

// ---- Sub-Cubic Partitioned Vertex Cover reduction

struct PvcInstance {
    LabeledGraph graph; // sub-cubic
    std::vector<std::vector<int>> partition;
    std::vector<int> budgets;
};

void validate_pvc(const PvcInstance& p); // throws InvalidPartitionError
PvcInstance read_pvc(std::istream& in);
PvcInstance read_pvc_file(const std::string& path);

struct PvcLayout {
    std::vector<int> x, y, z;            // per part
    std::vector<std::vector<int>> s;     // subset vertices per part
    std::vector<std::vector<std::vector<int>>> s_subset; // members of each subset
};

InstancePair gen_from_pvc(const PvcInstance& p, PvcLayout* layout = nullptr);

// forward certificate from a PVC solution X (vertex cover within budgets)
ContractionSequence pvc_certificate(const PvcInstance& p, const std::set<int>& cover);

// ---- random instances

struct RandomInstance {
    InstancePair inst;
    std::optional<ContractionSequence> certificate; // yes-mode only
};

enum class RandomMode { Yes, Perturbed };

// deterministic in seed; yes-mode instances are contractible by construction
RandomInstance gen_random(int n, int k, std::uint64_t seed, RandomMode mode);

} // namespace lc
