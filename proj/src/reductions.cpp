#include "lc/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace lc {

namespace {

struct Tokens {
    std::istream& in;
    std::size_t lineno = 0;

    bool next(std::vector<std::string>& t) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            t.clear();
            std::string tok;
            while (ss >> tok) t.push_back(tok);
            if (t.empty() || t[0] == "c") continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const { throw ParseError(lineno, why); }

    long to_long(const std::string& tok) const {
        try {
            std::size_t pos = 0;
            long v = std::stol(tok, &pos);
            if (pos != tok.size()) fail("bad integer '" + tok + "'");
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            fail("bad integer '" + tok + "'");
        }
    }
};

} // namespace

CnfFormula read_dimacs(std::istream& in) {
    Tokens rd{in};
    std::vector<std::string> t;
    CnfFormula f;
    long want_clauses = -1;
    std::vector<int> lits;
    while (rd.next(t)) {
        if (t[0] == "p") {
            if (t.size() != 4 || t[1] != "cnf") rd.fail("expected 'p cnf <vars> <clauses>'");
            f.num_vars = static_cast<int>(rd.to_long(t[2]));
            want_clauses = rd.to_long(t[3]);
            if (f.num_vars < 0 || want_clauses < 0) rd.fail("negative header count");
            continue;
        }
        if (want_clauses < 0) rd.fail("clause line before 'p cnf' header");
        for (const std::string& tok : t) {
            long lit = rd.to_long(tok);
            if (lit == 0) {
                if (lits.size() != 3) rd.fail("expected exactly 3 literals per clause");
                f.clauses.push_back({lits[0], lits[1], lits[2]});
                lits.clear();
            } else {
                if (std::abs(lit) > f.num_vars) rd.fail("literal out of range");
                lits.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!lits.empty()) throw ParseError(rd.lineno, "unterminated clause");
    if (static_cast<long>(f.clauses.size()) != want_clauses)
        throw ParseError(rd.lineno, "clause count does not match header");
    return f;
}

CnfFormula read_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_dimacs(in);
}

SatResult sat_bruteforce(const CnfFormula& f, SatSemantics semantics) {
    if (f.num_vars > 24)
        throw TooManyVariablesError("sat_bruteforce limited to 24 variables, got " +
                                    std::to_string(f.num_vars));
    SatResult res;
    for (std::uint32_t mask = 0; mask < (1u << f.num_vars); ++mask) {
        bool ok = true;
        for (const auto& cl : f.clauses) {
            int t = 0;
            for (int lit : cl) {
                bool val = (mask >> (std::abs(lit) - 1)) & 1;
                if (lit < 0) val = !val;
                t += val ? 1 : 0;
            }
            bool good = semantics == SatSemantics::OneInThree ? t == 1
                        : semantics == SatSemantics::Nae      ? (t >= 1 && t <= 2)
                                                              : t >= 1;
            if (!good) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.sat = true;
            res.assignment.assign(f.num_vars + 1, false);
            for (int i = 1; i <= f.num_vars; ++i) res.assignment[i] = (mask >> (i - 1)) & 1;
            return res;
        }
    }
    return res;
}

namespace {

void require_positive_distinct(const CnfFormula& f) {
    if (f.num_vars < 1 || f.clauses.empty()) throw Error("formula must have variables and clauses");
    for (const auto& cl : f.clauses) {
        for (int lit : cl) {
            if (lit < 0) throw NegativeLiteralError("negative literal " + std::to_string(lit));
            if (lit == 0 || lit > f.num_vars) throw Error("literal out of range");
        }
        if (cl[0] == cl[1] || cl[0] == cl[2] || cl[1] == cl[2])
            throw Error("duplicate literal within a clause");
    }
}

} // namespace

InstancePair gen_from_1in3sat(const CnfFormula& f) {
    require_positive_distinct(f);
    OneInThreeLayout L;
    L.n = f.num_vars;
    L.m = static_cast<int>(f.clauses.size());

    LabeledGraph g, h;
    g.add_edge(L.g_true, L.g_false);
    h.add_edge(L.g_true, L.g_false);
    for (int i = 1; i <= L.n; ++i) {
        g.add_edge(L.u(i), L.v_pos(i));
        g.add_edge(L.u(i), L.v_neg(i));
        g.add_edge(L.v_pos(i), L.g_true);
        g.add_edge(L.v_pos(i), L.g_false);
        g.add_edge(L.v_neg(i), L.g_true);
        g.add_edge(L.v_neg(i), L.g_false);
        h.add_edge(L.u(i), L.g_true);
        h.add_edge(L.u(i), L.g_false);
    }
    for (int j = 1; j <= L.m; ++j) {
        const auto& cl = f.clauses[j - 1];
        int lv[3] = {L.v_pos(cl[0]), L.v_pos(cl[1]), L.v_pos(cl[2])};
        h.add_edge(L.w(j, 0), L.g_true);
        h.add_edge(L.w(j, 0), L.g_false);
        for (int k = 0; k < 3; ++k) g.add_edge(L.w(j, 0), lv[k]);
        for (int k = 1; k <= 3; ++k) {
            g.add_edge(L.w(j, k), L.g_true);
            h.add_edge(L.w(j, k), L.g_true);
            h.add_edge(L.w(j, k), L.g_false);
        }
        // alternating 6-cycle w1 - l1 - w2 - l2 - w3 - l3 - w1
        g.add_edge(L.w(j, 1), lv[0]);
        g.add_edge(L.w(j, 2), lv[0]);
        g.add_edge(L.w(j, 2), lv[1]);
        g.add_edge(L.w(j, 3), lv[1]);
        g.add_edge(L.w(j, 3), lv[2]);
        g.add_edge(L.w(j, 1), lv[2]);
        g.add_vertex(L.w(j, 0)); // ensure present even in degenerate cases
    }
    return InstancePair(std::move(g), std::move(h));
}

CnfFormula pad_nae(const CnfFormula& f) {
    CnfFormula out = f;
    auto is_pow2 = [](std::size_t x) { return x && (x & (x - 1)) == 0; };
    while (!is_pow2(2 * out.clauses.size() + 2)) out.clauses.push_back(out.clauses.back());
    return out;
}

namespace {

// deterministic labeling of the NAE construction; heap ids index the trees
struct NaeLayout {
    CnfFormula padded;
    int p = 0, q = 0, m = 0;
    std::vector<int> left, right; // heap id -> label
    std::vector<int> a, ap, c, cp; // 1-based clause gadget labels
    std::vector<int> u;            // 1-based variable labels
    int dq = -1, dqp = -1;

    int v(int i) const { return i - 1; } // path vertex v_i
};

NaeLayout nae_layout(const CnfFormula& f) {
    for (const auto& cl : f.clauses)
        for (int lit : cl)
            if (lit < 0) throw NegativeLiteralError("negative literal " + std::to_string(lit));
    if (f.num_vars < 1 || f.clauses.empty()) throw Error("formula must have variables and clauses");

    NaeLayout L;
    L.padded = pad_nae(f);
    L.m = static_cast<int>(L.padded.clauses.size());
    L.p = 2 * L.m + 2;
    L.q = 0;
    while ((1 << L.q) < L.p) ++L.q;

    std::vector<int> occ(L.padded.num_vars + 1, 0);
    for (const auto& cl : L.padded.clauses) {
        std::set<int> vars(cl.begin(), cl.end());
        for (int x : vars) ++occ[x];
    }
    for (int x = 1; x <= L.padded.num_vars; ++x)
        if (occ[x] > 4)
            throw VariableOccursTooOftenError("variable " + std::to_string(x) + " appears in " +
                                              std::to_string(occ[x]) + " clauses after padding");

    int heap_count = (1 << (L.q + 1));
    L.left.assign(heap_count, -1);
    L.right.assign(heap_count, -1);
    int next = L.p;

    auto leaf_pos = [&](int id) { return id - (1 << L.q); };
    // fixed path labels first
    L.left[1] = L.v(1);
    L.right[1] = L.v(L.p);
    for (int lvl = 1; lvl < L.q; ++lvl) {
        if (lvl + 1 <= L.p / 2 - 1) L.left[1 << lvl] = L.v(lvl + 1);
        if (L.p - lvl >= L.p / 2 + 2) L.right[1 << lvl] = L.v(L.p - lvl);
    }
    L.left[1 << L.q] = L.v(L.p / 2);      // leftmost leaf
    L.right[1 << L.q] = L.v(L.p / 2 + 1);
    // anonymous internals and the two anonymous leaves, heap order
    for (int lvl = 1; lvl <= L.q; ++lvl)
        for (int id = 1 << lvl; id < (1 << (lvl + 1)); ++id) {
            bool is_leaf = lvl == L.q;
            if (is_leaf && leaf_pos(id) >= 2) continue; // clause leaves labeled below
            if (L.left[id] == -1) L.left[id] = next++;
        }
    L.dq = L.left[(1 << L.q) + 1];
    for (int lvl = 1; lvl <= L.q; ++lvl)
        for (int id = 1 << lvl; id < (1 << (lvl + 1)); ++id) {
            bool is_leaf = lvl == L.q;
            if (is_leaf && leaf_pos(id) >= 2) continue;
            if (L.right[id] == -1) L.right[id] = next++;
        }
    L.dqp = L.right[(1 << L.q) + 1];
    // clause leaves: a before C keeps the enumeration-friendly label order
    L.a.assign(L.m + 1, -1);
    L.ap.assign(L.m + 1, -1);
    L.c.assign(L.m + 1, -1);
    L.cp.assign(L.m + 1, -1);
    for (int j = 1; j <= L.m; ++j) L.a[j] = next++;
    for (int j = 1; j <= L.m; ++j) L.ap[j] = next++;
    for (int j = 1; j <= L.m; ++j) L.c[j] = next++;
    for (int j = 1; j <= L.m; ++j) L.cp[j] = next++;
    for (int j = 1; j <= L.m; ++j) {
        L.left[(1 << L.q) + 2 + 2 * (j - 1)] = L.c[j];
        L.left[(1 << L.q) + 3 + 2 * (j - 1)] = L.a[j];
        L.right[(1 << L.q) + 2 + 2 * (j - 1)] = L.cp[j];
        L.right[(1 << L.q) + 3 + 2 * (j - 1)] = L.ap[j];
    }
    L.u.assign(L.padded.num_vars + 1, -1);
    for (int x = 1; x <= L.padded.num_vars; ++x) L.u[x] = next++;
    return L;
}

} // namespace

InstancePair gen_from_nae34sat(const CnfFormula& f) {
    NaeLayout L = nae_layout(f);
    LabeledGraph g, h;
    for (int i = 1; i < L.p; ++i) {
        g.add_edge(L.v(i), L.v(i + 1));
        h.add_edge(L.v(i), L.v(i + 1));
    }
    for (const auto* tree : {&L.left, &L.right}) {
        for (int id = 1; id < (1 << L.q); ++id) {
            g.add_edge((*tree)[id], (*tree)[2 * id]);
            g.add_edge((*tree)[id], (*tree)[2 * id + 1]);
        }
        // same-level paths keep each tree level contractible onto its path vertex
        for (int lvl = 1; lvl < L.q; ++lvl)
            for (int id = 1 << lvl; id + 1 < (1 << (lvl + 1)); ++id)
                g.add_edge((*tree)[id], (*tree)[id + 1]);
    }
    g.add_edge(L.v(L.p / 2), L.dq);
    g.add_edge(L.v(L.p / 2 + 1), L.dqp);
    g.add_edge(L.dq, L.dqp);
    for (int j = 1; j + 1 <= L.m; ++j) {
        g.add_edge(L.a[j], L.a[j + 1]);
        g.add_edge(L.ap[j], L.ap[j + 1]);
    }
    g.add_edge(L.a[1], L.v(L.p / 2));
    g.add_edge(L.ap[1], L.v(L.p / 2 + 1));
    for (int j = 1; j <= L.m; ++j) g.add_edge(L.c[j], L.cp[j]);
    for (int j = 1; j <= L.m; ++j) {
        std::set<int> vars(L.padded.clauses[j - 1].begin(), L.padded.clauses[j - 1].end());
        for (int x : vars) {
            g.add_edge(L.u[x], L.c[j]);
            g.add_edge(L.u[x], L.a[j]);
            g.add_edge(L.u[x], L.cp[j]);
            g.add_edge(L.u[x], L.ap[j]);
        }
    }
    return InstancePair(std::move(g), std::move(h));
}

ContractionSequence certificate_from_assignment(const CnfFormula& f,
                                                const std::vector<bool>& assignment,
                                                CertFamily which) {
    auto value = [&](int var) {
        if (var <= 0 || static_cast<std::size_t>(var) >= assignment.size())
            throw Error("assignment does not cover variable " + std::to_string(var));
        return assignment[var];
    };
    ContractionSequence seq;
    if (which == CertFamily::OneInThree) {
        require_positive_distinct(f);
        for (const auto& cl : f.clauses) {
            int t = value(cl[0]) + value(cl[1]) + value(cl[2]);
            if (t != 1)
                throw AssignmentDoesNotSatisfyError("clause does not have exactly one true literal");
        }
        OneInThreeLayout L;
        L.n = f.num_vars;
        L.m = static_cast<int>(f.clauses.size());
        for (int i = 1; i <= L.n; ++i) {
            if (value(i)) {
                seq.pairs.emplace_back(L.g_true, L.v_pos(i));
                seq.pairs.emplace_back(L.g_false, L.v_neg(i));
            } else {
                seq.pairs.emplace_back(L.g_false, L.v_pos(i));
                seq.pairs.emplace_back(L.g_true, L.v_neg(i));
            }
        }
        return seq;
    }

    NaeLayout L = nae_layout(f);
    for (const auto& cl : L.padded.clauses) {
        int t = value(cl[0]) + value(cl[1]) + value(cl[2]);
        if (t == 0 || t == 3)
            throw AssignmentDoesNotSatisfyError("clause violates the not-all-equal condition");
    }
    // collapse the anonymous tree levels onto their path vertices
    for (const auto* tree : {&L.left, &L.right}) {
        bool is_left = tree == &L.left;
        for (int lvl = 1; lvl < L.q; ++lvl) {
            int target = is_left ? L.v(lvl + 1) : L.v(L.p - lvl);
            for (int id = 1 << lvl; id < (1 << (lvl + 1)); ++id)
                if ((*tree)[id] != target) seq.pairs.emplace_back(target, (*tree)[id]);
        }
    }
    seq.pairs.emplace_back(L.v(L.p / 2), L.dq);
    seq.pairs.emplace_back(L.v(L.p / 2 + 1), L.dqp);
    // variable choices encode the assignment
    for (int x = 1; x <= L.padded.num_vars; ++x) {
        int j = 0;
        for (int jj = 1; jj <= L.m && j == 0; ++jj) {
            const auto& cl = L.padded.clauses[jj - 1];
            if (cl[0] == x || cl[1] == x || cl[2] == x) j = jj;
        }
        if (j == 0) continue; // variable unused after padding
        seq.pairs.emplace_back(value(x) ? L.a[j] : L.ap[j], L.u[x]);
    }
    for (int j = 1; j <= L.m; ++j) seq.pairs.emplace_back(L.v(L.p / 2), L.a[j]);
    for (int j = 1; j <= L.m; ++j) seq.pairs.emplace_back(L.v(L.p / 2), L.c[j]);
    for (int j = 1; j <= L.m; ++j) seq.pairs.emplace_back(L.v(L.p / 2 + 1), L.ap[j]);
    for (int j = 1; j <= L.m; ++j) seq.pairs.emplace_back(L.v(L.p / 2 + 1), L.cp[j]);
    return seq;
}

void validate_crossmatching(const CrossMatchingInstance& cm) {
    if (cm.side_a.size() != cm.side_b.size())
        throw InvalidPartitionError("sides must have equal size");
    std::size_t total = 0;
    for (int v : cm.graph.vertices()) {
        bool a = cm.side_a.count(v), b = cm.side_b.count(v);
        if (a == b) throw InvalidPartitionError("vertex " + std::to_string(v) +
                                                " must be in exactly one side");
        ++total;
    }
    if (total != cm.side_a.size() + cm.side_b.size())
        throw InvalidPartitionError("sides must partition the vertex set");
}

CrossMatchingInstance read_crossmatching(std::istream& in) {
    Tokens rd{in};
    std::vector<std::string> t;
    if (!rd.next(t) || t.size() != 3 || t[0] != "p" || t[1] != "cm")
        throw ParseError(rd.lineno, "expected 'p cm <m>' header");
    long m = rd.to_long(t[2]);
    CrossMatchingInstance cm;
    if (!rd.next(t) || t[0] != "a") throw ParseError(rd.lineno, "expected 'a <labels...>'");
    for (std::size_t i = 1; i < t.size(); ++i) {
        int v = static_cast<int>(rd.to_long(t[i]));
        cm.side_a.insert(v);
        cm.graph.add_vertex(v);
    }
    if (!rd.next(t) || t[0] != "b") throw ParseError(rd.lineno, "expected 'b <labels...>'");
    for (std::size_t i = 1; i < t.size(); ++i) {
        int v = static_cast<int>(rd.to_long(t[i]));
        cm.side_b.insert(v);
        cm.graph.add_vertex(v);
    }
    for (long i = 0; i < m; ++i) {
        if (!rd.next(t) || t.size() != 3 || t[0] != "e")
            throw ParseError(rd.lineno, "expected 'e <u> <v>'");
        cm.graph.add_edge(static_cast<int>(rd.to_long(t[1])), static_cast<int>(rd.to_long(t[2])));
    }
    validate_crossmatching(cm);
    return cm;
}

CrossMatchingInstance read_crossmatching_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_crossmatching(in);
}

InstancePair gen_from_crossmatching(const CrossMatchingInstance& cm, int* x1_out, int* x2_out) {
    validate_crossmatching(cm);
    int mx = -1;
    for (int v : cm.graph.vertices()) mx = std::max(mx, v);
    int x1 = mx + 1, x2 = mx + 2;
    if (x1_out) *x1_out = x1;
    if (x2_out) *x2_out = x2;
    LabeledGraph g = cm.graph;
    for (int b : cm.side_b) {
        g.add_edge(x1, b);
        g.add_edge(x2, b);
    }
    LabeledGraph h;
    std::vector<int> core(cm.side_a.begin(), cm.side_a.end());
    core.push_back(x1);
    core.push_back(x2);
    for (int v : core) h.add_vertex(v);
    for (std::size_t i = 0; i < core.size(); ++i)
        for (std::size_t j = i + 1; j < core.size(); ++j)
            if (!(core[i] == x1 && core[j] == x2)) h.add_edge(core[i], core[j]);
    return InstancePair(std::move(g), std::move(h));
}

void validate_pvc(const PvcInstance& p) {
    if (p.partition.size() != p.budgets.size())
        throw InvalidPartitionError("need one budget per part");
    if (p.partition.empty()) throw InvalidPartitionError("partition must be non-empty");
    std::map<int, int> part_of;
    for (std::size_t i = 0; i < p.partition.size(); ++i) {
        if (p.partition[i].empty()) throw InvalidPartitionError("empty part");
        for (int v : p.partition[i]) {
            if (!p.graph.has_vertex(v))
                throw InvalidPartitionError("part member " + std::to_string(v) + " not in graph");
            if (!part_of.emplace(v, static_cast<int>(i)).second)
                throw InvalidPartitionError("vertex " + std::to_string(v) + " in two parts");
        }
        if (p.budgets[i] < 0) throw InvalidPartitionError("negative budget");
    }
    for (int v : p.graph.vertices()) {
        if (!part_of.count(v)) throw InvalidPartitionError("vertex not covered by the partition");
        if (p.graph.neighbors(v).size() > 3)
            throw InvalidPartitionError("graph is not sub-cubic at " + std::to_string(v));
    }
    std::size_t t = p.partition.size();
    std::vector<std::vector<int>> between(t, std::vector<int>(t, 0));
    for (auto [u, v] : p.graph.edges()) {
        int pu = part_of[u], pv = part_of[v];
        if (pu == pv)
            throw InvalidPartitionError("part containing " + std::to_string(u) +
                                        " is not independent");
        ++between[pu][pv];
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j)
            if (between[i][j] + between[j][i] != 1)
                throw InvalidPartitionError("parts " + std::to_string(i) + "," + std::to_string(j) +
                                            " must share exactly one edge");
}

PvcInstance read_pvc(std::istream& in) {
    Tokens rd{in};
    std::vector<std::string> t;
    if (!rd.next(t) || t.size() != 5 || t[0] != "p" || t[1] != "pvc")
        throw ParseError(rd.lineno, "expected 'p pvc <n> <m> <t>' header");
    long n = rd.to_long(t[2]), m = rd.to_long(t[3]), parts = rd.to_long(t[4]);
    PvcInstance p;
    for (long i = 0; i < n; ++i) {
        if (!rd.next(t) || t.size() != 2 || t[0] != "v")
            throw ParseError(rd.lineno, "expected 'v <label>'");
        p.graph.add_vertex(static_cast<int>(rd.to_long(t[1])));
    }
    for (long i = 0; i < m; ++i) {
        if (!rd.next(t) || t.size() != 3 || t[0] != "e")
            throw ParseError(rd.lineno, "expected 'e <u> <v>'");
        p.graph.add_edge(static_cast<int>(rd.to_long(t[1])), static_cast<int>(rd.to_long(t[2])));
    }
    for (long i = 0; i < parts; ++i) {
        if (!rd.next(t) || t.size() < 3 || t[0] != "part")
            throw ParseError(rd.lineno, "expected 'part <i> <members...>'");
        if (rd.to_long(t[1]) != i + 1) throw ParseError(rd.lineno, "parts must appear in order");
        std::vector<int> members;
        for (std::size_t j = 2; j < t.size(); ++j)
            members.push_back(static_cast<int>(rd.to_long(t[j])));
        p.partition.push_back(std::move(members));
    }
    if (!rd.next(t) || t[0] != "budget" || t.size() != static_cast<std::size_t>(parts) + 1)
        throw ParseError(rd.lineno, "expected 'budget <k1> ... <kt>'");
    for (long i = 0; i < parts; ++i)
        p.budgets.push_back(static_cast<int>(rd.to_long(t[i + 1])));
    validate_pvc(p);
    return p;
}

PvcInstance read_pvc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_pvc(in);
}

InstancePair gen_from_pvc(const PvcInstance& p, PvcLayout* layout_out) {
    validate_pvc(p);
    std::size_t t = p.partition.size();
    int next = 0;
    for (int v : p.graph.vertices()) next = std::max(next, v + 1);

    PvcLayout L;
    L.x.resize(t);
    L.y.resize(t);
    L.z.resize(t);
    L.s.resize(t);
    L.s_subset.resize(t);
    for (std::size_t i = 0; i < t; ++i) {
        L.x[i] = next++;
        L.y[i] = next++;
        L.z[i] = next++;
    }

    LabeledGraph g; // G'
    for (int v : p.graph.vertices()) g.add_vertex(v);
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<int> part = p.partition[i];
        std::sort(part.begin(), part.end());
        for (int v : part) {
            g.add_edge(L.x[i], v);
            g.add_edge(L.y[i], v);
            g.add_edge(L.z[i], v);
        }
        g.add_edge(L.z[i], L.x[i]);
        g.add_edge(L.z[i], L.y[i]);
        // subset vertices: one per (k_i+1)-subset of the part, lex order
        int need = p.budgets[i] + 1;
        if (need <= static_cast<int>(part.size())) {
            std::vector<int> idx(need);
            for (int j = 0; j < need; ++j) idx[j] = j;
            while (true) {
                int s = next++;
                L.s[i].push_back(s);
                std::vector<int> members;
                for (int j : idx) members.push_back(part[j]);
                L.s_subset[i].push_back(members);
                for (int v : members) g.add_edge(s, v);
                g.add_edge(s, L.x[i]);
                int pos = need - 1;
                while (pos >= 0 && idx[pos] == static_cast<int>(part.size()) - (need - pos)) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (int j = pos + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    // encode the original edges
    std::map<int, int> part_of;
    for (std::size_t i = 0; i < t; ++i)
        for (int v : p.partition[i]) part_of[v] = static_cast<int>(i);
    for (auto [u, v] : p.graph.edges()) {
        int pu = part_of[u], pv = part_of[v];
        g.add_edge(u, L.x[pv]);
        g.add_edge(v, L.x[pu]);
    }
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            if (i < j) g.add_edge(L.y[i], L.y[j]);
            g.add_edge(L.x[i], L.y[j]);
        }

    // H' keeps everything except the original vertices, with the x-side
    // completed into a clique and subset vertices tied to y_i
    LabeledGraph h;
    for (std::size_t i = 0; i < t; ++i) {
        h.add_edge(L.z[i], L.x[i]);
        h.add_edge(L.z[i], L.y[i]);
        for (std::size_t k = 0; k < L.s[i].size(); ++k) {
            h.add_edge(L.s[i][k], L.x[i]);
            h.add_edge(L.s[i][k], L.y[i]);
        }
    }
    std::vector<int> xy;
    for (std::size_t i = 0; i < t; ++i) {
        xy.push_back(L.x[i]);
        xy.push_back(L.y[i]);
    }
    for (std::size_t i = 0; i < xy.size(); ++i)
        for (std::size_t j = i + 1; j < xy.size(); ++j) h.add_edge(xy[i], xy[j]);

    if (layout_out) *layout_out = L;
    return InstancePair(std::move(g), std::move(h));
}

ContractionSequence pvc_certificate(const PvcInstance& p, const std::set<int>& cover) {
    PvcLayout L;
    gen_from_pvc(p, &L); // recompute the deterministic labels
    ContractionSequence seq;
    for (std::size_t i = 0; i < p.partition.size(); ++i) {
        std::vector<int> part = p.partition[i];
        std::sort(part.begin(), part.end());
        int in_cover = 0;
        for (int v : part)
            if (cover.count(v)) ++in_cover;
        if (in_cover > p.budgets[i])
            throw AssignmentDoesNotSatisfyError("cover exceeds the budget of part " +
                                                std::to_string(i + 1));
        for (int v : part)
            seq.pairs.emplace_back(cover.count(v) ? L.x[i] : L.y[i], v);
    }
    for (auto [u, v] : p.graph.edges())
        if (!cover.count(u) && !cover.count(v))
            throw AssignmentDoesNotSatisfyError("not a vertex cover");
    return seq;
}

RandomInstance gen_random(int n, int k, std::uint64_t seed, RandomMode mode) {
    if (n < 2 || k < 1 || k >= n) throw Error("need 1 <= k < n and n >= 2");
    std::mt19937_64 rng(seed);
    auto below = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };

    LabeledGraph g;
    g.add_vertex(0);
    for (int v = 1; v < n; ++v) g.add_edge(v, below(v)); // random attachment tree
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) && (rng() & 3) == 0) g.add_edge(u, v);

    LabeledGraph h = g;
    ContractionSequence seq;
    for (int step = 0; step < k; ++step) {
        auto edges = h.edges();
        auto [u, v] = edges[below(edges.size())];
        if (rng() & 1) std::swap(u, v);
        seq.pairs.emplace_back(u, v);
        h = contract_edge(h, u, v);
    }
    if (mode == RandomMode::Yes)
        return RandomInstance{InstancePair(std::move(g), std::move(h)), std::move(seq)};

    auto hv = h.vertices();
    if (hv.size() >= 2) {
        int a = hv[below(hv.size())];
        int b = a;
        while (b == a) b = hv[below(hv.size())];
        if (h.has_edge(a, b)) h.remove_edge(a, b);
        else h.add_edge(a, b);
    }
    return RandomInstance{InstancePair(std::move(g), std::move(h)), std::nullopt};
}

} // namespace lc
