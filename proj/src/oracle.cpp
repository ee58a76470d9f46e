#include "lc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>

#ifdef LC_HAVE_OPENMP
#include <omp.h>
#endif

namespace lc {

namespace {

using Clock = std::chrono::steady_clock;

// Indexed view of an instance for the enumeration inner loop.
struct Compact {
    std::vector<int> gverts;          // sorted labels, index = position
    std::vector<int> classes;         // sorted V(H) labels
    std::vector<std::vector<int>> adj; // by G index
    std::vector<int> preset;          // G index -> class index or -1 (free)
    std::vector<int> free_idx;        // G indices of free vertices, ascending label
    std::vector<std::vector<bool>> eh; // class x class: E(H)

    explicit Compact(const InstancePair& inst) {
        gverts = inst.g.vertices();
        classes = inst.h.vertices();
        std::map<int, int> gpos, cpos;
        for (std::size_t i = 0; i < gverts.size(); ++i) gpos[gverts[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < classes.size(); ++i) cpos[classes[i]] = static_cast<int>(i);
        adj.resize(gverts.size());
        for (std::size_t i = 0; i < gverts.size(); ++i)
            for (int w : inst.g.neighbors(gverts[i])) adj[i].push_back(gpos[w]);
        preset.assign(gverts.size(), -1);
        for (std::size_t i = 0; i < gverts.size(); ++i) {
            auto it = cpos.find(gverts[i]);
            if (it != cpos.end()) preset[i] = it->second;
            else free_idx.push_back(static_cast<int>(i));
        }
        eh.assign(classes.size(), std::vector<bool>(classes.size(), false));
        for (auto [u, v] : inst.h.edges()) {
            eh[cpos[u]][cpos[v]] = true;
            eh[cpos[v]][cpos[u]] = true;
        }
    }

    std::size_t n() const { return gverts.size(); }
    std::size_t nh() const { return classes.size(); }
    std::size_t nfree() const { return free_idx.size(); }
};

struct SharedBudget {
    std::atomic<std::uint64_t> visits{0};
    std::uint64_t limit;
    Deadline deadline;
    std::atomic<bool> out_of_budget{false};
    std::atomic<bool> timed_out{false};

    explicit SharedBudget(const OracleOptions& o) : limit(o.budget), deadline(o.deadline) {}

    // charge a batch of steps; returns false once any limit tripped
    bool charge(std::uint64_t steps) {
        std::uint64_t total = visits.fetch_add(steps, std::memory_order_relaxed) + steps;
        if (total > limit) {
            out_of_budget.store(true, std::memory_order_relaxed);
            return false;
        }
        if (past(deadline)) {
            timed_out.store(true, std::memory_order_relaxed);
            return false;
        }
        return !out_of_budget.load(std::memory_order_relaxed) &&
               !timed_out.load(std::memory_order_relaxed);
    }
};

// Complete-assignment check: class connectivity plus exact adjacency relation.
bool leaf_valid(const Compact& c, const std::vector<int>& class_of) {
    std::size_t nh = c.nh();
    std::vector<std::vector<bool>> seen_adj(nh, std::vector<bool>(nh, false));
    for (std::size_t a = 0; a < c.n(); ++a)
        for (int b : c.adj[a])
            if (a < static_cast<std::size_t>(b) && class_of[a] != class_of[b])
                seen_adj[class_of[a]][class_of[b]] = seen_adj[class_of[b]][class_of[a]] = true;
    for (std::size_t i = 0; i < nh; ++i)
        for (std::size_t j = i + 1; j < nh; ++j)
            if (seen_adj[i][j] != c.eh[i][j]) return false;
    // connectivity of each class
    std::vector<std::vector<int>> members(nh);
    for (std::size_t i = 0; i < c.n(); ++i) members[class_of[i]].push_back(static_cast<int>(i));
    std::vector<int> mark(c.n(), 0);
    std::vector<int> stack;
    for (std::size_t cl = 0; cl < nh; ++cl) {
        if (members[cl].empty()) return false;
        stack.assign(1, members[cl][0]);
        mark[members[cl][0]] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : c.adj[x])
                if (class_of[y] == static_cast<int>(cl) && !mark[y]) {
                    mark[y] = 1;
                    ++reached;
                    stack.push_back(y);
                }
        }
        if (reached != members[cl].size()) return false;
    }
    return true;
}

struct DfsState {
    const Compact& c;
    bool prune;
    SharedBudget& budget;
    std::vector<int> class_of;
    std::uint64_t local_steps = 0;
    std::uint64_t partitions = 0;
    bool stopped = false; // budget or deadline tripped

    DfsState(const Compact& cc, bool pr, SharedBudget& b)
        : c(cc), prune(pr), budget(b), class_of(cc.preset) {}

    bool step() {
        if (++local_steps >= 1024) {
            if (!budget.charge(local_steps)) stopped = true;
            local_steps = 0;
        }
        return !stopped;
    }

    void flush() {
        if (local_steps) {
            if (!budget.charge(local_steps)) stopped = true;
            local_steps = 0;
        }
    }

    bool candidate_conflicts(int gi, int cls) const {
        for (int y : c.adj[gi]) {
            int cy = class_of[y];
            if (cy != -1 && cy != cls && !c.eh[cls][cy]) return true;
        }
        return false;
    }

    // assigns free vertices depth.. in counter order; true once a valid
    // complete partition is found (digits left in class_of)
    bool dfs(std::size_t depth) {
        if (depth == c.nfree()) {
            ++partitions;
            return leaf_valid(c, class_of);
        }
        int gi = c.free_idx[depth];
        for (std::size_t cls = 0; cls < c.nh(); ++cls) {
            if (!step()) return false;
            if (prune && candidate_conflicts(gi, static_cast<int>(cls))) continue;
            class_of[gi] = static_cast<int>(cls);
            if (dfs(depth + 1)) return true;
            if (stopped) return false;
            class_of[gi] = -1;
        }
        return false;
    }
};

WitnessStructure witness_from(const Compact& c, const std::vector<int>& class_of) {
    WitnessStructure w;
    for (int cls : c.classes) w.classes[cls];
    for (std::size_t i = 0; i < c.n(); ++i)
        w.classes[c.classes[class_of[i]]].insert(c.gverts[i]);
    return w;
}

} // namespace

SolveResult solve_bruteforce(const InstancePair& inst, const OracleOptions& opts) {
    auto start = Clock::now();
    SolveResult res;
    auto finish = [&](bool yes) {
        res.yes = yes;
        res.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        return res;
    };

    if (inst.h.vertex_count() == 0) return finish(inst.g.vertex_count() == 0);
    if (has_h_free_component(inst)) return finish(false);

    Compact c(inst);
    SharedBudget budget(opts);

    std::vector<int> winning;
    bool found = false;
    std::uint64_t partitions = 0;

    if (c.nfree() == 0 || opts.threads <= 1) {
        DfsState st(c, opts.prune, budget);
        found = st.dfs(0);
        partitions = st.partitions;
        if (found) winning = st.class_of;
        if (st.stopped) {
            if (budget.timed_out.load()) throw TimeoutError("bruteforce timed out");
            throw BudgetExceededError("bruteforce partition budget exceeded");
        }
    } else {
        // shard on the first counter digit; keep the lexicographically first hit
        int nh = static_cast<int>(c.nh());
        std::vector<std::vector<int>> hits(nh);
        std::vector<std::uint64_t> parts(nh, 0);
        std::atomic<int> best{nh};
#ifdef LC_HAVE_OPENMP
#pragma omp parallel for num_threads(opts.threads) schedule(dynamic, 1)
#endif
        for (int d0 = 0; d0 < nh; ++d0) {
            if (d0 > best.load(std::memory_order_relaxed)) continue;
            DfsState st(c, opts.prune, budget);
            int gi = c.free_idx[0];
            if (!(opts.prune && st.candidate_conflicts(gi, d0))) {
                st.class_of[gi] = d0;
                if (st.dfs(1)) {
                    hits[d0] = st.class_of;
                    int cur = best.load(std::memory_order_relaxed);
                    while (d0 < cur &&
                           !best.compare_exchange_weak(cur, d0, std::memory_order_relaxed)) {}
                }
            }
            st.flush();
            parts[d0] = st.partitions;
        }
        for (int d0 = 0; d0 < nh; ++d0) partitions += parts[d0];
        if (budget.timed_out.load()) throw TimeoutError("bruteforce timed out");
        if (budget.out_of_budget.load())
            throw BudgetExceededError("bruteforce partition budget exceeded");
        int b = best.load();
        if (b < nh) {
            found = true;
            winning = hits[b];
        }
    }

    res.stats.partitions_examined = partitions;
    if (found) {
        WitnessStructure w = witness_from(c, winning);
        ValidityReport check = check_witness(inst, w);
        if (!check.valid) throw Error("internal: enumerated witness failed check_witness");
        res.certificate = std::move(w);
    }
    return finish(found);
}

MaxCommonResult solve_maxcommon(const LabeledGraph& g, const LabeledGraph& h, int k,
                                const OracleOptions& opts) {
    if (k < 0) throw Error("k must be non-negative");
    auto start = Clock::now();
    MaxCommonResult res;
    auto finish = [&]() -> MaxCommonResult& {
        res.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        return res;
    };

    long ng = static_cast<long>(g.vertex_count());
    long nh = static_cast<long>(h.vertex_count());
    std::vector<int> hverts = h.vertices();

    long hi = std::min(ng, nh);
    for (long nprime = hi; nprime >= 1; --nprime) {
        if (ng + nh - 2 * nprime > k) break; // smaller n' only needs more contractions
        // choose representatives (vertices of h that survive), lexicographic order
        std::vector<int> pick(nprime);
        std::vector<long> idx(nprime);
        for (long i = 0; i < nprime; ++i) idx[i] = i;
        bool more = nh >= nprime;
        while (more) {
            if (past(opts.deadline)) throw TimeoutError("maxcommon timed out");
            for (long i = 0; i < nprime; ++i) pick[i] = hverts[idx[i]];
            bool reps_in_g = std::all_of(pick.begin(), pick.end(),
                                         [&](int r) { return g.has_vertex(r); });
            if (reps_in_g) {
                // assign the remaining h vertices to the picked classes
                std::vector<int> rest;
                std::set<int> picked(pick.begin(), pick.end());
                for (int v : hverts)
                    if (!picked.count(v)) rest.push_back(v);
                std::vector<int> digit(rest.size(), 0);
                bool carry = false;
                while (!carry) {
                    ++res.stats.partitions_examined;
                    WitnessStructure w;
                    for (int r : pick) w.classes[r].insert(r);
                    for (std::size_t i = 0; i < rest.size(); ++i)
                        w.classes[pick[digit[i]]].insert(rest[i]);
                    bool connected = true;
                    for (const auto& [rep, members] : w.classes) {
                        (void)rep;
                        // connectivity of the class within h
                        std::set<int> seen;
                        std::vector<int> stack{*members.begin()};
                        seen.insert(*members.begin());
                        while (!stack.empty()) {
                            int x = stack.back();
                            stack.pop_back();
                            for (int y : h.neighbors(x))
                                if (members.count(y) && seen.insert(y).second) stack.push_back(y);
                        }
                        if (seen.size() != members.size()) {
                            connected = false;
                            break;
                        }
                    }
                    if (connected) {
                        // derived candidate H': representatives plus class adjacency
                        LabeledGraph hp;
                        for (int r : pick) hp.add_vertex(r);
                        for (auto i = w.classes.begin(); i != w.classes.end(); ++i)
                            for (auto j = std::next(i); j != w.classes.end(); ++j) {
                                bool adj = false;
                                for (int a : i->second) {
                                    for (int b : h.neighbors(a))
                                        if (j->second.count(b)) {
                                            adj = true;
                                            break;
                                        }
                                    if (adj) break;
                                }
                                if (adj) hp.add_edge(i->first, j->first);
                            }
                        OracleOptions sub = opts;
                        SolveResult inner = solve_bruteforce(InstancePair(g, hp), sub);
                        res.stats.partitions_examined += inner.stats.partitions_examined;
                        if (inner.yes) {
                            res.yes = true;
                            res.seq_h = witness_to_sequence(w, h);
                            res.seq_g = witness_to_sequence(*inner.certificate, g);
                            res.common = std::move(hp);
                            return finish();
                        }
                    }
                    // next assignment (mixed radix, last digit fastest)
                    carry = true;
                    for (std::size_t i = rest.size(); i-- > 0;) {
                        if (++digit[i] < static_cast<int>(nprime)) {
                            carry = false;
                            break;
                        }
                        digit[i] = 0;
                    }
                    if (rest.empty()) carry = true;
                }
            }
            // next combination
            more = false;
            for (long i = nprime - 1; i >= 0; --i) {
                if (idx[i] < nh - (nprime - i)) {
                    ++idx[i];
                    for (long j = i + 1; j < nprime; ++j) idx[j] = idx[j - 1] + 1;
                    more = true;
                    break;
                }
            }
        }
    }
    return finish();
}

} // namespace lc
