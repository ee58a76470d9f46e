#include "lc/branch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>

#ifdef LC_HAVE_OPENMP
#include <omp.h>
#endif

namespace lc {

namespace {

using Clock = std::chrono::steady_clock;

struct View {
    std::vector<int> gverts;
    std::vector<int> classes;
    std::vector<std::vector<int>> adj;
    std::vector<int> preset; // G index -> class index or -1
    std::vector<int> free_idx;
    std::vector<std::vector<bool>> eh;
    std::map<int, int> gpos;

    explicit View(const InstancePair& inst) {
        gverts = inst.g.vertices();
        classes = inst.h.vertices();
        std::map<int, int> cpos;
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
};

struct Search {
    const View& view;
    const InstancePair& inst;
    const BranchConfig& cfg;
    std::vector<int> class_of;
    std::size_t unassigned;
    std::uint64_t nodes = 0;
    int max_branch = 0;
    int max_depth = 0;
    std::vector<int> found; // complete assignment when successful

    Search(const View& v, const InstancePair& in, const BranchConfig& c)
        : view(v), inst(in), cfg(c), class_of(v.preset), unassigned(v.free_idx.size()) {}

    // smallest-label unassigned vertex adjacent to an assigned one (frontier),
    // or simply smallest-label unassigned (label order)
    int pick_vertex() const {
        for (int gi : view.free_idx) {
            if (class_of[gi] != -1) continue;
            if (cfg.order_strategy == OrderStrategy::Label) return gi;
            for (int y : view.adj[gi])
                if (class_of[y] != -1) return gi;
        }
        return -1;
    }

    bool conflicts(int gi, int cls) const {
        for (int y : view.adj[gi]) {
            int cy = class_of[y];
            if (cy != -1 && cy != cls && !view.eh[cls][cy]) return true;
        }
        return false;
    }

    // classes of assigned vertices adjacent to the free region around x
    std::vector<bool> reachable_classes(int x) const {
        std::vector<bool> reach(view.classes.size(), false);
        std::vector<int> stack{x};
        std::vector<bool> seen(view.gverts.size(), false);
        seen[x] = true;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int y : view.adj[a]) {
                if (class_of[y] != -1) reach[class_of[y]] = true;
                else if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        return reach;
    }

    std::vector<int> candidates(int gi) const {
        std::vector<int> out;
        std::vector<bool> reach = reachable_classes(gi);
        for (std::size_t cls = 0; cls < view.classes.size(); ++cls)
            if (reach[cls] && !conflicts(gi, static_cast<int>(cls)))
                out.push_back(static_cast<int>(cls));
        return out;
    }

    bool leaf_ok() {
        WitnessStructure w;
        for (std::size_t i = 0; i < view.classes.size(); ++i) w.classes[view.classes[i]];
        for (std::size_t i = 0; i < view.gverts.size(); ++i)
            w.classes[view.classes[class_of[i]]].insert(view.gverts[i]);
        return check_witness(inst, w).valid;
    }

    bool dfs(int depth) {
        ++nodes;
        if (nodes > cfg.node_budget) throw BudgetExceededError("branch node budget exceeded");
        if ((nodes & 1023) == 0 && past(cfg.deadline)) throw TimeoutError("branch timed out");
        max_depth = std::max(max_depth, depth);
        if (unassigned == 0) {
            if (leaf_ok()) {
                found = class_of;
                return true;
            }
            return false;
        }
        int gi = pick_vertex();
        if (gi == -1) return false; // free vertex unreachable from any class
        std::vector<int> cand = candidates(gi);
        max_branch = std::max(max_branch, static_cast<int>(cand.size()));
        for (int cls : cand) {
            class_of[gi] = cls;
            --unassigned;
            if (dfs(depth + 1)) return true;
            class_of[gi] = -1;
            ++unassigned;
        }
        return false;
    }
};

} // namespace

std::map<int, int> exact_coloring(const LabeledGraph& g) {
    if (g.vertex_count() > 20)
        throw Error("exact coloring limited to 20 vertices, got " +
                    std::to_string(g.vertex_count()));
    std::vector<int> verts = g.vertices();
    // order by degree, highest first, for earlier conflicts
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) {
        return g.neighbors(a).size() > g.neighbors(b).size();
    });
    std::map<int, int> best;
    for (std::size_t ncolors = verts.empty() ? 0 : 1;; ++ncolors) {
        std::map<int, int> color;
        auto assign = [&](auto&& self, std::size_t i) -> bool {
            if (i == verts.size()) return true;
            int v = verts[i];
            for (std::size_t c = 0; c < ncolors; ++c) {
                bool ok = true;
                for (int w : g.neighbors(v)) {
                    auto it = color.find(w);
                    if (it != color.end() && it->second == static_cast<int>(c)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                color[v] = static_cast<int>(c);
                if (self(self, i + 1)) return true;
                color.erase(v);
            }
            return false;
        };
        if (verts.empty() || assign(assign, 0)) {
            best = color;
            break;
        }
    }
    return best;
}

std::set<int> candidate_targets(int x, const std::map<int, int>& partial,
                                const std::map<int, int>& coloring, const InstancePair& inst) {
    (void)coloring; // adjacency consistency subsumes the same-color pair rule
    View view(inst);
    BranchConfig cfg;
    Search s(view, inst, cfg);
    for (auto [v, cls] : partial) {
        int gi = view.gpos.at(v);
        int ci = static_cast<int>(std::lower_bound(view.classes.begin(), view.classes.end(), cls) -
                                  view.classes.begin());
        s.class_of[gi] = ci;
    }
    std::set<int> out;
    for (int ci : s.candidates(view.gpos.at(x))) out.insert(view.classes[ci]);
    return out;
}

SolveResult solve_branch(const InstancePair& inst, const BranchConfig& cfg) {
    auto start = Clock::now();
    SolveResult res;
    auto finish = [&](bool yes) {
        res.yes = yes;
        res.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        return res;
    };

    std::map<int, int> coloring = cfg.coloring_mode == ColoringMode::Exact
                                      ? exact_coloring(inst.h)
                                      : greedy_coloring(inst.h);
    std::set<int> palette;
    for (auto [v, c] : coloring) palette.insert(c);
    res.stats.colors_used = static_cast<int>(palette.size());

    if (inst.h.vertex_count() == 0) {
        res.stats.nodes_explored = 1;
        return finish(inst.g.vertex_count() == 0);
    }
    if (has_h_free_component(inst)) {
        res.stats.nodes_explored = 1;
        return finish(false);
    }

    View view(inst);
    bool yes = false;
    std::vector<int> assignment;

    if (cfg.threads <= 1 || view.free_idx.empty()) {
        Search s(view, inst, cfg);
        yes = s.dfs(0);
        if (yes) assignment = s.found;
        res.stats.nodes_explored = s.nodes;
        res.stats.max_branching = s.max_branch;
        res.stats.depth = s.max_depth;
    } else {
        // parallel exploration of the root's candidate branches; the YES with
        // the smallest branch index wins
        Search root(view, inst, cfg);
        ++root.nodes;
        int gi = root.pick_vertex();
        std::vector<int> cand = gi == -1 ? std::vector<int>{} : root.candidates(gi);
        root.max_branch = static_cast<int>(cand.size());
        int ncand = static_cast<int>(cand.size());
        std::vector<std::vector<int>> hits(ncand);
        std::vector<SolveStats> stats(ncand);
        std::atomic<int> best{ncand};
        std::atomic<bool> failed{false};
        std::string failure;
#ifdef LC_HAVE_OPENMP
#pragma omp parallel for num_threads(cfg.threads) schedule(dynamic, 1)
#endif
        for (int i = 0; i < ncand; ++i) {
            if (i > best.load(std::memory_order_relaxed) || failed.load()) continue;
            Search s(view, inst, cfg);
            s.class_of[gi] = cand[i];
            --s.unassigned;
            try {
                if (s.dfs(1)) {
                    hits[i] = s.found;
                    int cur = best.load(std::memory_order_relaxed);
                    while (i < cur &&
                           !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {}
                }
            } catch (const Error& e) {
                failed.store(true);
#ifdef LC_HAVE_OPENMP
#pragma omp critical
#endif
                failure = e.what();
            }
            stats[i].nodes_explored = s.nodes;
            stats[i].max_branching = s.max_branch;
            stats[i].depth = s.max_depth;
        }
        if (failed.load()) throw BudgetExceededError(failure);
        res.stats.nodes_explored = root.nodes;
        res.stats.max_branching = root.max_branch;
        for (int i = 0; i < ncand; ++i) {
            res.stats.nodes_explored += stats[i].nodes_explored;
            res.stats.max_branching = std::max(res.stats.max_branching, stats[i].max_branching);
            res.stats.depth = std::max(res.stats.depth, stats[i].depth);
        }
        int b = best.load();
        if (b < ncand) {
            yes = true;
            assignment = hits[b];
        }
    }

    if (yes) {
        WitnessStructure w;
        for (int cls : view.classes) w.classes[cls];
        for (std::size_t i = 0; i < view.gverts.size(); ++i)
            w.classes[view.classes[assignment[i]]].insert(view.gverts[i]);
        if (!check_witness(inst, w).valid)
            throw Error("internal: branch witness failed check_witness");
        res.certificate = std::move(w);
    }
    return finish(yes);
}

} // namespace lc
