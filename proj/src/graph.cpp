#include "lc/graph.hpp"

#include <algorithm>
#include <deque>

namespace lc {

void LabeledGraph::add_vertex(int v) {
    if (v < 0) throw Error("vertex labels must be non-negative, got " + std::to_string(v));
    adj_.try_emplace(v);
}

void LabeledGraph::add_edge(int u, int v) {
    if (u == v) throw Error("self-loop on " + std::to_string(u));
    add_vertex(u);
    add_vertex(v);
    adj_[u].insert(v);
    adj_[v].insert(u);
}

void LabeledGraph::remove_vertex(int v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownLabelError(v);
    for (int w : it->second) adj_[w].erase(v);
    adj_.erase(it);
}

void LabeledGraph::remove_edge(int u, int v) {
    if (!has_edge(u, v)) throw NonEdgeError(u, v);
    adj_[u].erase(v);
    adj_[v].erase(u);
}

bool LabeledGraph::has_edge(int u, int v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) != 0;
}

const std::set<int>& LabeledGraph::neighbors(int v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownLabelError(v);
    return it->second;
}

std::size_t LabeledGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [v, nbrs] : adj_) twice += nbrs.size();
    return twice / 2;
}

std::vector<int> LabeledGraph::vertices() const {
    std::vector<int> out;
    out.reserve(adj_.size());
    for (const auto& [v, nbrs] : adj_) out.push_back(v);
    return out;
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [v, nbrs] : adj_)
        for (int w : nbrs)
            if (v < w) out.emplace_back(v, w);
    return out;
}

InstancePair::InstancePair(LabeledGraph g_, LabeledGraph h_)
    : g(std::move(g_)), h(std::move(h_)) {
    for (int v : h.vertices())
        if (!g.has_vertex(v))
            throw Error("V(H) must be a subset of V(G): H vertex " + std::to_string(v) +
                        " missing from G");
}

LabeledGraph contract_edge(const LabeledGraph& g, int u, int v) {
    if (!g.has_vertex(u)) throw UnknownLabelError(u);
    if (!g.has_vertex(v)) throw UnknownLabelError(v);
    if (!g.has_edge(u, v)) throw NonEdgeError(u, v);
    LabeledGraph out = g;
    for (int w : g.neighbors(v))
        if (w != u && !g.has_edge(u, w)) out.add_edge(u, w);
    out.remove_vertex(v);
    return out;
}

LabeledGraph apply_sequence(const LabeledGraph& g, const ContractionSequence& s) {
    LabeledGraph cur = g;
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        auto [u, v] = s.pairs[i];
        if (!cur.has_vertex(u) || !cur.has_vertex(v) || !cur.has_edge(u, v))
            throw InvalidStepError(i, "(" + std::to_string(u) + "," + std::to_string(v) +
                                          ") is not an edge of the current graph");
        cur = contract_edge(cur, u, v);
    }
    return cur;
}

namespace {

bool set_connected(const LabeledGraph& g, const std::set<int>& verts) {
    if (verts.empty()) return false;
    std::set<int> seen;
    std::deque<int> queue{*verts.begin()};
    seen.insert(*verts.begin());
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v))
            if (verts.count(w) && seen.insert(w).second) queue.push_back(w);
    }
    return seen.size() == verts.size();
}

bool sets_adjacent(const LabeledGraph& g, const std::set<int>& a, const std::set<int>& b) {
    for (int v : a)
        for (int w : g.neighbors(v))
            if (b.count(w)) return true;
    return false;
}

} // namespace

ValidityReport check_witness(const InstancePair& inst, const WitnessStructure& w) {
    // structural preconditions are hard errors
    std::vector<int> hverts = inst.h.vertices();
    if (w.classes.size() != hverts.size())
        throw RepresentativeMismatchError("witness has " + std::to_string(w.classes.size()) +
                                          " classes but |V(H)| = " + std::to_string(hverts.size()));
    for (int hv : hverts)
        if (!w.classes.count(hv))
            throw RepresentativeMismatchError("H vertex " + std::to_string(hv) +
                                              " is not a class representative");
    std::map<int, int> owner;
    for (const auto& [rep, members] : w.classes) {
        if (members.empty())
            throw NotAPartitionError("class of " + std::to_string(rep) + " is empty");
        if (!members.count(rep))
            throw RepresentativeMismatchError("representative " + std::to_string(rep) +
                                              " not contained in its class");
        for (int m : members) {
            if (!inst.g.has_vertex(m))
                throw NotAPartitionError("class member " + std::to_string(m) + " not in V(G)");
            if (!owner.emplace(m, rep).second)
                throw NotAPartitionError("vertex " + std::to_string(m) +
                                         " appears in more than one class");
        }
    }
    if (owner.size() != inst.g.vertex_count())
        throw NotAPartitionError("classes do not cover V(G)");

    ValidityReport report;
    for (const auto& [rep, members] : w.classes) {
        for (int m : members)
            if (m != rep && inst.h.has_vertex(m))
                report.violations.push_back("class of " + std::to_string(rep) +
                                            " contains another H vertex " + std::to_string(m));
        if (!set_connected(inst.g, members))
            report.violations.push_back("class of " + std::to_string(rep) +
                                        " is not connected in G");
    }
    for (auto i = w.classes.begin(); i != w.classes.end(); ++i) {
        for (auto j = std::next(i); j != w.classes.end(); ++j) {
            bool adj = sets_adjacent(inst.g, i->second, j->second);
            bool want = inst.h.has_edge(i->first, j->first);
            if (adj && !want)
                report.violations.push_back("classes " + std::to_string(i->first) + " and " +
                                            std::to_string(j->first) +
                                            " are adjacent but not an H edge");
            if (!adj && want)
                report.violations.push_back("H edge (" + std::to_string(i->first) + "," +
                                            std::to_string(j->first) +
                                            ") not realized by class adjacency");
        }
    }
    report.valid = report.violations.empty();
    return report;
}

ContractionSequence witness_to_sequence(const WitnessStructure& w, const LabeledGraph& g) {
    ContractionSequence seq;
    for (const auto& [rep, members] : w.classes) {
        if (!members.count(rep))
            throw RepresentativeMismatchError("representative " + std::to_string(rep) +
                                              " not contained in its class");
        // BFS spanning tree rooted at the representative
        std::map<int, int> parent;
        std::vector<int> order;
        std::deque<int> queue{rep};
        parent[rep] = rep;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int u : g.neighbors(v))
                if (members.count(u) && !parent.count(u)) {
                    parent[u] = v;
                    queue.push_back(u);
                }
        }
        if (order.size() != members.size())
            throw Error("witness class of " + std::to_string(rep) + " is not connected");
        // contract leaves first: reverse BFS order keeps every parent edge alive
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (*it != rep) seq.pairs.emplace_back(parent[*it], *it);
    }
    return seq;
}

WitnessStructure sequence_to_witness(const InstancePair& inst, const ContractionSequence& s) {
    LabeledGraph result = apply_sequence(inst.g, s);
    if (result != inst.h)
        throw NotAContractionToHError("sequence does not contract G to H");
    std::map<int, int> into; // removed vertex -> vertex it was merged into
    for (auto [u, v] : s.pairs) into[v] = u;
    WitnessStructure w;
    for (int hv : inst.h.vertices()) w.classes[hv];
    for (int v : inst.g.vertices()) {
        int cur = v;
        while (into.count(cur)) cur = into[cur];
        w.classes[cur].insert(v);
    }
    return w;
}

DegeneracyResult degeneracy(const LabeledGraph& g) {
    DegeneracyResult res;
    std::map<int, std::set<int>> live;
    for (int v : g.vertices()) live[v] = g.neighbors(v);
    while (!live.empty()) {
        int best = -1;
        std::size_t best_deg = 0;
        for (const auto& [v, nbrs] : live)
            if (best == -1 || nbrs.size() < best_deg) {
                best = v;
                best_deg = nbrs.size();
            }
        res.d = std::max<int>(res.d, static_cast<int>(best_deg));
        res.order.push_back(best);
        for (int w : live[best]) live[w].erase(best);
        live.erase(best);
    }
    return res;
}

std::map<int, int> greedy_coloring(const LabeledGraph& g) {
    DegeneracyResult deg = degeneracy(g);
    std::map<int, int> color;
    for (auto it = deg.order.rbegin(); it != deg.order.rend(); ++it) {
        std::set<int> used;
        for (int w : g.neighbors(*it)) {
            auto c = color.find(w);
            if (c != color.end()) used.insert(c->second);
        }
        int c = 0;
        while (used.count(c)) ++c;
        color[*it] = c;
    }
    return color;
}

LabeledGraph union_graph(const InstancePair& inst) {
    LabeledGraph out = inst.g;
    for (auto [u, v] : inst.h.edges()) out.add_edge(u, v);
    return out;
}

std::vector<std::set<int>> connected_components(const LabeledGraph& g) {
    std::vector<std::set<int>> comps;
    std::set<int> seen;
    for (int v : g.vertices()) {
        if (seen.count(v)) continue;
        std::set<int> comp{v};
        std::deque<int> queue{v};
        seen.insert(v);
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(x))
                if (seen.insert(w).second) {
                    comp.insert(w);
                    queue.push_back(w);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool has_h_free_component(const InstancePair& inst) {
    for (const auto& comp : connected_components(inst.g)) {
        bool any = false;
        for (int v : comp)
            if (inst.h.has_vertex(v)) {
                any = true;
                break;
            }
        if (!any) return true;
    }
    return false;
}

} // namespace lc
