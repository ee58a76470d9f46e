#include "lc/twdp.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <ostream>
#include <sstream>

#ifdef LC_HAVE_OPENMP
#include <omp.h>
#endif

namespace lc {

namespace {

using Clock = std::chrono::steady_clock;
using Pair16 = std::pair<std::int16_t, std::int16_t>;

Pair16 norm(std::int16_t a, std::int16_t b) {
    return a <= b ? Pair16{a, b} : Pair16{b, a};
}

void sorted_insert(std::vector<Pair16>& v, Pair16 p) {
    auto it = std::lower_bound(v.begin(), v.end(), p);
    if (it == v.end() || *it != p) v.insert(it, p);
}

void sorted_erase(std::vector<Pair16>& v, Pair16 p) {
    auto it = std::lower_bound(v.begin(), v.end(), p);
    if (it != v.end() && *it == p) v.erase(it);
}

bool sorted_contains(const std::vector<Pair16>& v, Pair16 p) {
    return std::binary_search(v.begin(), v.end(), p);
}

int slot_of(const std::vector<int>& bag, int label) {
    auto it = std::lower_bound(bag.begin(), bag.end(), label);
    if (it == bag.end() || *it != label)
        throw InvalidDecompositionError("label " + std::to_string(label) + " not in bag");
    return static_cast<int>(it - bag.begin());
}

// side of an edge endpoint: resolved class or unresolved component root
struct Side {
    bool resolved;
    int h;    // H index when resolved
    int root; // slot when unresolved
};

Side side_of(const Signature& s, int slot) {
    if (s.parent[slot] == Signature::kResolved) return {true, s.tau[slot], -1};
    if (s.parent[slot] == Signature::kExplorer) return {false, -1, slot};
    return {false, -1, s.parent[slot]};
}

} // namespace

TwdpSolver::TwdpSolver(const InstancePair& inst, const NiceTreeDecomposition& ntd,
                       TwdpOptions opts)
    : inst_(inst), ntd_(ntd), opts_(std::move(opts)) {
    hlabels_ = inst.h.vertices();
    for (std::size_t i = 0; i < hlabels_.size(); ++i) hpos_[hlabels_[i]] = static_cast<int>(i);
    std::size_t nh = hlabels_.size();
    eh_.assign(nh, std::vector<bool>(nh, false));
    for (auto [u, v] : inst.h.edges()) {
        eh_[hpos_[u]][hpos_[v]] = true;
        eh_[hpos_[v]][hpos_[u]] = true;
    }
    // twin classes: equal H neighborhoods behave identically for every
    // future requirement, so sealed originators may be pooled by twin id
    twin_.assign(nh, 0);
    std::map<std::vector<int>, int> by_nbrs;
    for (std::size_t i = 0; i < nh; ++i) {
        std::vector<int> row;
        for (std::size_t j = 0; j < nh; ++j)
            if (eh_[i][j]) row.push_back(static_cast<int>(j));
        auto [it, fresh] = by_nbrs.try_emplace(row, static_cast<int>(by_nbrs.size()));
        (void)fresh;
        twin_[i] = it->second;
    }
}

int TwdpSolver::h_index(int label) const {
    auto it = hpos_.find(label);
    if (it == hpos_.end()) throw UnknownLabelError(label);
    return it->second;
}

bool TwdpSolver::viable(const Signature& s) const {
    if (s.pending.empty()) return true;
    std::vector<bool> present(hlabels_.size(), false);
    for (std::int16_t t : s.tau)
        if (t >= 0) present[t] = true;
    std::vector<bool> carrier(hlabels_.size(), false);
    for (auto [a, b] : s.adj) {
        if (Signature::is_class(a)) carrier[Signature::class_of(a)] = true;
        if (Signature::is_class(b)) carrier[Signature::class_of(b)] = true;
    }
    for (auto [h1, h2] : s.pending) {
        bool p1 = present[h1], p2 = present[h2];
        bool ok = (p1 && p2) || (p1 && carrier[h2]) || (p2 && carrier[h1]);
        if (!ok) return false;
    }
    return true;
}

std::string TwdpSolver::dedup_key(const DPTable& t, const Signature& s) const {
    (void)t;
    std::string key;
    auto put16 = [&](std::int16_t v) {
        key.push_back(static_cast<char>(v & 0xff));
        key.push_back(static_cast<char>((v >> 8) & 0xff));
    };
    for (std::int8_t p : s.parent) key.push_back(static_cast<char>(p));
    key.push_back('|');

    if (!opts_.tau_quotient) {
        for (std::int16_t v : s.tau) put16(v);
        key.push_back('|');
        for (auto [a, b] : s.adj) {
            put16(a);
            put16(b);
        }
        key.push_back('|');
        for (auto [a, b] : s.pending) {
            put16(a);
            put16(b);
        }
        return key;
    }

    // sealed originators (no presence in tau) are interchangeable within a
    // twin class; relabel them injectively in first-occurrence order
    std::vector<bool> present(hlabels_.size(), false);
    for (std::int16_t v : s.tau)
        if (v >= 0) present[v] = true;
    std::map<int, int> sealed_rank;
    auto token = [&](int h) -> std::int16_t {
        if (present[h]) return static_cast<std::int16_t>(h);
        auto [it, fresh] = sealed_rank.try_emplace(h, static_cast<int>(sealed_rank.size()));
        (void)fresh;
        // encode (twin class, occurrence rank) past the real index range
        return static_cast<std::int16_t>(hlabels_.size() + 1 + twin_[h] * 128 + it->second);
    };
    for (std::int16_t v : s.tau) put16(v);
    key.push_back('|');
    for (auto [a, b] : s.adj) {
        put16(Signature::is_class(a) ? Signature::enc_class(token(Signature::class_of(a))) : a);
        put16(Signature::is_class(b) ? Signature::enc_class(token(Signature::class_of(b))) : b);
    }
    key.push_back('|');
    for (auto [a, b] : s.pending) {
        put16(token(a));
        put16(token(b));
    }
    return key;
}

void TwdpSolver::finalize(DPTable& t, std::vector<Candidate>&& cands) const {
    std::vector<std::string> keys(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) keys[i] = dedup_key(t, cands[i].sig);
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        const Provenance &pa = cands[a].prov, &pb = cands[b].prov;
        return std::tie(pa.c1, pa.c2, pa.tag) < std::tie(pb.c1, pb.c2, pb.tag);
    });
    t.sigs.clear();
    t.prov.clear();
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && keys[order[k]] == keys[order[k - 1]]) continue;
        t.sigs.push_back(std::move(cands[order[k]].sig));
        t.prov.push_back(cands[order[k]].prov);
    }
    stored_ += t.sigs.size();
    if (stored_ > opts_.table_budget) throw BudgetExceededError("twdp table budget exceeded");
    if (past(opts_.deadline)) throw TimeoutError("twdp timed out");
}

DPTable TwdpSolver::transition_leaf() const {
    DPTable t;
    t.seen_h.assign(std::max<std::size_t>(1, (hlabels_.size() + 63) / 64), 0);
    t.sigs.push_back(Signature{});
    t.prov.push_back(Provenance{Provenance::Leaf, -1, -1});
    return t;
}

DPTable TwdpSolver::transition_introduce_vertex(const DPTable& child, int x) const {
    DPTable out;
    out.bag = child.bag;
    auto pos = std::lower_bound(out.bag.begin(), out.bag.end(), x);
    if (pos != out.bag.end() && *pos == x)
        throw InvalidDecompositionError("introducing vertex already in bag");
    int px = static_cast<int>(pos - out.bag.begin());
    out.bag.insert(pos, x);
    out.seen_h = child.seen_h;
    auto hit = hpos_.find(x);
    bool is_h = hit != hpos_.end();
    int hx = is_h ? hit->second : -1;
    if (is_h) set_seen(out, hx);

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < child.sigs.size(); ++i) {
        const Signature& s = child.sigs[i];
        Signature ns;
        ns.parent.reserve(s.parent.size() + 1);
        ns.tau.reserve(s.tau.size() + 1);
        for (std::size_t j = 0; j <= s.parent.size(); ++j) {
            if (static_cast<int>(j) == px) {
                ns.parent.push_back(is_h ? Signature::kResolved : Signature::kExplorer);
                ns.tau.push_back(static_cast<std::int16_t>(is_h ? hx : -1));
            }
            if (j < s.parent.size()) {
                std::int8_t p = s.parent[j];
                if (p >= px) ++p;
                ns.parent.push_back(p);
                ns.tau.push_back(s.tau[j]);
            }
        }
        ns.adj = s.adj;
        for (auto& [a, b] : ns.adj) {
            if (a >= px) ++a;
            if (b >= px) ++b;
            if (a > b) std::swap(a, b);
        }
        std::sort(ns.adj.begin(), ns.adj.end());
        ns.pending = s.pending;
        if (is_h) {
            // new adjacency requirements against already-seen classes
            for (std::size_t h2 = 0; h2 < hlabels_.size(); ++h2)
                if (eh_[hx][h2] && seen(child, static_cast<int>(h2)))
                    sorted_insert(ns.pending, norm(static_cast<std::int16_t>(hx),
                                                   static_cast<std::int16_t>(h2)));
        }
        if (!viable(ns)) continue;
        cands.push_back({std::move(ns), {Provenance::FromChild, static_cast<int>(i), -1}});
    }
    finalize(out, std::move(cands));
    return out;
}

DPTable TwdpSolver::transition_forget(const DPTable& child, int x) const {
    DPTable out;
    int px = slot_of(child.bag, x);
    out.bag = child.bag;
    out.bag.erase(out.bag.begin() + px);
    out.seen_h = child.seen_h;

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < child.sigs.size(); ++i) {
        const Signature& s = child.sigs[i];
        if (s.parent[px] == Signature::kExplorer) continue; // unresolved component root
        Signature ns;
        for (std::size_t j = 0; j < s.parent.size(); ++j) {
            if (static_cast<int>(j) == px) continue;
            std::int8_t p = s.parent[j];
            if (p >= 0 && p > px) --p;
            ns.parent.push_back(p);
            ns.tau.push_back(s.tau[j]);
        }
        ns.adj = s.adj; // dependents and resolved slots never appear in adj
        for (auto& [a, b] : ns.adj) {
            if (a >= 0 && a > px) --a;
            if (b >= 0 && b > px) --b;
            if (a > b) std::swap(a, b);
        }
        std::sort(ns.adj.begin(), ns.adj.end());
        ns.pending = s.pending;
        // a sealed class may leave undischargeable requirements behind
        if (!viable(ns)) continue;
        cands.push_back({std::move(ns), {Provenance::FromChild, static_cast<int>(i), -1}});
    }
    finalize(out, std::move(cands));
    return out;
}

void TwdpSolver::resolve_component(Signature& s, int root_slot, int hidx, bool& reject) const {
    for (std::size_t j = 0; j < s.parent.size(); ++j)
        if (static_cast<int>(j) == root_slot || s.parent[j] == root_slot) {
            s.parent[j] = Signature::kResolved;
            s.tau[j] = static_cast<std::int16_t>(hidx);
        }
    std::vector<Pair16> kept;
    std::int16_t cls = Signature::enc_class(hidx);
    for (auto [a, b] : s.adj) {
        if (a == root_slot) a = cls;
        if (b == root_slot) b = cls;
        if (Signature::is_class(a) && Signature::is_class(b)) {
            int h1 = Signature::class_of(a), h2 = Signature::class_of(b);
            if (h1 == h2) continue; // realized adjacency inside one class
            if (!eh_[h1][h2]) {
                reject = true; // adjacency between non-adjacent H classes
                return;
            }
            sorted_erase(s.pending, norm(static_cast<std::int16_t>(std::min(h1, h2)),
                                         static_cast<std::int16_t>(std::max(h1, h2))));
            continue;
        }
        kept.push_back(norm(a, b));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    s.adj = std::move(kept);
}

DPTable TwdpSolver::transition_introduce_edge(const DPTable& child, int u, int v) const {
    DPTable out;
    out.bag = child.bag;
    out.seen_h = child.seen_h;
    if (u > v) std::swap(u, v);
    int pu = slot_of(child.bag, u), pv = slot_of(child.bag, v);

    if (!inst_.g.has_edge(u, v)) {
        // union edge from E(H) only: contributes no G adjacency
        std::vector<Candidate> cands;
        for (std::size_t i = 0; i < child.sigs.size(); ++i)
            cands.push_back({child.sigs[i], {Provenance::FromChild, static_cast<int>(i), -1}});
        finalize(out, std::move(cands));
        return out;
    }

    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < child.sigs.size(); ++i) {
        const Signature& s = child.sigs[i];
        Side su = side_of(s, pu), sv = side_of(s, pv);

        // keep the edge between distinct sets: realized adjacency
        {
            Signature ns = s;
            bool emit = true;
            if (su.resolved && sv.resolved) {
                if (su.h != sv.h) {
                    if (eh_[su.h][sv.h])
                        sorted_erase(ns.pending, norm(static_cast<std::int16_t>(std::min(su.h, sv.h)),
                                                      static_cast<std::int16_t>(std::max(su.h, sv.h))));
                    else
                        emit = false;
                }
            } else if (su.resolved) {
                sorted_insert(ns.adj, norm(Signature::enc_class(su.h),
                                           static_cast<std::int16_t>(sv.root)));
            } else if (sv.resolved) {
                sorted_insert(ns.adj, norm(Signature::enc_class(sv.h),
                                           static_cast<std::int16_t>(su.root)));
            } else if (su.root != sv.root) {
                sorted_insert(ns.adj, norm(static_cast<std::int16_t>(su.root),
                                           static_cast<std::int16_t>(sv.root)));
            }
            if (emit)
                cands.push_back({std::move(ns), {Provenance::EdgeKeep, static_cast<int>(i), -1}});
        }

        // merge: the edge becomes a witness-tree edge; the child endpoint must
        // be the root of an unresolved component and not an H vertex
        auto try_merge = [&](int child_slot, const Side& parent_side, Provenance::Tag tag) {
            if (s.parent[child_slot] != Signature::kExplorer) return;
            Signature ns = s;
            bool reject = false;
            if (parent_side.resolved) {
                resolve_component(ns, child_slot, parent_side.h, reject);
                if (!reject && !viable(ns)) reject = true; // carriers may be consumed
            } else {
                if (parent_side.root == child_slot) return; // edge inside one component
                for (std::size_t j = 0; j < ns.parent.size(); ++j)
                    if (static_cast<int>(j) == child_slot || ns.parent[j] == child_slot)
                        ns.parent[j] = static_cast<std::int8_t>(parent_side.root);
                ns.parent[child_slot] = static_cast<std::int8_t>(parent_side.root);
                std::vector<Pair16> kept;
                for (auto [a, b] : ns.adj) {
                    if (a == child_slot) a = static_cast<std::int16_t>(parent_side.root);
                    if (b == child_slot) b = static_cast<std::int16_t>(parent_side.root);
                    if (a == b) continue;
                    kept.push_back(norm(a, b));
                }
                std::sort(kept.begin(), kept.end());
                kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
                ns.adj = std::move(kept);
            }
            if (!reject)
                cands.push_back({std::move(ns), {tag, static_cast<int>(i), -1}});
        };
        try_merge(pv, su, Provenance::EdgeMergeBintoA);
        try_merge(pu, sv, Provenance::EdgeMergeAintoB);
    }
    finalize(out, std::move(cands));
    return out;
}

DPTable TwdpSolver::transition_join(const DPTable& left, const DPTable& right) const {
    if (left.bag != right.bag) throw InvalidDecompositionError("join children bags differ");
    DPTable out;
    out.bag = left.bag;
    out.seen_h.resize(left.seen_h.size());
    for (std::size_t w = 0; w < out.seen_h.size(); ++w)
        out.seen_h[w] = left.seen_h[w] | right.seen_h[w];

    auto activated = [&](const std::vector<std::uint64_t>& mask) {
        std::vector<Pair16> out_pairs;
        for (std::size_t i = 0; i < hlabels_.size(); ++i) {
            if (!((mask[i / 64] >> (i % 64)) & 1)) continue;
            for (std::size_t j = i + 1; j < hlabels_.size(); ++j)
                if (eh_[i][j] && ((mask[j / 64] >> (j % 64)) & 1))
                    out_pairs.push_back({static_cast<std::int16_t>(i), static_cast<std::int16_t>(j)});
        }
        return out_pairs; // already sorted by construction
    };
    std::vector<Pair16> act_t = activated(out.seen_h);
    std::vector<Pair16> act_l = activated(left.seen_h);
    std::vector<Pair16> act_r = activated(right.seen_h);

    int b = static_cast<int>(out.bag.size());
    std::vector<bool> slot_is_h(b, false);
    for (int j = 0; j < b; ++j) slot_is_h[j] = hpos_.count(out.bag[j]) != 0;

    auto combine = [&](const Signature& s1, const Signature& s2,
                       std::size_t i1, std::size_t i2) -> std::optional<Candidate> {
        // per-slot compatibility: a vertex gains its parent edge in one side
        enum Kind { E, D, R };
        auto kind = [](const Signature& s, int j) {
            return s.parent[j] == Signature::kExplorer ? E
                   : s.parent[j] == Signature::kResolved ? R
                                                         : D;
        };
        for (int j = 0; j < b; ++j) {
            Kind k1 = kind(s1, j), k2 = kind(s2, j);
            if (k1 == R && k2 == R) {
                if (!slot_is_h[j] || s1.tau[j] != s2.tau[j]) return std::nullopt;
            } else if ((k1 == D || k1 == R) && (k2 == D || k2 == R)) {
                return std::nullopt; // two parent edges for one vertex
            }
        }
        // chase combined parent chains to a root slot or a class, reject cycles
        std::vector<int> state(b, 0);    // 0 unvisited, 1 in progress, 2 done
        std::vector<int> term(b, -1);    // >=0 root slot; -(h+1) class
        auto chase = [&](int start) -> bool {
            std::vector<int> path;
            int cur = start;
            while (true) {
                if (state[cur] == 2) break;
                if (state[cur] == 1) return false; // cycle
                state[cur] = 1;
                path.push_back(cur);
                Kind k1 = kind(s1, cur), k2 = kind(s2, cur);
                if (k1 == R || k2 == R) {
                    term[cur] = -((k1 == R ? s1.tau[cur] : s2.tau[cur]) + 1);
                    break;
                }
                if (k1 == D) cur = s1.parent[cur];
                else if (k2 == D) cur = s2.parent[cur];
                else { // free root
                    term[cur] = cur;
                    break;
                }
            }
            int t = term[cur];
            for (int p : path) {
                term[p] = t;
                state[p] = 2;
            }
            return true;
        };
        for (int j = 0; j < b; ++j)
            if (state[j] != 2 && !chase(j)) return std::nullopt;

        Signature ns;
        ns.parent.resize(b);
        ns.tau.resize(b);
        for (int j = 0; j < b; ++j) {
            if (term[j] < 0) {
                ns.parent[j] = Signature::kResolved;
                ns.tau[j] = static_cast<std::int16_t>(-term[j] - 1);
            } else if (term[j] == j) {
                ns.parent[j] = Signature::kExplorer;
                ns.tau[j] = -1;
            } else {
                ns.parent[j] = static_cast<std::int8_t>(term[j]);
                ns.tau[j] = -1;
            }
        }
        // pending = activated here minus anything discharged in either side
        std::vector<Pair16> discharged;
        std::set_difference(act_l.begin(), act_l.end(), s1.pending.begin(), s1.pending.end(),
                            std::back_inserter(discharged));
        std::set_difference(act_r.begin(), act_r.end(), s2.pending.begin(), s2.pending.end(),
                            std::back_inserter(discharged));
        std::sort(discharged.begin(), discharged.end());
        discharged.erase(std::unique(discharged.begin(), discharged.end()), discharged.end());
        ns.pending.clear();
        std::set_difference(act_t.begin(), act_t.end(), discharged.begin(), discharged.end(),
                            std::back_inserter(ns.pending));

        // re-keyed adjacency facts; facts between two classes discharge or reject
        auto remap = [&](std::int16_t e) -> std::int16_t {
            if (Signature::is_class(e)) return e;
            int t = term[e];
            return t < 0 ? Signature::enc_class(-t - 1) : static_cast<std::int16_t>(t);
        };
        std::vector<Pair16> facts;
        for (const auto* src : {&s1.adj, &s2.adj})
            for (auto [a, b2] : *src) facts.push_back(norm(remap(a), remap(b2)));
        std::sort(facts.begin(), facts.end());
        facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
        for (auto [a, b2] : facts) {
            if (Signature::is_class(a) && Signature::is_class(b2)) {
                int h1 = Signature::class_of(a), h2 = Signature::class_of(b2);
                if (h1 == h2) continue;
                if (!eh_[h1][h2]) return std::nullopt;
                sorted_erase(ns.pending, norm(static_cast<std::int16_t>(std::min(h1, h2)),
                                              static_cast<std::int16_t>(std::max(h1, h2))));
                continue;
            }
            if (a == b2) continue;
            ns.adj.push_back(norm(a, b2));
        }
        std::sort(ns.adj.begin(), ns.adj.end());
        ns.adj.erase(std::unique(ns.adj.begin(), ns.adj.end()), ns.adj.end());
        if (!viable(ns)) return std::nullopt;
        return Candidate{std::move(ns),
                         {Provenance::Join, static_cast<int>(i1), static_cast<int>(i2)}};
    };

    std::vector<Candidate> cands;
#ifdef LC_HAVE_OPENMP
    if (opts_.threads > 1 && left.sigs.size() > 1) {
        std::vector<std::vector<Candidate>> local(left.sigs.size());
#pragma omp parallel for num_threads(opts_.threads) schedule(dynamic, 1)
        for (std::size_t i1 = 0; i1 < left.sigs.size(); ++i1)
            for (std::size_t i2 = 0; i2 < right.sigs.size(); ++i2)
                if (auto c = combine(left.sigs[i1], right.sigs[i2], i1, i2))
                    local[i1].push_back(std::move(*c));
        for (auto& l : local)
            for (auto& c : l) cands.push_back(std::move(c));
    } else
#endif
    {
        for (std::size_t i1 = 0; i1 < left.sigs.size(); ++i1)
            for (std::size_t i2 = 0; i2 < right.sigs.size(); ++i2)
                if (auto c = combine(left.sigs[i1], right.sigs[i2], i1, i2))
                    cands.push_back(std::move(*c));
    }
    finalize(out, std::move(cands));
    return out;
}

std::string TwdpSolver::render(const DPTable& table, const Signature& s) const {
    std::ostringstream os;
    auto label = [&](int slot) { return table.bag[slot]; };
    os << "sigma={";
    for (std::size_t j = 0; j < table.bag.size(); ++j) {
        if (j) os << ',';
        os << label(static_cast<int>(j)) << ':';
        if (s.parent[j] == Signature::kExplorer) os << '*';
        else if (s.parent[j] == Signature::kResolved)
            os << (hpos_.count(table.bag[j]) ? std::to_string(table.bag[j]) : std::string("out"));
        else os << label(s.parent[j]);
    }
    os << "} tau={";
    for (std::size_t j = 0; j < table.bag.size(); ++j) {
        if (j) os << ',';
        os << label(static_cast<int>(j)) << ':';
        if (s.tau[j] < 0) os << '*';
        else os << hlabels_[s.tau[j]];
    }
    os << "} R={";
    bool first = true;
    for (std::size_t a = 0; a < table.bag.size(); ++a)
        for (std::size_t b2 = a + 1; b2 < table.bag.size(); ++b2) {
            if (s.tau[a] < 0 || s.tau[b2] < 0) continue;
            int h1 = s.tau[a], h2 = s.tau[b2];
            const char* lab = "sat";
            if (h1 != h2 && eh_[h1][h2] &&
                sorted_contains(s.pending, norm(static_cast<std::int16_t>(std::min(h1, h2)),
                                                static_cast<std::int16_t>(std::max(h1, h2)))))
                lab = "unsat";
            if (!first) os << ',';
            first = false;
            os << '(' << label(static_cast<int>(a)) << ',' << label(static_cast<int>(b2)) << ','
               << lab << ')';
        }
    os << "} A={";
    first = true;
    for (auto [a, b2] : s.adj) {
        if (!first) os << ',';
        first = false;
        auto end = [&](std::int16_t e) {
            return Signature::is_class(e) ? hlabels_[Signature::class_of(e)] : label(e);
        };
        os << '(' << end(a) << ',' << end(b2) << ')';
    }
    os << "} P={";
    first = true;
    for (auto [h1, h2] : s.pending) {
        if (!first) os << ',';
        first = false;
        os << '(' << hlabels_[h1] << ',' << hlabels_[h2] << ')';
    }
    os << '}';
    return os.str();
}

WitnessStructure TwdpSolver::replay_certificate(const std::vector<DPTable>& tables) const {
    // pick one entry per node along the provenance tree, then replay the
    // merge events bottom-up (node ids are already children-before-parents)
    std::vector<int> chosen(ntd_.nodes.size(), -1);
    std::vector<std::pair<int, int>> stack{{ntd_.root, 0}};
    while (!stack.empty()) {
        auto [node, entry] = stack.back();
        stack.pop_back();
        chosen[node] = entry;
        const Provenance& p = tables[node].prov[entry];
        const NiceNode& n = ntd_.nodes[node];
        if (n.child1 != -1 && p.tag != Provenance::Leaf) stack.push_back({n.child1, p.c1});
        if (n.child2 != -1 && p.tag == Provenance::Join) stack.push_back({n.child2, p.c2});
    }

    std::map<int, int> uf;
    std::map<int, int> cls;
    auto find = [&](int v) {
        while (uf[v] != v) v = uf[v] = uf[uf[v]];
        return v;
    };
    for (std::size_t node = 0; node < ntd_.nodes.size(); ++node) {
        if (chosen[node] == -1) continue;
        const NiceNode& n = ntd_.nodes[node];
        const Provenance& p = tables[node].prov[chosen[node]];
        if (n.kind == NodeKind::IntroduceVertex) {
            if (!uf.count(n.x)) {
                uf[n.x] = n.x;
                if (hpos_.count(n.x)) cls[n.x] = n.x;
            }
        } else if (n.kind == NodeKind::IntroduceEdge &&
                   (p.tag == Provenance::EdgeMergeBintoA || p.tag == Provenance::EdgeMergeAintoB)) {
            int parent_v = p.tag == Provenance::EdgeMergeBintoA ? n.u : n.v;
            int child_v = p.tag == Provenance::EdgeMergeBintoA ? n.v : n.u;
            int rp = find(parent_v), rc = find(child_v);
            uf[rc] = rp; // child component hangs under the parent side
            if (cls.count(rc)) cls[rp] = cls[rc];
        }
    }
    WitnessStructure w;
    for (int hv : hlabels_) w.classes[hv];
    for (int v : inst_.g.vertices()) {
        int r = find(v);
        auto it = cls.find(r);
        if (it == cls.end()) throw Error("internal: twdp replay left a vertex unassigned");
        w.classes[it->second].insert(v);
    }
    return w;
}

SolveResult TwdpSolver::solve() {
    auto start = Clock::now();
    SolveResult res;
    auto finish = [&](bool yes) {
        res.yes = yes;
        res.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        return res;
    };

    LabeledGraph uni = union_graph(inst_);
    ValidityReport rep = validate_nice(ntd_, uni);
    if (!rep.valid)
        throw InvalidDecompositionError("nice decomposition invalid: " + rep.violations.front());

    if (inst_.h.vertex_count() == 0) return finish(inst_.g.vertex_count() == 0);
    if (has_h_free_component(inst_)) return finish(false);

    stored_ = 0;
    std::vector<DPTable> tables(ntd_.nodes.size());
    for (std::size_t id = 0; id < ntd_.nodes.size(); ++id) {
        const NiceNode& n = ntd_.nodes[id];
        switch (n.kind) {
        case NodeKind::Leaf: tables[id] = transition_leaf(); break;
        case NodeKind::IntroduceVertex:
            tables[id] = transition_introduce_vertex(tables[n.child1], n.x);
            break;
        case NodeKind::Forget: tables[id] = transition_forget(tables[n.child1], n.x); break;
        case NodeKind::IntroduceEdge:
            tables[id] = transition_introduce_edge(tables[n.child1], n.u, n.v);
            break;
        case NodeKind::Join:
            tables[id] = transition_join(tables[n.child1], tables[n.child2]);
            break;
        }
        if (tables[id].bag != n.bag)
            throw InvalidDecompositionError("node " + std::to_string(id) +
                                            " bag mismatch during DP");
        res.stats.max_table_size = std::max(res.stats.max_table_size, tables[id].size());
        if (opts_.trace) {
            static const char* names[] = {"leaf", "introduce_vertex", "introduce_edge", "forget",
                                          "join"};
            *opts_.trace << "node " << id << ' ' << names[static_cast<int>(n.kind)];
            if (n.kind == NodeKind::IntroduceVertex || n.kind == NodeKind::Forget)
                *opts_.trace << ' ' << n.x;
            if (n.kind == NodeKind::IntroduceEdge) *opts_.trace << ' ' << n.u << ' ' << n.v;
            *opts_.trace << " entries " << tables[id].size() << '\n';
            for (const Signature& s : tables[id].sigs)
                *opts_.trace << "  " << render(tables[id], s) << '\n';
        }
    }
    res.stats.table_count = ntd_.nodes.size();

    const DPTable& root = tables[ntd_.root];
    if (root.sigs.empty()) return finish(false);

    WitnessStructure w = replay_certificate(tables);
    if (!check_witness(inst_, w).valid)
        throw Error("internal: twdp certificate failed check_witness");
    res.certificate = std::move(w);
    return finish(true);
}

SolveResult solve_twdp(const InstancePair& inst, const NiceTreeDecomposition& ntd,
                       const TwdpOptions& opts) {
    TwdpSolver solver(inst, ntd, opts);
    return solver.solve();
}

} // namespace lc
