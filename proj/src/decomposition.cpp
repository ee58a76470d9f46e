#include "lc/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace lc {

int TreeDecomposition::width() const {
    std::size_t mx = 0;
    for (const auto& b : bags) mx = std::max(mx, b.size());
    return static_cast<int>(mx) - 1;
}

int NiceTreeDecomposition::width() const {
    std::size_t mx = 0;
    for (const auto& n : nodes) mx = std::max(mx, n.bag.size());
    return static_cast<int>(mx) - 1;
}

ValidityReport validate(const TreeDecomposition& td, const LabeledGraph& g) {
    ValidityReport report;
    std::size_t n = td.bags.size();
    if (n == 0 || td.parent.size() != n) {
        report.violations.push_back("malformed decomposition structure");
        return report;
    }
    // tree structure: exactly one root, every node reaches it
    if (td.root < 0 || static_cast<std::size_t>(td.root) >= n ||
        td.parent[td.root] != -1) {
        report.violations.push_back("bad root");
        return report;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == td.root) continue;
        int p = td.parent[i];
        if (p < 0 || static_cast<std::size_t>(p) >= n) {
            report.violations.push_back("node " + std::to_string(i) + " has invalid parent");
            return report;
        }
        // cycle check by walking up with a step bound
        std::size_t steps = 0;
        int cur = static_cast<int>(i);
        while (cur != td.root && steps++ <= n) cur = td.parent[cur];
        if (cur != td.root) {
            report.violations.push_back("node " + std::to_string(i) + " does not reach the root");
            return report;
        }
    }

    std::map<int, std::vector<int>> occurrence;
    for (std::size_t i = 0; i < n; ++i)
        for (int v : td.bags[i]) occurrence[v].push_back(static_cast<int>(i));

    for (int v : g.vertices())
        if (!occurrence.count(v))
            report.violations.push_back("vertex " + std::to_string(v) + " occurs in no bag");
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (std::size_t i = 0; i < n && !covered; ++i)
            covered = td.bags[i].count(u) && td.bags[i].count(v);
        if (!covered)
            report.violations.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") is not contained in any bag");
    }
    // occurrence sets must induce connected subtrees: each non-root occurrence
    // node whose parent also holds v counts one tree edge; need |occ|-1 of them
    for (const auto& [v, occ] : occurrence) {
        std::set<int> occset(occ.begin(), occ.end());
        std::size_t internal_edges = 0;
        for (int node : occ)
            if (node != td.root && occset.count(td.parent[node])) ++internal_edges;
        if (internal_edges + 1 != occ.size())
            report.violations.push_back("occurrence set of vertex " + std::to_string(v) +
                                        " is not a connected subtree");
    }
    report.width = td.width();
    report.valid = report.violations.empty();
    return report;
}

TreeDecomposition heuristic_decompose(const LabeledGraph& g) {
    std::map<int, std::set<int>> live;
    for (int v : g.vertices()) live[v] = g.neighbors(v);

    TreeDecomposition td;
    if (live.empty()) {
        td.bags.push_back({});
        td.parent.push_back(-1);
        td.root = 0;
        return td;
    }

    std::vector<int> elim;
    std::vector<std::set<int>> elim_bag;
    while (!live.empty()) {
        int best = -1;
        long best_fill = -1;
        std::size_t best_deg = 0;
        for (const auto& [v, nbrs] : live) {
            long fill = 0;
            for (auto i = nbrs.begin(); i != nbrs.end(); ++i)
                for (auto j = std::next(i); j != nbrs.end(); ++j)
                    if (!live[*i].count(*j)) ++fill;
            if (best == -1 || fill < best_fill ||
                (fill == best_fill && nbrs.size() < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = nbrs.size();
            }
        }
        std::set<int> bag = live[best];
        bag.insert(best);
        elim.push_back(best);
        elim_bag.push_back(bag);
        for (int a : live[best])
            for (int b : live[best])
                if (a < b && !live[a].count(b)) {
                    live[a].insert(b);
                    live[b].insert(a);
                }
        for (int w : live[best]) live[w].erase(best);
        live.erase(best);
    }

    std::size_t n = elim.size();
    std::map<int, std::size_t> elim_index;
    for (std::size_t i = 0; i < n; ++i) elim_index[elim[i]] = i;
    td.bags = std::move(elim_bag);
    td.parent.assign(n, -1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t first = n; // earliest-eliminated later neighbor
        for (int w : td.bags[i])
            if (w != elim[i]) first = std::min(first, elim_index[w]);
        td.parent[i] = static_cast<int>(first == n ? i + 1 : first);
    }
    td.root = static_cast<int>(n - 1);
    return td;
}

TreeDecomposition single_bag_decomposition(const LabeledGraph& g) {
    TreeDecomposition td;
    auto verts = g.vertices();
    td.bags.push_back(std::set<int>(verts.begin(), verts.end()));
    td.parent.push_back(-1);
    td.root = 0;
    return td;
}

TreeDecomposition duplicate_bags(const TreeDecomposition& td) {
    TreeDecomposition out;
    std::size_t n = td.bags.size();
    out.bags.resize(2 * n);
    out.parent.assign(2 * n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        out.bags[2 * i] = td.bags[i];
        out.bags[2 * i + 1] = td.bags[i];
        out.parent[2 * i] = static_cast<int>(2 * i + 1);
        out.parent[2 * i + 1] = td.parent[i] == -1 ? -1 : 2 * td.parent[i];
    }
    out.root = 2 * td.root + 1;
    return out;
}

namespace {

// growable nice-tree builder; linearized to children-before-parents at the end
struct Builder {
    std::vector<NiceNode> nodes;

    int add(NiceNode n) {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    int leaf() {
        NiceNode n;
        n.kind = NodeKind::Leaf;
        return add(n);
    }

    int introduce(int below, int x) {
        NiceNode n;
        n.kind = NodeKind::IntroduceVertex;
        n.child1 = below;
        n.x = x;
        n.bag = nodes[below].bag;
        n.bag.insert(std::lower_bound(n.bag.begin(), n.bag.end(), x), x);
        return add(n);
    }

    int forget(int below, int x) {
        NiceNode n;
        n.kind = NodeKind::Forget;
        n.child1 = below;
        n.x = x;
        n.bag = nodes[below].bag;
        n.bag.erase(std::find(n.bag.begin(), n.bag.end(), x));
        return add(n);
    }

    int join(int left, int right) {
        NiceNode n;
        n.kind = NodeKind::Join;
        n.child1 = left;
        n.child2 = right;
        n.bag = nodes[left].bag;
        return add(n);
    }

    int edge(int below, int u, int v) {
        NiceNode n;
        n.kind = NodeKind::IntroduceEdge;
        n.child1 = below;
        n.u = std::min(u, v);
        n.v = std::max(u, v);
        n.bag = nodes[below].bag;
        return add(n);
    }

    // forget (cur \ target) then introduce (target \ cur), ascending label order
    int adapt(int below, const std::set<int>& target) {
        std::vector<int> cur(nodes[below].bag.begin(), nodes[below].bag.end());
        int top = below;
        for (int x : cur)
            if (!target.count(x)) top = forget(top, x);
        for (int x : target) {
            const auto& bag = nodes[top].bag;
            if (!std::binary_search(bag.begin(), bag.end(), x)) top = introduce(top, x);
        }
        return top;
    }
};

} // namespace

NiceTreeDecomposition nicify(const TreeDecomposition& td, const LabeledGraph& g) {
    ValidityReport rep = validate(td, g);
    if (!rep.valid)
        throw InvalidDecompositionError("cannot nicify invalid decomposition: " +
                                        rep.violations.front());

    std::vector<std::vector<int>> children(td.bags.size());
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        if (static_cast<int>(i) != td.root) children[td.parent[i]].push_back(static_cast<int>(i));

    Builder b;
    // iterative post-order over the rooted td
    std::vector<int> top_of(td.bags.size(), -1);
    std::vector<std::pair<int, std::size_t>> stack{{td.root, 0}};
    while (!stack.empty()) {
        auto& [t, next_child] = stack.back();
        if (next_child < children[t].size()) {
            int c = children[t][next_child++];
            stack.emplace_back(c, 0);
            continue;
        }
        const std::set<int>& bag = td.bags[t];
        int top;
        if (children[t].empty()) {
            top = b.leaf();
            for (int x : bag) top = b.introduce(top, x);
        } else {
            top = b.adapt(top_of[children[t][0]], bag);
            for (std::size_t i = 1; i < children[t].size(); ++i)
                top = b.join(top, b.adapt(top_of[children[t][i]], bag));
        }
        top_of[t] = top;
        stack.pop_back();
    }
    int top = top_of[td.root];
    for (int x : td.bags[td.root]) top = b.forget(top, x);

    // locate the unique Forget node of each vertex
    std::map<int, int> forget_node;
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
        if (b.nodes[i].kind == NodeKind::Forget) forget_node[b.nodes[i].x] = static_cast<int>(i);

    // assign each edge to the lower of its endpoints' forgets; the Forget node
    // whose child-side bag still holds both endpoints is the right spot
    std::map<int, std::vector<std::pair<int, int>>> edges_at;
    for (auto [u, v] : g.edges()) {
        int fu = forget_node.at(u), fv = forget_node.at(v);
        const auto& below_fu = b.nodes[b.nodes[fu].child1].bag;
        int f = std::binary_search(below_fu.begin(), below_fu.end(), v) ? fu : fv;
        edges_at[f].emplace_back(std::min(u, v), std::max(u, v));
    }
    for (auto& [f, list] : edges_at) {
        std::sort(list.begin(), list.end());
        int below = b.nodes[f].child1;
        for (auto [u, v] : list) below = b.edge(below, u, v);
        b.nodes[f].child1 = below;
    }

    // linearize children-before-parents
    NiceTreeDecomposition out;
    std::vector<int> newid(b.nodes.size(), -1);
    std::vector<std::pair<int, bool>> st2{{top, false}};
    while (!st2.empty()) {
        auto [id, expanded] = st2.back();
        st2.pop_back();
        if (expanded) {
            NiceNode n = b.nodes[id];
            if (n.child1 != -1) n.child1 = newid[n.child1];
            if (n.child2 != -1) n.child2 = newid[n.child2];
            newid[id] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(std::move(n));
        } else {
            st2.emplace_back(id, true);
            if (b.nodes[id].child2 != -1) st2.emplace_back(b.nodes[id].child2, false);
            if (b.nodes[id].child1 != -1) st2.emplace_back(b.nodes[id].child1, false);
        }
    }
    out.root = newid[top];
    return out;
}

ValidityReport validate_nice(const NiceTreeDecomposition& ntd, const LabeledGraph& g) {
    ValidityReport report;
    const auto& nodes = ntd.nodes;
    if (nodes.empty() || ntd.root < 0 || static_cast<std::size_t>(ntd.root) >= nodes.size()) {
        report.violations.push_back("malformed nice decomposition");
        return report;
    }
    auto fail = [&](const std::string& s) { report.violations.push_back(s); };

    if (!nodes[ntd.root].bag.empty()) fail("root bag is not empty");
    std::map<std::pair<int, int>, int> edge_intro_count;
    std::vector<int> parent(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NiceNode& n = nodes[i];
        auto child_ok = [&](int c) {
            if (c < 0 || static_cast<std::size_t>(c) >= i) return false; // children precede parents
            if (parent[c] != -1) return false;
            parent[c] = static_cast<int>(i);
            return true;
        };
        switch (n.kind) {
        case NodeKind::Leaf:
            if (!n.bag.empty()) fail("leaf bag not empty at node " + std::to_string(i));
            break;
        case NodeKind::IntroduceVertex: {
            if (!child_ok(n.child1)) { fail("bad child link at node " + std::to_string(i)); break; }
            auto expect = nodes[n.child1].bag;
            expect.insert(std::lower_bound(expect.begin(), expect.end(), n.x), n.x);
            if (expect != n.bag ||
                std::binary_search(nodes[n.child1].bag.begin(), nodes[n.child1].bag.end(), n.x))
                fail("introduce node " + std::to_string(i) + " does not add exactly one vertex");
            break;
        }
        case NodeKind::Forget: {
            if (!child_ok(n.child1)) { fail("bad child link at node " + std::to_string(i)); break; }
            auto expect = nodes[n.child1].bag;
            auto it = std::find(expect.begin(), expect.end(), n.x);
            if (it == expect.end()) { fail("forget of absent vertex at node " + std::to_string(i)); break; }
            expect.erase(it);
            if (expect != n.bag) fail("forget node " + std::to_string(i) + " bag mismatch");
            break;
        }
        case NodeKind::IntroduceEdge: {
            if (!child_ok(n.child1)) { fail("bad child link at node " + std::to_string(i)); break; }
            if (n.bag != nodes[n.child1].bag) fail("introduce-edge changed the bag");
            if (!std::binary_search(n.bag.begin(), n.bag.end(), n.u) ||
                !std::binary_search(n.bag.begin(), n.bag.end(), n.v))
                fail("introduce-edge node " + std::to_string(i) + " bag misses an endpoint");
            if (!g.has_edge(n.u, n.v))
                fail("introduced pair (" + std::to_string(n.u) + "," + std::to_string(n.v) +
                     ") is not a graph edge");
            else
                ++edge_intro_count[{n.u, n.v}];
            break;
        }
        case NodeKind::Join:
            if (!child_ok(n.child1) || !child_ok(n.child2)) {
                fail("bad child link at node " + std::to_string(i));
                break;
            }
            if (nodes[n.child1].bag != n.bag || nodes[n.child2].bag != n.bag)
                fail("join children bags differ at node " + std::to_string(i));
            break;
        }
    }
    for (auto [u, v] : g.edges()) {
        int c = edge_intro_count.count({u, v}) ? edge_intro_count[{u, v}] : 0;
        if (c != 1)
            fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") introduced " +
                 std::to_string(c) + " times");
    }
    // underlying decomposition properties
    std::map<int, std::vector<int>> occurrence;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int v : nodes[i].bag) occurrence[v].push_back(static_cast<int>(i));
    for (int v : g.vertices())
        if (!occurrence.count(v)) fail("vertex " + std::to_string(v) + " occurs in no bag");
    for (const auto& [v, occ] : occurrence) {
        std::set<int> occset(occ.begin(), occ.end());
        std::size_t internal = 0;
        for (int id : occ)
            if (id != ntd.root && parent[id] != -1 && occset.count(parent[id])) ++internal;
        if (internal + 1 != occ.size())
            fail("occurrence set of " + std::to_string(v) + " is not connected");
    }
    report.width = ntd.width();
    report.valid = report.violations.empty();
    return report;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td,
                   const std::vector<int>& vertex_order) {
    std::map<int, int> pos;
    for (std::size_t i = 0; i < vertex_order.size(); ++i)
        pos[vertex_order[i]] = static_cast<int>(i) + 1;
    std::size_t max_bag = 0;
    for (const auto& b : td.bags) max_bag = std::max(max_bag, b.size());
    out << "s td " << td.bags.size() << ' ' << max_bag << ' ' << vertex_order.size() << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) {
            auto it = pos.find(v);
            if (it == pos.end()) throw Error("bag vertex " + std::to_string(v) + " not in instance");
            out << ' ' << it->second;
        }
        out << '\n';
    }
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        if (td.parent[i] != -1) out << td.parent[i] + 1 << ' ' << i + 1 << '\n';
}

TreeDecomposition read_pace_td(std::istream& in, const std::vector<int>& vertex_order) {
    std::string line;
    std::size_t lineno = 0;
    long nbags = -1, maxbag = -1, nverts = -1;
    TreeDecomposition td;
    std::vector<bool> seen_bag;
    std::vector<std::pair<int, int>> tree_edges;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok == "c") continue;
        if (tok == "s") {
            std::string td_tok;
            if (!(ss >> td_tok >> nbags >> maxbag >> nverts) || td_tok != "td")
                throw ParseError(lineno, "expected 's td <bags> <max_bag_size> <vertices>'");
            if (nbags < 1) throw ParseError(lineno, "need at least one bag");
            if (nverts != static_cast<long>(vertex_order.size()))
                throw ParseError(lineno, "vertex count does not match the instance");
            td.bags.assign(nbags, {});
            td.parent.assign(nbags, -1);
            seen_bag.assign(nbags, false);
        } else if (tok == "b") {
            if (nbags < 0) throw ParseError(lineno, "bag line before header");
            long id;
            if (!(ss >> id) || id < 1 || id > nbags) throw ParseError(lineno, "bad bag id");
            if (seen_bag[id - 1]) throw ParseError(lineno, "duplicate bag id");
            seen_bag[id - 1] = true;
            long v;
            while (ss >> v) {
                if (v < 1 || v > nverts) throw ParseError(lineno, "bag vertex out of range");
                td.bags[id - 1].insert(vertex_order[v - 1]);
            }
        } else {
            if (nbags < 0) throw ParseError(lineno, "edge line before header");
            long i = 0, j;
            try {
                i = std::stol(tok);
            } catch (...) {
                throw ParseError(lineno, "expected bag edge line");
            }
            if (!(ss >> j)) throw ParseError(lineno, "expected two bag ids");
            if (i < 1 || i > nbags || j < 1 || j > nbags || i == j)
                throw ParseError(lineno, "bad tree edge");
            tree_edges.emplace_back(static_cast<int>(i) - 1, static_cast<int>(j) - 1);
        }
    }
    if (nbags < 0) throw ParseError(lineno, "missing 's td' header");
    if (tree_edges.size() + 1 != static_cast<std::size_t>(nbags))
        throw ParseError(lineno, "tree edge count must be bags-1");
    // orient from bag 1 as root
    std::vector<std::vector<int>> adj(nbags);
    for (auto [i, j] : tree_edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    td.root = 0;
    std::vector<bool> visited(nbags, false);
    std::deque<int> queue{0};
    visited[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int y : adj[x])
            if (!visited[y]) {
                visited[y] = true;
                td.parent[y] = x;
                ++reached;
                queue.push_back(y);
            }
    }
    if (reached != static_cast<std::size_t>(nbags))
        throw ParseError(lineno, "bag tree is not connected");
    return td;
}

void write_pace_td_file(const std::string& path, const TreeDecomposition& td,
                        const std::vector<int>& vertex_order) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    write_pace_td(out, td, vertex_order);
}

TreeDecomposition read_pace_td_file(const std::string& path,
                                    const std::vector<int>& vertex_order) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_pace_td(in, vertex_order);
}

} // namespace lc
