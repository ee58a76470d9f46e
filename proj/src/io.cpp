#include "lc/io.hpp"

#include <fstream>
#include <sstream>

namespace lc {

namespace {

struct LineReader {
    std::istream& in;
    std::size_t lineno = 0;

    // next non-comment, non-blank line split into tokens; false at EOF
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            tokens.clear();
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0] == "c") continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) const { throw ParseError(lineno, why); }

    int to_int(const std::string& tok) const {
        try {
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
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

InstancePair read_lcp(std::istream& in, std::vector<int>* g_vertex_order) {
    LineReader rd{in};
    std::vector<std::string> t;
    if (!rd.next(t)) throw ParseError(rd.lineno, "missing 'p lcp' header");
    if (t.size() != 6 || t[0] != "p" || t[1] != "lcp") rd.fail("expected 'p lcp <nG> <mG> <nH> <mH>'");
    int ng = rd.to_int(t[2]), mg = rd.to_int(t[3]), nh = rd.to_int(t[4]), mh = rd.to_int(t[5]);
    if (ng < 0 || mg < 0 || nh < 0 || mh < 0) rd.fail("negative count in header");

    LabeledGraph g, h;
    std::vector<int> order;
    for (int i = 0; i < ng; ++i) {
        if (!rd.next(t)) throw ParseError(rd.lineno, "unexpected end of file, expected gv line");
        if (t.size() != 2 || t[0] != "gv") rd.fail("expected 'gv <label>'");
        int v = rd.to_int(t[1]);
        if (v < 0) rd.fail("negative label");
        if (g.has_vertex(v)) rd.fail("duplicate gv label " + t[1]);
        g.add_vertex(v);
        order.push_back(v);
    }
    for (int i = 0; i < mg; ++i) {
        if (!rd.next(t)) throw ParseError(rd.lineno, "unexpected end of file, expected ge line");
        if (t.size() != 3 || t[0] != "ge") rd.fail("expected 'ge <u> <v>'");
        int u = rd.to_int(t[1]), v = rd.to_int(t[2]);
        if (!g.has_vertex(u) || !g.has_vertex(v)) rd.fail("ge endpoint not declared by gv");
        if (u == v) rd.fail("self-loop");
        if (g.has_edge(u, v)) rd.fail("duplicate ge edge");
        g.add_edge(u, v);
    }
    for (int i = 0; i < nh; ++i) {
        if (!rd.next(t)) throw ParseError(rd.lineno, "unexpected end of file, expected hv line");
        if (t.size() != 2 || t[0] != "hv") rd.fail("expected 'hv <label>'");
        int v = rd.to_int(t[1]);
        if (!g.has_vertex(v)) rd.fail("hv label " + t[1] + " does not appear among gv labels");
        if (h.has_vertex(v)) rd.fail("duplicate hv label " + t[1]);
        h.add_vertex(v);
    }
    for (int i = 0; i < mh; ++i) {
        if (!rd.next(t)) throw ParseError(rd.lineno, "unexpected end of file, expected he line");
        if (t.size() != 3 || t[0] != "he") rd.fail("expected 'he <u> <v>'");
        int u = rd.to_int(t[1]), v = rd.to_int(t[2]);
        if (!h.has_vertex(u) || !h.has_vertex(v)) rd.fail("he endpoint not declared by hv");
        if (u == v) rd.fail("self-loop");
        if (h.has_edge(u, v)) rd.fail("duplicate he edge");
        h.add_edge(u, v);
    }
    if (rd.next(t)) rd.fail("trailing content after instance");
    if (g_vertex_order) *g_vertex_order = order;
    return InstancePair(std::move(g), std::move(h));
}

InstanceFile read_lcp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file " + path);
    std::vector<int> order;
    InstancePair inst = read_lcp(in, &order);
    return InstanceFile{path, std::move(inst), std::move(order)};
}

void write_lcp(std::ostream& out, const InstancePair& inst) {
    auto ge = inst.g.edges();
    auto he = inst.h.edges();
    out << "p lcp " << inst.g.vertex_count() << ' ' << ge.size() << ' '
        << inst.h.vertex_count() << ' ' << he.size() << '\n';
    for (int v : inst.g.vertices()) out << "gv " << v << '\n';
    for (auto [u, v] : ge) out << "ge " << u << ' ' << v << '\n';
    for (int v : inst.h.vertices()) out << "hv " << v << '\n';
    for (auto [u, v] : he) out << "he " << u << ' ' << v << '\n';
}

std::string to_lcp(const InstancePair& inst) {
    std::ostringstream ss;
    write_lcp(ss, inst);
    return ss.str();
}

void write_lcp_file(const std::string& path, const InstancePair& inst) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write instance file " + path);
    write_lcp(out, inst);
}

Certificate read_certificate(std::istream& in) {
    LineReader rd{in};
    std::vector<std::string> t;
    ContractionSequence seq;
    WitnessStructure wit;
    enum { Unknown, Seq, Wit } kind = Unknown;
    while (rd.next(t)) {
        if (t[0] == "ct") {
            if (kind == Wit) rd.fail("mixed ct and w lines");
            kind = Seq;
            if (t.size() != 3) rd.fail("expected 'ct <u> <v>'");
            seq.pairs.emplace_back(rd.to_int(t[1]), rd.to_int(t[2]));
        } else if (t[0] == "w") {
            if (kind == Seq) rd.fail("mixed ct and w lines");
            kind = Wit;
            if (t.size() < 2) rd.fail("expected 'w <rep> <members...>'");
            int rep = rd.to_int(t[1]);
            if (wit.classes.count(rep)) rd.fail("duplicate witness class for " + t[1]);
            auto& cls = wit.classes[rep];
            cls.insert(rep);
            for (std::size_t i = 2; i < t.size(); ++i) cls.insert(rd.to_int(t[i]));
        } else {
            rd.fail("expected 'ct' or 'w' line");
        }
    }
    if (kind == Wit) return wit;
    return seq; // an empty file is the empty contraction sequence
}

Certificate read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open certificate file " + path);
    return read_certificate(in);
}

void write_certificate(std::ostream& out, const Certificate& cert) {
    if (const auto* seq = std::get_if<ContractionSequence>(&cert)) {
        for (auto [u, v] : seq->pairs) out << "ct " << u << ' ' << v << '\n';
    } else {
        const auto& wit = std::get<WitnessStructure>(cert);
        for (const auto& [rep, members] : wit.classes) {
            out << "w " << rep;
            for (int m : members)
                if (m != rep) out << ' ' << m;
            out << '\n';
        }
    }
}

void write_certificate_file(const std::string& path, const Certificate& cert) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write certificate file " + path);
    write_certificate(out, cert);
}

} // namespace lc
