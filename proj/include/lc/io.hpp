#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "lc/graph.hpp"

namespace lc {

// Parsed .lcp file. g_vertex_order preserves the gv-line order from the file;
// PACE .td files index G vertices by 1-based position in this list.
struct InstanceFile {
    std::string path;
    InstancePair inst;
    std::vector<int> g_vertex_order;
};

// .lcp format, line oriented, 'c' comments:
//   p lcp <nG> <mG> <nH> <mH>
//   nG lines "gv <label>", mG lines "ge <u> <v>",
//   nH lines "hv <label>", mH lines "he <u> <v>".
InstancePair read_lcp(std::istream& in, std::vector<int>* g_vertex_order = nullptr);
InstanceFile read_lcp_file(const std::string& path);
void write_lcp(std::ostream& out, const InstancePair& inst);
std::string to_lcp(const InstancePair& inst);
void write_lcp_file(const std::string& path, const InstancePair& inst);

using Certificate = std::variant<ContractionSequence, WitnessStructure>;

// Certificate file: either "ct <u> <v>" lines in application order or
// "w <rep> <m1> <m2> ..." lines; the first non-comment token decides.
Certificate read_certificate(std::istream& in);
Certificate read_certificate_file(const std::string& path);
void write_certificate(std::ostream& out, const Certificate& cert);
void write_certificate_file(const std::string& path, const Certificate& cert);

} // namespace lc
