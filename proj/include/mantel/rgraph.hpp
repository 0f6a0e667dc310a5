#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mantel {

using Vertex = int;                // 1-based
using Edge = std::vector<Vertex>;  // sorted ascending, all entries distinct

// An r-uniform hypergraph on vertices 1..n. Edges are stored sorted and
// deduplicated in lexicographic order, so structurally equal graphs compare
// equal bit for bit. Isolated vertices are legal and preserved. Immutable
// after construction; all operations below are pure functions.
class RGraph {
public:
    RGraph(int n, int r, std::vector<Edge> edges);

    static RGraph empty(int n, int r) { return RGraph(n, r, {}); }
    static RGraph complete(int n, int r);

    int n() const { return n_; }
    int r() const { return r_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }

    int degree(Vertex v) const;
    bool has_edge(const Edge& sorted_edge) const;

    bool operator==(const RGraph&) const = default;

private:
    int n_;
    int r_;
    std::vector<Edge> edges_;
    std::vector<int> degrees_;
};

struct DegreeProfile {
    int min = 0;
    int max = 0;
    long long avg_num = 0;  // average degree as a reduced fraction
    long long avg_den = 1;
};

// Disjoint nonempty vertex sets; used by the r-partition solver. Parts that
// would be empty are omitted, so parts.size() <= r.
struct Partition {
    std::vector<std::vector<Vertex>> parts;
};

// Link of v: the (r-1)-sets completing v to an edge. Same vertex labels,
// v becomes isolated.
RGraph link(const RGraph& h, Vertex v);

// i-th shadow: all (r-i)-subsets contained in some edge, 1 <= i <= r-1.
RGraph shadow(const RGraph& h, int level);

// Remove v and its incident edges; vertices above v shift down by one.
RGraph remove_vertex(const RGraph& h, Vertex v);

// Replace vertex i by a class of sizes[i] fresh vertices and every edge by
// the complete r-partite r-graph on its classes. Zero sizes drop the vertex.
RGraph blowup(const RGraph& g, const std::vector<int>& sizes);

// Add a fresh vertex n+1 whose link equals link(h, v).
RGraph duplicate_vertex(const RGraph& h, Vertex v);

bool is_2_covered(const RGraph& h);

// (n, r, r-1)-system test: every (r-1)-set lies in at most one edge.
bool is_partial_steiner(const RGraph& h);

DegreeProfile degree_profile(const RGraph& h);

// Relabel away vertices of degree zero (keeps relative order).
RGraph drop_isolated(const RGraph& h);

// --- .hg text format ------------------------------------------------------
// Line 1: "r n". Every following non-empty line that does not start with '#'
// is one edge given as r whitespace-separated 1-based vertex indices.
// The parser sorts and deduplicates edges and rejects arity violations.

RGraph parse_hg(std::istream& in);
RGraph parse_hg_string(const std::string& text);
RGraph load_hg(const std::string& path);
std::string to_hg(const RGraph& h);
void save_hg(const RGraph& h, const std::string& path);

}  // namespace mantel
