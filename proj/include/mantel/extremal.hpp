#pragma once

#include <cstdint>

#include "mantel/families.hpp"
#include "mantel/rgraph.hpp"

namespace mantel {

// Balanced complete r-partite r-graph on [n]; parts are contiguous blocks,
// the first n mod r parts one vertex larger.
RGraph gen_turan(int n, int r);

// Steiner triple systems for k in {3, 7, 9}: the single triple, the cyclic
// difference-set construction, and the affine plane of order 3.
RGraph gen_sts(int k);

struct ExtremalConfig {
    bool incomplete = false;       // allow the heuristic lower-bound mode
    int heuristic_iters = 200;     // greedy passes in incomplete mode
    std::uint64_t seed = 0x6d616e74656cULL;
};

struct ExtremalReport {
    int n = 0;
    int r = 0;
    TrianglePattern pattern;
    int max_edges = 0;
    bool complete = false;  // true when the search proves optimality
    std::vector<RGraph> witnesses;  // extremal graphs, pairwise non-isomorphic
    std::uint64_t nodes_explored = 0;
    double wall_seconds = 0.0;
};

// Exact Turan number by DFS over edge subsets with incremental freeness and
// best-so-far pruning. Complete mode requires C(n, r) <= 24; larger inputs
// need cfg.incomplete and return a greedy lower bound.
ExtremalReport ex_search(int n, int r, const TrianglePattern& pattern,
                         const ExtremalConfig& cfg = {});

struct EdgeBoundReport {
    bool applicable = false;  // input is T_r-free
    bool ok = false;          // |H| <= n^r / r^r
    bool equality = false;
    bool iso_turan = false;   // at equality: r | n and H iso to T^r(n)
};

EdgeBoundReport edge_bound_check(const RGraph& h);

struct SymmetrizationResult {
    RGraph pattern_graph;            // twin classes merged, relabeled 1..m
    std::vector<int> sizes;          // class sizes in pattern vertex order
    bool is_symmetrized = false;     // pattern is 2-covered
    std::vector<std::vector<Vertex>> classes;  // original vertices per class
};

// Merge twin classes (equal links, no common edge) in ascending vertex order
// until no twins remain; blowup(pattern, sizes) reproduces the input.
SymmetrizationResult symmetrize_decompose(const RGraph& h);

enum class ScenarioStatus { Holds, Vacuous, CounterexampleLogged };

struct StabilityReport {
    bool pattern_free = false;  // Delta_r-free
    FreenessResult freeness;
    double min_degree = 0.0;
    double threshold = 0.0;  // n^{r-1}/r^{r-1} - eps n^{r-1}
    bool degree_ok = false;
    bool r_partite = false;
    ScenarioStatus status = ScenarioStatus::Vacuous;
};

// Small-n harness for the degree-stability implication: Delta_r-free with
// min degree above the threshold implies r-partite. Counterexamples are
// reported, never thrown; the guarantee is asymptotic.
StabilityReport degree_stability_check(const RGraph& h, double eps);

struct ExtendabilityReport {
    bool t1_free = false;  // T_{r,1}-free
    FreenessResult freeness;
    double min_degree = 0.0;
    double threshold = 0.0;
    bool degree_ok = false;
    bool minus_v_partite = false;
    bool h_partite = false;
    ScenarioStatus status = ScenarioStatus::Vacuous;
};

// Vertex-extendability scenario: T_{r,1}-free, min degree above threshold,
// h - v r-partite; conclusion is that h is r-partite.
ExtendabilityReport vertex_extendability_check(const RGraph& h, Vertex v, double eps);

// Every vertex pair in exactly one edge (uniformity 3 required).
bool is_sts(const RGraph& s);

// Number of |V(s)|-subsets of V(h) spanning a copy of s.
long long count_copies(const RGraph& h, const RGraph& s);

// Auxiliary k-graph with k = v(s): a k-set is an edge iff it spans a copy.
RGraph aux_kgraph(const RGraph& h, const RGraph& s);

// Pairwise intersection sizes of distinct edges all lie in L.
bool l_intersect_check(const RGraph& h, const std::vector<int>& l);

struct SurveyReport {
    int r = 0;
    std::vector<int> l;
    int n_max = 0;
    double best_value = 0.0;
    std::vector<RGraph> witnesses;  // best graphs, pairwise non-isomorphic
    bool matches_one_over_rr = false;
    std::uint64_t graphs_evaluated = 0;
};

// Max Lagrangian over L-intersecting r-graphs on up to n_max vertices.
// L-intersecting graphs are cliques in the pairwise-compatibility graph of
// potential edges, and the Lagrangian is monotone under edge addition, so
// only maximal cliques are evaluated (Bron-Kerbosch enumeration).
SurveyReport l_intersect_lagrangian_survey(int r, const std::vector<int>& l, int n_max);

}  // namespace mantel
