#pragma once

#include <array>
#include <string>

#include "mantel/rgraph.hpp"

namespace mantel {

enum class PatternKind { Delta, CFamily, TFamily, Weak, Single };

// Selects one of the triangle families for freeness tests. For Single the
// index is normalized to 1 <= i <= ceil(r/2); the two halves of the index
// range give isomorphic patterns. r == 0 means "take r from the graph".
struct TrianglePattern {
    PatternKind kind = PatternKind::TFamily;
    int r = 0;
    int i = 0;

    static TrianglePattern delta(int r = 0) { return {PatternKind::Delta, r, 0}; }
    static TrianglePattern cfam(int r = 0) { return {PatternKind::CFamily, r, 0}; }
    static TrianglePattern tfam(int r = 0) { return {PatternKind::TFamily, r, 0}; }
    static TrianglePattern weak(int r = 0) { return {PatternKind::Weak, r, 0}; }
    static TrianglePattern single(int r, int i);

    // CLI names: delta | cfam | tfam | weak | t:<r>:<i>
    static TrianglePattern parse(const std::string& name);
    std::string name() const;
};

// The 3-edge triangle r-graph on vertex set [2r+1]:
//   {1..r}, {1..i} u {r+1..2r-i}, {i+1..r} u {r+1} u {2r-i+1..2r-1}.
// Accepts 1 <= i <= r-1.
RGraph gen_T(int r, int i);

// One ordered role assignment each; the freeness scan tries all roles.
bool is_C_triple(const Edge& a, const Edge& b, const Edge& c);     // a^b subset of c
bool is_T_triple(const Edge& a, const Edge& b, const Edge& c);     // a in b|c, (b&c)\a nonempty
bool is_weak_triple(const Edge& a, const Edge& b, const Edge& c);  // |c&(a^b)| > |a^b|/2

// True iff {a,b,c} spans a copy of gen_T(r,i) restricted to its non-isolated
// vertices. Uses the closed role pattern; cross-checked against isomorphism
// in the test suite.
bool is_single_T_triple(const Edge& a, const Edge& b, const Edge& c, int i);

// Does some role assignment of the three (distinct) edges match the pattern?
bool triple_violates(const Edge& a, const Edge& b, const Edge& c, const TrianglePattern& p);

struct FreenessResult {
    bool free = true;
    std::array<Edge, 3> witness{};  // offending edges in scan order when !free
};

// Scan all edge triples against the pattern predicate; first witness wins.
FreenessResult is_free(const RGraph& h, const TrianglePattern& p);

// T_r-freeness via the homomorphism route: no member of Delta_r maps into h.
// Must agree with is_free(h, tfam).
bool is_T_free_via_hom(const RGraph& h);

}  // namespace mantel
