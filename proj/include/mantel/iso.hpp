#pragma once

#include <optional>

#include "mantel/rgraph.hpp"

namespace mantel {

// Vertex bijection mapping the edge set of g onto the edge set of h, or
// nullopt. map[v-1] is the image of v. Exhaustive backtracking with degree
// pruning; intended scale v <= 12, |edges| <= 50.
std::optional<std::vector<Vertex>> is_isomorphic(const RGraph& g, const RGraph& h);

// Vertex map (not necessarily injective) sending every edge of g to an edge
// of h, or nullopt. Absence is definitive (backtracking).
std::optional<std::vector<Vertex>> find_homomorphism(const RGraph& g, const RGraph& h);

// A partition into at most r nonempty parts such that every edge meets each
// part in exactly one vertex, if one exists. Vertices in no edge are assigned
// last, to the first part. Absence is definitive.
std::optional<Partition> find_r_partition(const RGraph& h);

// True when the vertex subset (given sorted) carries a copy of s using all of
// its |s.n()| vertices: an injective map of s's vertices onto the subset that
// sends edges to edges of h.
bool spans_copy(const RGraph& h, const std::vector<Vertex>& subset, const RGraph& s);

}  // namespace mantel
