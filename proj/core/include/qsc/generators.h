#pragma once

#include <cstdint>

#include "qsc/graph.h"

namespace qsc {

/// Uniform-ish random d-regular graph by configuration-model pairing with full
/// restart on any self-loop or multi-edge. Requires n*d even and d < n.
Graph gen_regular(int n, int d, std::uint64_t seed);

/// Planar graph with max degree <= d: greedy shortest-edge triangulation of
/// random points in the unit square, then seeded edge deletion until every
/// vertex has degree <= d. Not exactly uniform over planar graphs.
Graph gen_bounded_planar(int n, int d, std::uint64_t seed);

/// Star with center 0 and leaves 1..leaves.
Graph gen_star(int leaves);

Graph empty_graph(int n);
Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph petersen_graph();

/// Boyer-Myrvold planarity test.
bool is_planar(const Graph& g);

}  // namespace qsc
