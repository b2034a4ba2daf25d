#pragma once

#include <array>
#include <cstdint>

#include "backdoor/graph.hpp"

namespace backdoor {

/// Unshielded colliders <a, b, c> with a < c, in lexicographic order.
std::vector<std::array<Vertex, 3>> unshielded_colliders(const MixedGraph& g);

/// Every DAG obtained by orienting the o-o edges of a CPDAG without creating a
/// cycle or a new unshielded collider. At most 12 o-o edges.
std::vector<MixedGraph> enumerate_cpdag_members(const MixedGraph& cpdag);

/// Smallest, then lexicographically first, subset of V \ {x, y} satisfying the
/// generalized back-door criterion. At most 9 vertices.
std::optional<VertexSet> oracle_backdoor_exists(const MixedGraph& g, Vertex x, Vertex y);

/// d-separation in a DAG by moralizing the ancestral subgraph of {x, y} + z.
bool dsep_moral_oracle(const MixedGraph& dag, Vertex x, Vertex y, const VertexSet& z);

/// CPDAG of a DAG: skeleton, unshielded colliders, then Meek's rules 1-4 to a
/// fixed point. Undirected edges are written o-o.
MixedGraph cpdag_of(const MixedGraph& dag);

/// MAG over the non-latent vertices. Two observed vertices are adjacent iff no
/// subset of the other observed vertices d-separates them; the mark at an
/// endpoint is a tail iff it is an ancestor of the other endpoint.
MixedGraph project_to_mag(const MixedGraph& dag, const VertexSet& latents);

struct ProjectedMag {
    MixedGraph dag;  ///< over observed and latent vertices
    VertexSet latents;
    MixedGraph mag;
};

/// DAG over n vertices labelled A, B, C, ...: a random vertex order, then each
/// forward pair becomes an edge with probability `density`.
MixedGraph random_dag(int n, double density, std::uint64_t seed);

/// MAG from a random DAG over n + L vertices with L in [0, 3] latents.
ProjectedMag random_projected_mag(int n, double density, std::uint64_t seed);

/// Deterministic per seed. PAG generation is not supported; n <= 15.
MixedGraph random_graph(GraphKind kind, int n, double density, std::uint64_t seed);

}  // namespace backdoor
