#pragma once

#include "backdoor/graph.hpp"

namespace backdoor {

struct Visibility {
    bool visible = false;
    /// Vertex C not adjacent to B, and the collider path from C into A that
    /// certifies the edge. Empty for DAG/CPDAG edges, which are visible by fiat.
    std::optional<Vertex> witness;
    std::optional<Path> witness_path;
};

/// Classifies the directed edge a -> b of g.
Visibility edge_visibility(const MixedGraph& g, Vertex a, Vertex b);
bool is_visible(const MixedGraph& g, Vertex a, Vertex b);

/// Re-checks a witness against the definition without any search.
bool verify_visibility_witness(const MixedGraph& g, Vertex a, Vertex b, const Visibility& v);

/// Definite status paths between x and y whose first edge is not a visible
/// directed edge out of x; lexicographic order.
std::vector<Path> back_door_paths(const MixedGraph& g, Vertex x, Vertex y);
bool is_back_door(const MixedGraph& g, const Path& p);

}  // namespace backdoor
