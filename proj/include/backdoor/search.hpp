#pragma once

#include "backdoor/graph.hpp"

namespace backdoor {

/// A DAG/MAG representative R of the input graph with no extra edges into the
/// target, and `lowered`: R without the directed edges out of the target that
/// are visible in the input graph.
struct RepresentativeGraph {
    MixedGraph full;
    MixedGraph lowered;
    GraphKind source_kind;
    Vertex target;
    /// Order in which circle-component vertices were eliminated (CPDAG/PAG only).
    std::vector<Vertex> elimination_order;
};

/// DAG/MAG inputs are their own representative. For CPDAG/PAG inputs, o-> edges
/// become -> and the circle component is oriented along a perfect elimination
/// ordering that always eliminates the smallest simplicial vertex other than
/// the target, so no circle edge is oriented into the target. Throws GraphError
/// when the circle component is not chordal.
RepresentativeGraph construct_representative(const MixedGraph& g, Vertex x);

/// Wraps a caller-supplied representative without checking that it belongs to
/// the equivalence class; used to study representatives outside R*.
RepresentativeGraph representative_from(const MixedGraph& g, const MixedGraph& r, Vertex x);

/// r minus every edge x -> v that is directed and visible in g.
MixedGraph lower_representative(const MixedGraph& g, const MixedGraph& r, Vertex x);

bool same_skeleton(const MixedGraph& a, const MixedGraph& b);

/// Simplicial-vertex elimination of the circle (o-o) component of g.
/// Returns the elimination order; `last` is never eliminated while it still
/// has circle edges. Throws GraphError if the component is not chordal.
std::vector<Vertex> circle_elimination_order(const MixedGraph& g, std::optional<Vertex> last);

/// Chordality of the undirected graph formed by the o-o edges, by maximum
/// cardinality search (ties broken by label).
bool circle_component_chordal(const MixedGraph& g);

struct BackdoorSearch {
    std::optional<VertexSet> set;
    RepresentativeGraph representative;
    VertexSet dsep;
    VertexSet possible_de;
    /// dsep intersected with possible_de.
    VertexSet intersection;
    bool adjacent = false;  ///< y adjacent to x in the lowered representative
};

/// Existence test and construction for a single pair. When a set is returned
/// it is re-checked against the criterion, and for DAG/CPDAG/MAG inputs the
/// matching closed-form rule must agree on existence; either failure throws
/// std::logic_error.
BackdoorSearch find_backdoor_set(const MixedGraph& g, Vertex x, Vertex y);

/// Same decision rule against a given representative, with no cross-checks.
BackdoorSearch find_backdoor_set_with(const MixedGraph& g, const RepresentativeGraph& rep, Vertex y);

std::optional<VertexSet> find_backdoor_set_dag(const MixedGraph& dag, Vertex x, Vertex y);
std::optional<VertexSet> find_backdoor_set_cpdag(const MixedGraph& cpdag, Vertex x, Vertex y);
std::optional<VertexSet> find_backdoor_set_mag(const MixedGraph& mag, Vertex x, Vertex y);

/// Inclusion-minimal subsets of the constructed set that satisfy the
/// criterion, by increasing size then lexicographically. Throws GraphError if
/// no back-door set exists.
std::vector<VertexSet> minimal_backdoor_sets(const MixedGraph& g, Vertex x, Vertex y);

}  // namespace backdoor
