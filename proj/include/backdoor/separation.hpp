#pragma once

#include "backdoor/graph.hpp"

namespace backdoor {

struct BlockingWitness {
    enum class Reason { MConnecting, DefiniteNoncolliderInZ, ColliderNotAncestorOfZ };

    Path path;
    bool blocked = false;
    Reason reason = Reason::MConnecting;
    /// The first vertex that blocks the path, when blocked.
    std::optional<Vertex> vertex;
};

std::string_view to_string(BlockingWitness::Reason reason);

/// Tests a definite status path against conditioning set z. A collider passes
/// when it is an ancestor of some member of z (ancestor sets are reflexive).
BlockingWitness is_m_connecting(const MixedGraph& g, const Path& p, const VertexSet& z);

/// Unchecked form for hot loops: p must be a definite status path of g and
/// an_z must equal ancestors(g, z).
bool is_blocked(const MixedGraph& g, const Path& p, const VertexSet& z, const VertexSet& an_z);

/// First (lexicographically) m-connecting definite status path between x and y.
std::optional<Path> m_connecting_path(const MixedGraph& g, Vertex x, Vertex y, const VertexSet& z);

/// True iff no definite status path between x and y is m-connecting given z.
bool m_separated(const MixedGraph& g, Vertex x, Vertex y, const VertexSet& z);

/// D-SEP(x, y, g): vertices V != x reachable from x by a collider path whose
/// vertices all lie in an({x, y}). Only defined for DAG and MAG kinds.
VertexSet d_sep_set(const MixedGraph& g, Vertex x, Vertex y);

/// Clauses of the D-SEP lemma for one pair; `consistent()` is the lemma.
struct DSepLemmaReport {
    bool separable = false;                       ///< (i) some subset of V\{x,y} separates
    bool y_outside_dsep = false;                  ///< (ii)
    bool dsep_separates = false;                  ///< (iii)
    std::optional<bool> nonadjacent;              ///< (iv), MAG kind only
    VertexSet dsep;

    bool consistent() const {
        bool ok = separable == y_outside_dsep && y_outside_dsep == dsep_separates;
        if (nonadjacent) ok = ok && *nonadjacent == separable;
        return ok;
    }
};

/// Evaluates every clause independently; (i) by exhaustive subset search, so
/// keep graphs small.
DSepLemmaReport check_dsep_lemma(const MixedGraph& g, Vertex x, Vertex y);

}  // namespace backdoor
