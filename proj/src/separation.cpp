#include "backdoor/separation.hpp"

#include <deque>

namespace backdoor {

std::string_view to_string(BlockingWitness::Reason reason) {
    switch (reason) {
        case BlockingWitness::Reason::MConnecting: return "m-connecting";
        case BlockingWitness::Reason::DefiniteNoncolliderInZ: return "definite-noncollider-in-Z";
        case BlockingWitness::Reason::ColliderNotAncestorOfZ: return "collider-not-ancestor-of-Z";
    }
    return "?";
}

namespace {

BlockingWitness classify(const MixedGraph& g, const Path& p, const VertexSet& z, const VertexSet& an_z) {
    BlockingWitness w{p, false, BlockingWitness::Reason::MConnecting, std::nullopt};
    for (size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        Vertex a = p.vertices[i - 1], b = p.vertices[i], c = p.vertices[i + 1];
        if (is_collider(g, a, b, c)) {
            if (!an_z.count(b)) {
                w.blocked = true;
                w.reason = BlockingWitness::Reason::ColliderNotAncestorOfZ;
                w.vertex = b;
                return w;
            }
        } else if (z.count(b)) {
            w.blocked = true;
            w.reason = BlockingWitness::Reason::DefiniteNoncolliderInZ;
            w.vertex = b;
            return w;
        }
    }
    return w;
}

void check_pair(const MixedGraph& g, Vertex x, Vertex y, const VertexSet& z) {
    if (!g.contains(x) || !g.contains(y)) throw GraphError("unknown vertex");
    if (x == y) throw GraphError("endpoints must differ");
    for (Vertex v : z)
        if (!g.contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
    if (z.count(x) || z.count(y)) throw GraphError("conditioning set contains an endpoint");
}

}  // namespace

BlockingWitness is_m_connecting(const MixedGraph& g, const Path& p, const VertexSet& z) {
    validate_path(g, p);
    if (!is_definite_status(g, p)) throw GraphError("path " + format_path(g, p) + " is not of definite status");
    if (z.count(p.front()) || z.count(p.back())) throw GraphError("conditioning set contains a path endpoint");
    return classify(g, p, z, ancestors(g, z));
}

bool is_blocked(const MixedGraph& g, const Path& p, const VertexSet& z, const VertexSet& an_z) {
    return classify(g, p, z, an_z).blocked;
}

std::optional<Path> m_connecting_path(const MixedGraph& g, Vertex x, Vertex y, const VertexSet& z) {
    check_pair(g, x, y, z);
    VertexSet an_z = ancestors(g, z);
    for (const Path& p : definite_status_paths(g, x, y))
        if (!classify(g, p, z, an_z).blocked) return p;
    return std::nullopt;
}

bool m_separated(const MixedGraph& g, Vertex x, Vertex y, const VertexSet& z) {
    return !m_connecting_path(g, x, y, z).has_value();
}

VertexSet d_sep_set(const MixedGraph& g, Vertex x, Vertex y) {
    if (g.kind() == GraphKind::CPDAG || g.kind() == GraphKind::PAG)
        throw GraphError("D-SEP is defined for DAGs and MAGs, not " + std::string(to_string(g.kind())));
    if (!g.contains(x) || !g.contains(y)) throw GraphError("unknown vertex");
    if (x == y) throw GraphError("D-SEP needs two distinct vertices");

    const VertexSet allowed = ancestors(g, {x, y});
    // A vertex entered with an arrowhead can sit inside a collider path; one
    // entered otherwise can only end it. Repeated vertices on a collider walk
    // can be cut out without losing the collider property, so plain
    // reachability over these states is exact.
    std::vector<bool> reached(g.size(), false), expanded(g.size(), false);
    std::deque<Vertex> queue{x};
    expanded[x] = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (w == x || !allowed.count(w)) continue;
            if (v != x && g.mark(v, w) != Mark::Arrow) continue;  // v must be a collider
            reached[w] = true;
            if (g.mark(w, v) == Mark::Arrow && !expanded[w]) {
                expanded[w] = true;
                queue.push_back(w);
            }
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < g.size(); ++v)
        if (reached[v]) out.insert(v);
    return out;
}

DSepLemmaReport check_dsep_lemma(const MixedGraph& g, Vertex x, Vertex y) {
    if (has_directed_cycle(g) || has_almost_directed_cycle(g))
        throw GraphError("D-SEP lemma needs an ancestral graph");
    DSepLemmaReport r;
    r.dsep = d_sep_set(g, x, y);
    r.y_outside_dsep = !r.dsep.count(y);
    r.dsep_separates = r.y_outside_dsep && m_separated(g, x, y, r.dsep);

    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.size(); ++v)
        if (v != x && v != y) rest.push_back(v);
    if (rest.size() > 20) throw GraphError("too many vertices for exhaustive separation search");
    for (unsigned long mask = 0; mask < (1ul << rest.size()) && !r.separable; ++mask) {
        VertexSet z;
        for (size_t i = 0; i < rest.size(); ++i)
            if (mask & (1ul << i)) z.insert(rest[i]);
        r.separable = m_separated(g, x, y, z);
    }
    if (g.kind() == GraphKind::MAG) r.nonadjacent = !g.adjacent(x, y);
    return r;
}

}  // namespace backdoor
