#include "backdoor/visibility.hpp"

#include <algorithm>
#include <deque>

namespace backdoor {

Visibility edge_visibility(const MixedGraph& g, Vertex a, Vertex b) {
    if (!g.contains(a) || !g.contains(b) || !g.directed(a, b))
        throw GraphError("visibility is only defined for a directed edge of the graph");
    if (g.kind() == GraphKind::DAG || g.kind() == GraphKind::CPDAG) return {true, std::nullopt, std::nullopt};

    // Walk backwards from a. The first step must point into a, every interior
    // vertex must be a collider and a parent of b, and the walk stops at the
    // first vertex not adjacent to b.
    std::vector<Vertex> parent(g.size(), -1);
    std::vector<bool> seen(g.size(), false);
    std::deque<Vertex> queue{a};
    seen[a] = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(v)) {
            if (seen[w] || w == b) continue;
            if (g.mark(v, w) != Mark::Arrow) continue;  // into a, or collider at v
            if (!g.adjacent(w, b)) {
                Path p{{w}};
                for (Vertex u = v; u != -1; u = parent[u]) p.vertices.push_back(u);
                return {true, w, p};
            }
            if (g.directed(w, b) && g.mark(w, v) == Mark::Arrow) {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    return {false, std::nullopt, std::nullopt};
}

bool is_visible(const MixedGraph& g, Vertex a, Vertex b) { return edge_visibility(g, a, b).visible; }

bool verify_visibility_witness(const MixedGraph& g, Vertex a, Vertex b, const Visibility& v) {
    if (!v.visible) return false;
    if (g.kind() == GraphKind::DAG || g.kind() == GraphKind::CPDAG) return g.directed(a, b);
    if (!v.witness || !v.witness_path) return false;
    const Path& p = *v.witness_path;
    try {
        validate_path(g, p);
    } catch (const GraphError&) {
        return false;
    }
    Vertex c = *v.witness;
    if (p.front() != c || p.back() != a || c == b || g.adjacent(c, b)) return false;
    if (g.mark(a, p.vertices[p.vertices.size() - 2]) != Mark::Arrow) return false;
    for (size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        Vertex m = p.vertices[i];
        if (!is_collider(g, p.vertices[i - 1], m, p.vertices[i + 1]) || !g.directed(m, b)) return false;
    }
    return true;
}

bool is_back_door(const MixedGraph& g, const Path& p) {
    Vertex x = p.vertices[0], next = p.vertices[1];
    return !(g.directed(x, next) && is_visible(g, x, next));
}

std::vector<Path> back_door_paths(const MixedGraph& g, Vertex x, Vertex y) {
    std::vector<Path> all = definite_status_paths(g, x, y);
    std::vector<Path> out;
    for (auto& p : all)
        if (is_back_door(g, p)) out.push_back(std::move(p));
    return out;
}

}  // namespace backdoor
