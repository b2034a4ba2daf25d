#include "backdoor/criterion.hpp"

#include <algorithm>

#include "backdoor/separation.hpp"
#include "backdoor/visibility.hpp"

namespace backdoor {

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::Bi: return "B-i";
        case Condition::Bii: return "B-ii";
        case Condition::Pi: return "P-i";
        case Condition::Pii: return "P-ii";
        case Condition::I1: return "I-1";
        case Condition::I2: return "I-2";
        case Condition::I3: return "I-3";
    }
    return "?";
}

namespace {

void require_known(const MixedGraph& g, const VertexSet& s) {
    for (Vertex v : s)
        if (!g.contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
}

bool intersects(const VertexSet& a, const VertexSet& b) {
    return std::any_of(a.begin(), a.end(), [&](Vertex v) { return b.count(v) > 0; });
}

void require_disjoint_nonempty(const MixedGraph& g, const VertexSet& x, const VertexSet& y, const VertexSet& w) {
    require_known(g, x);
    require_known(g, y);
    require_known(g, w);
    if (x.empty() || y.empty()) throw GraphError("X and Y must be nonempty");
    if (intersects(x, y) || intersects(x, w) || intersects(y, w)) throw GraphError("X, Y and W must be pairwise disjoint");
}

CriterionReport fail_vertex(Condition c, Vertex v) { return {false, c, v, std::nullopt, std::nullopt}; }

CriterionReport fail_path(Condition c, Vertex source, Path p) { return {false, c, std::nullopt, std::move(p), source}; }

VertexSet minus(VertexSet s, Vertex v) {
    s.erase(v);
    return s;
}

VertexSet unite(VertexSet a, const VertexSet& b) {
    a.insert(b.begin(), b.end());
    return a;
}

}  // namespace

CriterionReport check_generalized_backdoor(const MixedGraph& g, const VertexSet& x, const VertexSet& y,
                                           const VertexSet& w) {
    require_disjoint_nonempty(g, x, y, w);
    const VertexSet pd = possible_descendants(g, x);
    for (Vertex v : w)
        if (pd.count(v)) return fail_vertex(Condition::Bi, v);

    for (Vertex s : x) {
        const VertexSet z = minus(unite(w, x), s);
        const VertexSet an_z = ancestors(g, z);
        for (Vertex t : y) {
            for (Path& p : back_door_paths(g, s, t)) {
                // Paths may run through other members of Y; they are never in z.
                if (!is_blocked(g, p, z, an_z)) return fail_path(Condition::Bii, s, std::move(p));
            }
        }
    }
    return {};
}

bool check_b_i_prime(const MixedGraph& g, const VertexSet& x, const VertexSet& w) {
    require_known(g, x);
    require_known(g, w);
    if (intersects(x, w)) throw GraphError("X and W must be disjoint");
    for (Vertex s : x)
        for (Vertex t : w)
            for (const Path& p : definite_status_paths(g, s, t))
                if (is_possibly_directed(g, p)) return false;
    return true;
}

CriterionReport check_pearl_backdoor(const MixedGraph& dag, const VertexSet& x, const VertexSet& y,
                                     const VertexSet& w) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("Pearl's back-door criterion needs a DAG");
    require_disjoint_nonempty(dag, x, y, w);
    for (Vertex s : x) {
        const VertexSet de = descendants(dag, {s});
        for (Vertex v : w)
            if (de.count(v)) return fail_vertex(Condition::Pi, v);
    }
    const VertexSet an_w = ancestors(dag, w);
    for (Vertex s : x) {
        for (Vertex t : y) {
            for (Path& p : definite_status_paths(dag, s, t)) {
                if (!is_into_start(dag, p)) continue;
                if (!is_blocked(dag, p, w, an_w)) return fail_path(Condition::Pii, s, std::move(p));
            }
        }
    }
    return {};
}

CriterionReport check_invariance_graphical(const MixedGraph& g, const VertexSet& x, const VertexSet& y,
                                           const VertexSet& z) {
    require_known(g, x);
    require_known(g, y);
    require_known(g, z);
    if (intersects(x, y) || intersects(y, z)) throw GraphError("X, Y and Y, Z must be disjoint");

    const VertexSet pan = possible_ancestors(g, z);
    for (Vertex s : x) {
        if (z.count(s)) {
            const VertexSet given = minus(z, s);
            const VertexSet an_given = ancestors(g, given);
            for (Vertex t : y) {
                for (Path& p : definite_status_paths(g, s, t)) {
                    if (is_blocked(g, p, given, an_given)) continue;
                    bool visible_out = g.directed(s, p.vertices[1]) && is_visible(g, s, p.vertices[1]);
                    if (!visible_out) return fail_path(Condition::I1, s, std::move(p));
                }
            }
        } else if (pan.count(s)) {
            for (Vertex t : y)
                if (auto p = m_connecting_path(g, s, t, z)) return fail_path(Condition::I2, s, std::move(*p));
        } else {
            const VertexSet an_z = ancestors(g, z);
            for (Vertex t : y) {
                for (Path& p : definite_status_paths(g, s, t)) {
                    if (is_blocked(g, p, z, an_z)) continue;
                    if (!is_into_start(g, p)) return fail_path(Condition::I3, s, std::move(p));
                }
            }
        }
    }
    return {};
}

}  // namespace backdoor
