#include "backdoor/oracle.hpp"

#include <algorithm>
#include <deque>

#include "backdoor/criterion.hpp"
#include "backdoor/random.hpp"

namespace backdoor {

namespace {

bool has_cycle(int n, const std::vector<std::pair<Vertex, Vertex>>& arcs) {
    std::vector<std::vector<Vertex>> out(n);
    std::vector<int> indegree(n, 0);
    for (auto [a, b] : arcs) {
        out[a].push_back(b);
        ++indegree[b];
    }
    std::vector<Vertex> ready;
    for (Vertex v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    int done = 0;
    while (!ready.empty()) {
        Vertex v = ready.back();
        ready.pop_back();
        ++done;
        for (Vertex w : out[v])
            if (--indegree[w] == 0) ready.push_back(w);
    }
    return done != n;
}

Edge arc(Vertex a, Vertex b) {
    return a < b ? Edge{a, b, Mark::Tail, Mark::Arrow} : Edge{b, a, Mark::Arrow, Mark::Tail};
}

std::string letter_label(int i) { return std::string(1, static_cast<char>('A' + i)); }

void check_size(int n, double density) {
    if (n < 1 || n > 15) throw GraphError("random graphs need 1 to 15 vertices");
    if (!(density >= 0.0 && density <= 1.0)) throw GraphError("edge density must lie in [0, 1]");
}

MixedGraph random_dag_over(std::vector<std::string> names, double density, Rng& rng) {
    const int n = static_cast<int>(names.size());
    std::sort(names.begin(), names.end());
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    rng.shuffle(order);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(density)) edges.push_back(arc(order[i], order[j]));
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return MixedGraph(GraphKind::DAG, std::move(names), edges);
}

}  // namespace

std::vector<std::array<Vertex, 3>> unshielded_colliders(const MixedGraph& g) {
    std::vector<std::array<Vertex, 3>> out;
    for (Vertex b = 0; b < g.size(); ++b) {
        const auto& nb = g.neighbors(b);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) {
                Vertex a = nb[i], c = nb[j];
                if (!g.adjacent(a, c) && g.into(b, a) && g.into(b, c)) out.push_back({a, b, c});
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MixedGraph> enumerate_cpdag_members(const MixedGraph& cpdag) {
    if (cpdag.kind() != GraphKind::CPDAG) throw GraphError("member enumeration needs a CPDAG");
    std::vector<Edge> fixed, loose;
    for (const Edge& e : cpdag.edges()) (e.at_u == Mark::Circle ? loose : fixed).push_back(e);
    if (loose.size() > 12) throw GraphError("too many undirected edges to enumerate (limit 12)");

    const auto colliders = unshielded_colliders(cpdag);
    std::vector<MixedGraph> members;
    for (unsigned mask = 0; mask < (1u << loose.size()); ++mask) {
        std::vector<Edge> edges = fixed;
        std::vector<std::pair<Vertex, Vertex>> arcs;
        for (const Edge& e : fixed) arcs.emplace_back(e.at_u == Mark::Tail ? e.u : e.v, e.at_u == Mark::Tail ? e.v : e.u);
        for (size_t i = 0; i < loose.size(); ++i) {
            bool forward = mask & (1u << i);
            Vertex a = forward ? loose[i].u : loose[i].v, b = forward ? loose[i].v : loose[i].u;
            edges.push_back(arc(a, b));
            arcs.emplace_back(a, b);
        }
        if (has_cycle(cpdag.size(), arcs)) continue;
        MixedGraph dag = cpdag.with_edges(GraphKind::DAG, edges);
        if (unshielded_colliders(dag) == colliders) members.push_back(std::move(dag));
    }
    return members;
}

std::optional<VertexSet> oracle_backdoor_exists(const MixedGraph& g, Vertex x, Vertex y) {
    if (g.size() > 9) throw GraphError("exhaustive search is limited to 9 vertices");
    if (!g.contains(x) || !g.contains(y) || x == y) throw GraphError("need two distinct vertices of the graph");
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.size(); ++v)
        if (v != x && v != y) rest.push_back(v);

    std::optional<VertexSet> best;
    for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
        VertexSet w;
        for (size_t i = 0; i < rest.size(); ++i)
            if (mask & (1u << i)) w.insert(rest[i]);
        if (best && (w.size() > best->size() || (w.size() == best->size() && w >= *best))) continue;
        if (check_generalized_backdoor(g, {x}, {y}, w).verdict) best = w;
    }
    return best;
}

bool dsep_moral_oracle(const MixedGraph& dag, Vertex x, Vertex y, const VertexSet& z) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("moralization oracle needs a DAG");
    const int n = dag.size();

    std::vector<bool> keep(n, false);
    std::deque<Vertex> queue{x, y};
    queue.insert(queue.end(), z.begin(), z.end());
    for (Vertex v : queue) keep[v] = true;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (Vertex p : dag.neighbors(v))
            if (dag.mark(p, v) == Mark::Tail && !keep[p]) {
                keep[p] = true;
                queue.push_back(p);
            }
    }

    std::vector<std::vector<bool>> moral(n, std::vector<bool>(n, false));
    for (Vertex v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        std::vector<Vertex> pa;
        for (Vertex p : dag.neighbors(v))
            if (dag.mark(p, v) == Mark::Tail) pa.push_back(p);
        for (Vertex p : pa) moral[p][v] = moral[v][p] = true;
        for (Vertex p : pa)
            for (Vertex q : pa)
                if (p != q) moral[p][q] = true;
    }

    std::vector<bool> seen(n, false);
    seen[x] = true;
    queue = {x};
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (v == y) return false;
        for (Vertex w = 0; w < n; ++w)
            if (moral[v][w] && keep[w] && !seen[w] && !z.count(w)) {
                seen[w] = true;
                queue.push_back(w);
            }
    }
    return true;
}

MixedGraph cpdag_of(const MixedGraph& dag) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("expected a DAG");
    const int n = dag.size();
    // 0 = no edge, 1 = undirected, 2 = directed from row to column.
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    auto adj = [&](Vertex a, Vertex b) { return m[a][b] != 0 || m[b][a] != 0; };
    auto und = [&](Vertex a, Vertex b) { return m[a][b] == 1; };
    auto dir = [&](Vertex a, Vertex b) { return m[a][b] == 2; };
    auto orient = [&](Vertex a, Vertex b) {
        m[a][b] = 2;
        m[b][a] = 0;
    };

    for (const Edge& e : dag.edges()) m[e.u][e.v] = m[e.v][e.u] = 1;
    for (const auto& [a, b, c] : unshielded_colliders(dag)) {
        orient(a, b);
        orient(c, b);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = 0; b < n; ++b) {
                if (!und(a, b)) continue;
                bool fire = false;
                for (Vertex c = 0; c < n && !fire; ++c) {
                    // R1: c -> a - b, c and b nonadjacent.
                    if (dir(c, a) && !adj(c, b) && c != b) fire = true;
                    // R2: a -> c -> b.
                    else if (dir(a, c) && dir(c, b)) fire = true;
                }
                // R3: a - c -> b, a - d -> b, c and d nonadjacent.
                for (Vertex c = 0; c < n && !fire; ++c)
                    for (Vertex d = c + 1; d < n && !fire; ++d)
                        if (und(a, c) && und(a, d) && dir(c, b) && dir(d, b) && !adj(c, d)) fire = true;
                // R4: a - d, a adjacent to c, c -> d -> b, c and b nonadjacent.
                for (Vertex c = 0; c < n && !fire; ++c)
                    for (Vertex d = 0; d < n && !fire; ++d)
                        if (c != b && d != b && adj(a, c) && und(a, d) && dir(c, d) && dir(d, b) && !adj(c, b))
                            fire = true;
                if (fire) {
                    orient(a, b);
                    changed = true;
                }
            }
        }
    }

    std::vector<Edge> edges;
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            if (und(a, b)) edges.push_back({a, b, Mark::Circle, Mark::Circle});
            else if (dir(a, b)) edges.push_back(arc(a, b));
            else if (dir(b, a)) edges.push_back(arc(b, a));
        }
    return dag.with_edges(GraphKind::CPDAG, edges);
}

MixedGraph project_to_mag(const MixedGraph& dag, const VertexSet& latents) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("MAG projection needs a DAG");
    std::vector<Vertex> observed;
    for (Vertex v = 0; v < dag.size(); ++v)
        if (!latents.count(v)) observed.push_back(v);
    if (observed.size() > 16) throw GraphError("too many observed vertices for exhaustive separation search");

    std::vector<std::string> names;
    for (Vertex v : observed) names.push_back(dag.name(v));
    std::vector<LabeledEdge> edges;
    for (size_t i = 0; i < observed.size(); ++i) {
        for (size_t j = i + 1; j < observed.size(); ++j) {
            Vertex a = observed[i], b = observed[j];
            std::vector<Vertex> rest;
            for (Vertex v : observed)
                if (v != a && v != b) rest.push_back(v);
            bool separable = false;
            for (unsigned mask = 0; mask < (1u << rest.size()) && !separable; ++mask) {
                VertexSet z;
                for (size_t k = 0; k < rest.size(); ++k)
                    if (mask & (1u << k)) z.insert(rest[k]);
                separable = dsep_moral_oracle(dag, a, b, z);
            }
            if (separable) continue;
            Mark at_a = ancestors(dag, {b}).count(a) ? Mark::Tail : Mark::Arrow;
            Mark at_b = ancestors(dag, {a}).count(b) ? Mark::Tail : Mark::Arrow;
            edges.push_back({dag.name(a), dag.name(b), at_a, at_b});
        }
    }
    return MixedGraph::from_labels(GraphKind::MAG, std::move(names), edges);
}

MixedGraph random_dag(int n, double density, std::uint64_t seed) {
    check_size(n, density);
    Rng rng(seed);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(letter_label(i));
    return random_dag_over(std::move(names), density, rng);
}

ProjectedMag random_projected_mag(int n, double density, std::uint64_t seed) {
    check_size(n, density);
    Rng rng(seed);
    const int hidden = static_cast<int>(rng.below(4));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(letter_label(i));
    for (int i = 1; i <= hidden; ++i) names.push_back("U" + std::to_string(i));
    MixedGraph dag = random_dag_over(names, density, rng);
    VertexSet latents;
    for (int i = 1; i <= hidden; ++i) latents.insert(dag.index("U" + std::to_string(i)));
    MixedGraph mag = project_to_mag(dag, latents);
    return {std::move(dag), std::move(latents), std::move(mag)};
}

MixedGraph random_graph(GraphKind kind, int n, double density, std::uint64_t seed) {
    switch (kind) {
        case GraphKind::DAG: return random_dag(n, density, seed);
        case GraphKind::CPDAG: return cpdag_of(random_dag(n, density, seed));
        case GraphKind::MAG: return random_projected_mag(n, density, seed).mag;
        case GraphKind::PAG: break;
    }
    throw GraphError("random PAG generation is not supported");
}

}  // namespace backdoor
