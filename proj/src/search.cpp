#include "backdoor/search.hpp"

#include <algorithm>

#include "backdoor/criterion.hpp"
#include "backdoor/separation.hpp"
#include "backdoor/visibility.hpp"

namespace backdoor {

namespace {

using Adjacency = std::vector<VertexSet>;

Adjacency circle_adjacency(const MixedGraph& g) {
    Adjacency adj(g.size());
    for (const Edge& e : g.edges()) {
        if (e.at_u == Mark::Circle && e.at_v == Mark::Circle) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
    }
    return adj;
}

bool simplicial(const Adjacency& adj, Vertex v) {
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
            if (!adj[*a].count(*b)) return false;
    return true;
}

GraphKind representative_kind(GraphKind k) {
    return (k == GraphKind::DAG || k == GraphKind::CPDAG) ? GraphKind::DAG : GraphKind::MAG;
}

void require_pair(const MixedGraph& g, Vertex x, Vertex y) {
    if (!g.contains(x) || !g.contains(y)) throw GraphError("unknown vertex");
    if (x == y) throw GraphError("X and Y must differ");
}

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace

bool circle_component_chordal(const MixedGraph& g) {
    const Adjacency adj = circle_adjacency(g);
    const int n = g.size();
    // Maximum cardinality search; the reverse visiting order is a perfect
    // elimination ordering exactly when the graph is chordal.
    std::vector<int> weight(n, 0), position(n, -1);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (position[v] < 0 && (best < 0 || weight[v] > weight[best])) best = v;
        position[best] = step;
        order.push_back(best);
        for (Vertex w : adj[best])
            if (position[w] < 0) ++weight[w];
    }
    // In elimination order (reverse of `order`), each vertex's later
    // neighbours are those visited earlier by the search.
    for (Vertex v : order) {
        VertexSet later;
        for (Vertex w : adj[v])
            if (position[w] < position[v]) later.insert(w);
        if (later.empty()) continue;
        Vertex nearest = *std::max_element(later.begin(), later.end(),
                                           [&](Vertex a, Vertex b) { return position[a] < position[b]; });
        for (Vertex w : later)
            if (w != nearest && !adj[nearest].count(w)) return false;
    }
    return true;
}

std::vector<Vertex> circle_elimination_order(const MixedGraph& g, std::optional<Vertex> last) {
    Adjacency adj = circle_adjacency(g);
    std::vector<bool> active(g.size(), false);
    size_t remaining_edges = 0;
    for (Vertex v = 0; v < g.size(); ++v) {
        active[v] = !adj[v].empty();
        remaining_edges += adj[v].size();
    }
    remaining_edges /= 2;

    std::vector<Vertex> order;
    while (remaining_edges > 0) {
        Vertex pick = -1;
        for (Vertex v = 0; v < g.size() && pick < 0; ++v)
            if (active[v] && v != last && simplicial(adj, v)) pick = v;
        if (pick < 0) throw GraphError("circle component is not chordal");
        order.push_back(pick);
        active[pick] = false;
        for (Vertex w : adj[pick]) adj[w].erase(pick);
        remaining_edges -= adj[pick].size();
        adj[pick].clear();
    }
    for (Vertex v = 0; v < g.size(); ++v)
        if (active[v] && v != last) order.push_back(v);
    if (last && active[*last]) order.push_back(*last);
    return order;
}

RepresentativeGraph construct_representative(const MixedGraph& g, Vertex x) {
    if (!g.contains(x)) throw GraphError("unknown vertex id " + std::to_string(x));
    if (g.kind() == GraphKind::DAG || g.kind() == GraphKind::MAG)
        return {g, lower_representative(g, g, x), g.kind(), x, {}};

    if (!circle_component_chordal(g)) throw GraphError("circle component is not chordal");
    const std::vector<Vertex> order = circle_elimination_order(g, x);
    std::vector<int> rank(g.size(), 0);
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

    std::vector<Edge> edges;
    for (Edge e : g.edges()) {
        if (e.at_u == Mark::Circle && e.at_v == Mark::Circle) {
            // The endpoint eliminated first receives the arrowhead.
            bool into_u = rank[e.u] < rank[e.v];
            e.at_u = into_u ? Mark::Arrow : Mark::Tail;
            e.at_v = into_u ? Mark::Tail : Mark::Arrow;
        } else {
            if (e.at_u == Mark::Circle) e.at_u = Mark::Tail;
            if (e.at_v == Mark::Circle) e.at_v = Mark::Tail;
        }
        edges.push_back(e);
    }
    MixedGraph r = g.with_edges(representative_kind(g.kind()), edges);
    if (r.edges_into(x) != g.edges_into(x))
        throw std::logic_error("representative gained an edge into " + g.name(x));
    MixedGraph lowered = lower_representative(g, r, x);
    return {std::move(r), std::move(lowered), g.kind(), x, order};
}

RepresentativeGraph representative_from(const MixedGraph& g, const MixedGraph& r, Vertex x) {
    if (g.names() != r.names()) throw GraphError("representative must have the same vertices as the graph");
    if (r.kind() != representative_kind(g.kind()))
        throw GraphError("representative of a " + std::string(to_string(g.kind())) + " must be a " +
                         std::string(to_string(representative_kind(g.kind()))));
    return {r, lower_representative(g, r, x), g.kind(), x, {}};
}

MixedGraph lower_representative(const MixedGraph& g, const MixedGraph& r, Vertex x) {
    std::vector<std::pair<Vertex, Vertex>> drop;
    for (Vertex v : g.neighbors(x))
        if (g.directed(x, v) && is_visible(g, x, v)) drop.emplace_back(x, v);
    return r.without_edges(drop);
}

bool same_skeleton(const MixedGraph& a, const MixedGraph& b) {
    if (a.names() != b.names()) return false;
    for (Vertex v = 0; v < a.size(); ++v)
        if (a.neighbors(v) != b.neighbors(v)) return false;
    return true;
}

BackdoorSearch find_backdoor_set_with(const MixedGraph& g, const RepresentativeGraph& rep, Vertex y) {
    const Vertex x = rep.target;
    require_pair(g, x, y);
    BackdoorSearch out{std::nullopt, rep, {}, {}, {}, false};
    out.dsep = d_sep_set(rep.lowered, x, y);
    out.possible_de = possible_descendants(g, {x});
    out.possible_de.erase(x);
    out.intersection = intersect(out.dsep, out.possible_de);
    out.adjacent = rep.lowered.adjacent(x, y);
    if (!out.adjacent && out.intersection.empty()) out.set = out.dsep;
    return out;
}

BackdoorSearch find_backdoor_set(const MixedGraph& g, Vertex x, Vertex y) {
    require_pair(g, x, y);
    BackdoorSearch out = find_backdoor_set_with(g, construct_representative(g, x), y);

    if (out.set && !check_generalized_backdoor(g, {x}, {y}, *out.set).verdict)
        throw std::logic_error("constructed set " + format_set(g, *out.set) + " fails the back-door criterion");

    std::optional<VertexSet> closed_form;
    bool has_closed_form = true;
    switch (g.kind()) {
        case GraphKind::DAG: closed_form = find_backdoor_set_dag(g, x, y); break;
        case GraphKind::CPDAG: closed_form = find_backdoor_set_cpdag(g, x, y); break;
        case GraphKind::MAG: closed_form = find_backdoor_set_mag(g, x, y); break;
        case GraphKind::PAG: has_closed_form = false; break;
    }
    if (has_closed_form && closed_form.has_value() != out.set.has_value())
        throw std::logic_error("closed-form rule disagrees on existence for (" + g.name(x) + ", " + g.name(y) + ")");
    return out;
}

std::optional<VertexSet> find_backdoor_set_dag(const MixedGraph& dag, Vertex x, Vertex y) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("expected a DAG");
    require_pair(dag, x, y);
    VertexSet pa = dag.parents(x);
    if (pa.count(y)) return std::nullopt;
    return pa;
}

std::optional<VertexSet> find_backdoor_set_cpdag(const MixedGraph& cpdag, Vertex x, Vertex y) {
    if (cpdag.kind() != GraphKind::CPDAG) throw GraphError("expected a CPDAG");
    require_pair(cpdag, x, y);
    std::vector<std::pair<Vertex, Vertex>> out_of_x;
    for (Vertex v : cpdag.children(x)) out_of_x.emplace_back(x, v);
    const MixedGraph lowered = cpdag.without_edges(out_of_x);
    VertexSet pa = cpdag.parents(x);
    if (pa.count(y) || possible_descendants(lowered, {x}).count(y)) return std::nullopt;
    return pa;
}

std::optional<VertexSet> find_backdoor_set_mag(const MixedGraph& mag, Vertex x, Vertex y) {
    if (mag.kind() != GraphKind::MAG) throw GraphError("expected a MAG");
    require_pair(mag, x, y);
    const MixedGraph lowered = lower_representative(mag, mag, x);
    if (lowered.adjacent(x, y)) return std::nullopt;
    VertexSet dsep = d_sep_set(lowered, x, y);
    VertexSet de = descendants(mag, {x});
    if (!intersect(dsep, de).empty()) return std::nullopt;
    return dsep;
}

std::vector<VertexSet> minimal_backdoor_sets(const MixedGraph& g, Vertex x, Vertex y) {
    const BackdoorSearch found = find_backdoor_set(g, x, y);
    if (!found.set) throw GraphError("no back-door set exists for (" + g.name(x) + ", " + g.name(y) + ")");
    const std::vector<Vertex> pool(found.set->begin(), found.set->end());
    const size_t k = pool.size();
    if (k > 24) throw GraphError("constructed set too large for subset enumeration");

    std::vector<VertexSet> minimal;
    for (size_t size = 0; size <= k; ++size) {
        // Combinations of `size` elements in lexicographic order.
        std::vector<size_t> idx(size);
        for (size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            VertexSet candidate;
            for (size_t i : idx) candidate.insert(pool[i]);
            bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const VertexSet& m) {
                return std::includes(candidate.begin(), candidate.end(), m.begin(), m.end());
            });
            if (!dominated && check_generalized_backdoor(g, {x}, {y}, candidate).verdict) minimal.push_back(candidate);

            size_t i = size;
            while (i > 0 && idx[i - 1] == k - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return minimal;
}

}  // namespace backdoor
