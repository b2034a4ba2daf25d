#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "backdoor/gaussian.hpp"
#include "backdoor/graph.hpp"
#include "backdoor/oracle.hpp"
#include "backdoor/random.hpp"

namespace testing_support {

using namespace backdoor;

inline std::string data_path(const std::string& file) { return std::string(BACKDOOR_DATA_DIR) + "/" + file; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline MixedGraph fixture(const std::string& file) { return parse_graph(read_file(data_path(file))); }

inline VertexSet vs(const MixedGraph& g, std::initializer_list<const char*> names) {
    VertexSet out;
    for (const char* n : names) out.insert(g.index(n));
    return out;
}

inline Path path_of(const MixedGraph& g, std::initializer_list<const char*> names) {
    Path p;
    for (const char* n : names) p.vertices.push_back(g.index(n));
    return p;
}

/// Random graphs of one kind with 2..max_n vertices and varied density.
inline std::vector<MixedGraph> random_suite(GraphKind kind, int count, int max_n, std::uint64_t base_seed) {
    std::vector<MixedGraph> out;
    Rng rng(base_seed);
    for (int i = 0; i < count; ++i) {
        int n = 2 + static_cast<int>(rng.below(max_n - 1));
        double density = rng.uniform(0.15, 0.8);
        out.push_back(random_graph(kind, n, density, rng.next()));
    }
    return out;
}

/// Random CPDAGs whose circle edges stay within the member enumeration bound.
inline std::vector<MixedGraph> enumerable_cpdags(int count, int max_n, std::uint64_t base_seed) {
    std::vector<MixedGraph> out;
    Rng rng(base_seed);
    while (static_cast<int>(out.size()) < count) {
        int n = 2 + static_cast<int>(rng.below(max_n - 1));
        MixedGraph g = random_graph(GraphKind::CPDAG, n, rng.uniform(0.15, 0.8), rng.next());
        int circles = 0;
        for (const Edge& e : g.edges()) circles += e.at_u == Mark::Circle && e.at_v == Mark::Circle;
        if (circles <= 12) out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Oracles written directly against edge marks, without the library's
// path and reachability code.

/// Every simple path between x and y, in lexicographic order.
inline std::vector<std::vector<Vertex>> all_simple_paths(const MixedGraph& g, Vertex x, Vertex y) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack{x};
    std::vector<bool> used(g.size(), false);
    used[x] = true;
    auto dfs = [&](auto&& self, Vertex v) -> void {
        if (v == y) {
            out.push_back(stack);
            return;
        }
        for (Vertex w = 0; w < g.size(); ++w) {
            if (used[w] || g.mark(v, w) == Mark::None) continue;
            used[w] = true;
            stack.push_back(w);
            self(self, w);
            stack.pop_back();
            used[w] = false;
        }
    };
    dfs(dfs, x);
    return out;
}

/// reach[a][b]: b is reachable from a by repeatedly taking steps allowed by `step`.
template <typename Step>
std::vector<std::vector<bool>> warshall(const MixedGraph& g, Step step) {
    const int n = g.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
        r[a][a] = true;
        for (int b = 0; b < n; ++b)
            if (a != b && g.mark(a, b) != Mark::None && step(a, b)) r[a][b] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            if (r[a][k])
                for (int b = 0; b < n; ++b)
                    if (r[k][b]) r[a][b] = true;
    return r;
}

inline std::vector<std::vector<bool>> directed_closure(const MixedGraph& g) {
    return warshall(g, [&](int a, int b) { return g.mark(a, b) == Mark::Tail && g.mark(b, a) == Mark::Arrow; });
}

inline std::vector<std::vector<bool>> possibly_directed_closure(const MixedGraph& g) {
    return warshall(g, [&](int a, int b) { return g.mark(a, b) != Mark::Arrow; });
}

inline bool oracle_collider(const MixedGraph& g, Vertex a, Vertex b, Vertex c) {
    return g.mark(b, a) == Mark::Arrow && g.mark(b, c) == Mark::Arrow;
}

inline bool oracle_noncollider(const MixedGraph& g, Vertex a, Vertex b, Vertex c) {
    if (g.mark(b, a) == Mark::Tail || g.mark(b, c) == Mark::Tail) return true;
    return g.mark(b, a) == Mark::Circle && g.mark(b, c) == Mark::Circle && g.mark(a, c) == Mark::None;
}

inline bool oracle_definite_status(const MixedGraph& g, const std::vector<Vertex>& p) {
    for (size_t i = 1; i + 1 < p.size(); ++i)
        if (!oracle_collider(g, p[i - 1], p[i], p[i + 1]) && !oracle_noncollider(g, p[i - 1], p[i], p[i + 1]))
            return false;
    return true;
}

/// m-connection by marks, with ancestors from the Warshall closure.
inline bool oracle_m_connecting(const MixedGraph& g, const std::vector<Vertex>& p, const VertexSet& z) {
    auto an = directed_closure(g);
    for (size_t i = 1; i + 1 < p.size(); ++i) {
        Vertex b = p[i];
        if (oracle_collider(g, p[i - 1], b, p[i + 1])) {
            bool ok = false;
            for (Vertex v : z) ok = ok || an[b][v];
            if (!ok) return false;
        } else if (z.count(b)) {
            return false;
        }
    }
    return true;
}

/// Total effect of x on y from the mutilated model: drop every edge into x,
/// give x unit noise, and read the slope of y on x off the covariance.
inline double mutilated_effect(const LinearSEM& sem, Vertex x, Vertex y) {
    std::vector<std::pair<Vertex, Vertex>> cut;
    for (Vertex p : sem.dag.parents(x)) cut.emplace_back(p, x);
    LinearSEM m{sem.dag.without_edges(cut), {}, sem.noise_variances};
    for (const auto& [key, w] : sem.weights)
        if (key.second != x) m.weights[key] = w;
    m.noise_variances[x] = 1.0;
    auto cov = implied_covariance(m);
    return cov(x, y) / cov(x, x);
}

}  // namespace testing_support
