#include "backdoor/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "backdoor/criterion.hpp"
#include "backdoor/oracle.hpp"
#include "backdoor/random.hpp"

namespace backdoor {

namespace {

std::vector<Vertex> topological_order(const MixedGraph& dag) {
    std::vector<int> indegree(dag.size(), 0);
    for (Vertex v = 0; v < dag.size(); ++v) indegree[v] = static_cast<int>(dag.parents(v).size());
    std::vector<Vertex> order, ready;
    for (Vertex v = dag.size() - 1; v >= 0; --v)
        if (indegree[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        Vertex v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (Vertex c : dag.children(v))
            if (--indegree[c] == 0) ready.push_back(c);
    }
    return order;
}

void require_vertex(const MixedGraph& g, Vertex v) {
    if (!g.contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
}

// Every ordered pair of observed vertices and every subset of the remaining
// observed vertices; `sems` are models whose marginal over `graph`'s labels
// must satisfy the adjustment identity whenever the criterion holds on `graph`.
void sweep(const MixedGraph& graph, const std::vector<LinearSEM>& sems, SeedDeviation& out) {
    const int n = graph.size();
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = 0; y < n; ++y) {
            if (x == y) continue;
            std::vector<Vertex> rest;
            for (Vertex v = 0; v < n; ++v)
                if (v != x && v != y) rest.push_back(v);
            for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
                VertexSet w;
                for (size_t i = 0; i < rest.size(); ++i)
                    if (mask & (1u << i)) w.insert(rest[i]);
                if (!check_generalized_backdoor(graph, {x}, {y}, w).verdict) continue;
                ++out.checks;
                for (const LinearSEM& sem : sems) {
                    const MixedGraph& full = sem.dag;
                    auto to_full = [&](Vertex v) { return full.index(graph.name(v)); };
                    VertexSet wf;
                    for (Vertex v : w) wf.insert(to_full(v));
                    double gap = std::abs(adjusted_effect(sem, to_full(x), to_full(y), wf) -
                                          interventional_effect(sem, to_full(x), to_full(y)));
                    out.max_deviation = std::max(out.max_deviation, gap);
                }
            }
        }
    }
}

}  // namespace

LinearSEM random_sem(const MixedGraph& dag, std::uint64_t seed) {
    if (dag.kind() != GraphKind::DAG) throw GraphError("linear SEMs need a DAG");
    Rng rng(seed);
    LinearSEM sem{dag, {}, {}};
    for (const Edge& e : dag.edges()) {
        Vertex parent = e.at_u == Mark::Tail ? e.u : e.v;
        Vertex child = e.at_u == Mark::Tail ? e.v : e.u;
        double magnitude = rng.uniform(0.1, 1.0);
        sem.weights[{parent, child}] = rng.chance(0.5) ? magnitude : -magnitude;
    }
    for (Vertex v = 0; v < dag.size(); ++v) sem.noise_variances.push_back(rng.uniform(0.5, 1.5));
    return sem;
}

void validate_sem(const LinearSEM& sem) {
    if (sem.dag.kind() != GraphKind::DAG) throw GraphError("linear SEMs need a DAG");
    if (sem.noise_variances.size() != static_cast<size_t>(sem.dag.size()))
        throw GraphError("one noise variance per vertex is required");
    for (double s : sem.noise_variances)
        if (!(s > 0)) throw GraphError("noise variances must be positive");
    if (sem.weights.size() != sem.dag.edge_count()) throw GraphError("weights must match the DAG's edges");
    for (const auto& [key, w] : sem.weights)
        if (!sem.dag.contains(key.first) || !sem.dag.contains(key.second) || !sem.dag.directed(key.first, key.second))
            throw GraphError("weight given for a non-edge");
}

Eigen::MatrixXd implied_covariance(const LinearSEM& sem) {
    validate_sem(sem);
    const int n = sem.dag.size();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [key, w] : sem.weights) b(key.second, key.first) = w;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < n; ++v) omega(v, v) = sem.noise_variances[v];
    // I - B is unit triangular in a topological order, so it is always invertible.
    Eigen::MatrixXd inv = (Eigen::MatrixXd::Identity(n, n) - b).inverse();
    Eigen::MatrixXd cov = inv * omega * inv.transpose();
    return (cov + cov.transpose()) / 2;
}

std::vector<double> interventional_effects(const LinearSEM& sem, const VertexSet& x, Vertex y) {
    validate_sem(sem);
    require_vertex(sem.dag, y);
    for (Vertex v : x) require_vertex(sem.dag, v);
    if (x.count(y)) throw GraphError("outcome cannot be intervened on");

    const std::vector<Vertex> order = topological_order(sem.dag);
    std::vector<double> out;
    for (Vertex source : x) {
        std::vector<double> total(sem.dag.size(), 0.0);
        total[source] = 1.0;
        for (Vertex v : order) {
            if (x.count(v)) continue;  // intervened vertices keep their set value
            for (Vertex p : sem.dag.parents(v)) total[v] += sem.weights.at({p, v}) * total[p];
        }
        out.push_back(total[y]);
    }
    return out;
}

double interventional_effect(const LinearSEM& sem, Vertex x, Vertex y) {
    if (x == y) throw GraphError("X and Y must differ");
    return interventional_effects(sem, {x}, y).front();
}

Eigen::VectorXd regression_coefficients(const Eigen::MatrixXd& cov, Vertex response,
                                        const std::vector<Vertex>& predictors) {
    const int k = static_cast<int>(predictors.size());
    Eigen::MatrixXd sxx(k, k);
    Eigen::VectorXd sxy(k);
    for (int i = 0; i < k; ++i) {
        sxy(i) = cov(predictors[i], response);
        for (int j = 0; j < k; ++j) sxx(i, j) = cov(predictors[i], predictors[j]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sxx);
    if (llt.info() != Eigen::Success) throw std::logic_error("predictor covariance is not positive definite");
    return llt.solve(sxy);
}

std::vector<double> adjusted_effects(const LinearSEM& sem, const VertexSet& x, Vertex y, const VertexSet& w) {
    require_vertex(sem.dag, y);
    for (Vertex v : x) require_vertex(sem.dag, v);
    for (Vertex v : w) require_vertex(sem.dag, v);
    if (x.count(y) || w.count(y)) throw GraphError("outcome cannot be a regressor");
    for (Vertex v : x)
        if (w.count(v)) throw GraphError("treatment and adjustment sets must be disjoint");

    std::vector<Vertex> predictors(x.begin(), x.end());
    predictors.insert(predictors.end(), w.begin(), w.end());
    Eigen::VectorXd beta = regression_coefficients(implied_covariance(sem), y, predictors);
    return std::vector<double>(beta.data(), beta.data() + x.size());
}

double adjusted_effect(const LinearSEM& sem, Vertex x, Vertex y, const VertexSet& w) {
    if (x == y) throw GraphError("X and Y must differ");
    return adjusted_effects(sem, {x}, y, w).front();
}

std::pair<double, double> sequential_g_formula(const LinearSEM& sem, Vertex x1, Vertex x2, Vertex z, Vertex y) {
    const Eigen::MatrixXd cov = implied_covariance(sem);
    // E[z | x1] = c x1 and E[y | x2, z] = b2 x2 + bz z, so integrating z out
    // of the product of the two Gaussians gives b2 x2 + bz c x1.
    const double c = regression_coefficients(cov, z, {x1})(0);
    const Eigen::VectorXd b = regression_coefficients(cov, y, {x2, z});
    return {b(1) * c, b(0)};
}

std::vector<SeedDeviation> validate_gaussian(GraphKind kind, std::uint64_t first_seed, int seeds) {
    if (kind == GraphKind::PAG) throw GraphError("random PAG generation is not supported");
    if (seeds < 0) throw GraphError("seed count must be nonnegative");
    std::vector<SeedDeviation> out;
    for (int i = 0; i < seeds; ++i) {
        const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
        Rng rng(seed);
        const int n = 3 + static_cast<int>(rng.below(kind == GraphKind::MAG ? 4 : 6));
        const double density = rng.uniform(0.2, 0.7);
        const std::uint64_t graph_seed = rng.next();
        SeedDeviation result{seed, 0, 0.0};

        switch (kind) {
            case GraphKind::DAG: {
                MixedGraph dag = random_dag(n, density, graph_seed);
                sweep(dag, {random_sem(dag, rng.next())}, result);
                break;
            }
            case GraphKind::CPDAG: {
                MixedGraph cpdag = cpdag_of(random_dag(n, density, graph_seed));
                std::vector<LinearSEM> sems;
                for (const MixedGraph& member : enumerate_cpdag_members(cpdag)) sems.push_back(random_sem(member, rng.next()));
                sweep(cpdag, sems, result);
                break;
            }
            case GraphKind::MAG: {
                ProjectedMag projected = random_projected_mag(n, density, graph_seed);
                sweep(projected.mag, {random_sem(projected.dag, rng.next())}, result);
                break;
            }
            case GraphKind::PAG: break;
        }
        out.push_back(result);
    }
    return out;
}

}  // namespace backdoor
