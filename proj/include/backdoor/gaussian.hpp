#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>

#include "backdoor/graph.hpp"

namespace backdoor {

/// Linear structural equations V = B V + e over a DAG, with independent
/// Gaussian noise e.
struct LinearSEM {
    MixedGraph dag;
    /// Keyed by (parent, child); exactly the edges of `dag`.
    std::map<std::pair<Vertex, Vertex>, double> weights;
    std::vector<double> noise_variances;
};

/// Weights uniform on [-1, -0.1] u [0.1, 1], noise variances uniform on [0.5, 1.5].
LinearSEM random_sem(const MixedGraph& dag, std::uint64_t seed);

/// Checks the weight keys against the DAG and the variances for positivity.
void validate_sem(const LinearSEM& sem);

/// (I - B)^-1 Omega (I - B)^-T, indexed by vertex id.
Eigen::MatrixXd implied_covariance(const LinearSEM& sem);

/// d E[y | do(x)] / dx: sum over directed paths x -> ... -> y of the weight
/// products.
double interventional_effect(const LinearSEM& sem, Vertex x, Vertex y);

/// Joint intervention on every member of x; one coefficient per member in
/// vertex order. Paths through another intervened vertex are cut.
std::vector<double> interventional_effects(const LinearSEM& sem, const VertexSet& x, Vertex y);

/// Population least-squares coefficients of `response` on `predictors`, in the
/// order given.
Eigen::VectorXd regression_coefficients(const Eigen::MatrixXd& cov, Vertex response,
                                        const std::vector<Vertex>& predictors);

/// Coefficient of x when regressing y on {x} u w.
double adjusted_effect(const LinearSEM& sem, Vertex x, Vertex y, const VertexSet& w);

/// Coefficients of the members of x (vertex order) when regressing y on x u w.
std::vector<double> adjusted_effects(const LinearSEM& sem, const VertexSet& x, Vertex y, const VertexSet& w);

/// E[y | do(x1, x2)] = integral of f(z | x1) f(y | x2, z) dz in closed form for
/// Gaussians; returns the slopes in x1 and x2.
std::pair<double, double> sequential_g_formula(const LinearSEM& sem, Vertex x1, Vertex x2, Vertex z, Vertex y);

struct SeedDeviation {
    std::uint64_t seed = 0;
    int checks = 0;           ///< (x, y, w) triples that passed the criterion
    double max_deviation = 0; ///< max |adjusted - interventional| over those
};

/// For each seed: a random graph of the given kind (n <= 8), random weights,
/// and every ordered pair with every criterion-passing adjustment set. CPDAG
/// seeds check every member DAG; MAG seeds compute both sides on the full DAG
/// including latents.
std::vector<SeedDeviation> validate_gaussian(GraphKind kind, std::uint64_t first_seed, int seeds);

}  // namespace backdoor
