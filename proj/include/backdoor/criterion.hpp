#pragma once

#include "backdoor/graph.hpp"

namespace backdoor {

enum class Condition { Bi, Bii, Pi, Pii, I1, I2, I3 };

std::string_view to_string(Condition c);

/// Verdict of a criterion check. When the verdict is false, `failed` names the
/// first violated condition and the witness fields replay it: `vertex` for
/// B-i/P-i, `path` (plus `source`) for the path conditions.
struct CriterionReport {
    bool verdict = true;
    std::optional<Condition> failed;
    std::optional<Vertex> vertex;
    std::optional<Path> path;
    std::optional<Vertex> source;
};

/// Generalized back-door criterion for sets. Checks (B-i) then (B-ii); the
/// reported witness is the first violation in vertex/path order.
CriterionReport check_generalized_backdoor(const MixedGraph& g, const VertexSet& x, const VertexSet& y,
                                           const VertexSet& w);

/// (B-i)': no member of w is reached from x by a possibly directed definite
/// status path. Evaluated by path enumeration, independent of the (B-i) route.
bool check_b_i_prime(const MixedGraph& g, const VertexSet& x, const VertexSet& w);

/// Pearl's criterion on a DAG, for every pair in x * y.
CriterionReport check_pearl_backdoor(const MixedGraph& dag, const VertexSet& x, const VertexSet& y,
                                     const VertexSet& w);

/// Graphical conditions under which f(y | z) is invariant to interventions on
/// x. x and z may overlap; x, y and y, z must be disjoint.
CriterionReport check_invariance_graphical(const MixedGraph& g, const VertexSet& x, const VertexSet& y,
                                           const VertexSet& z);

}  // namespace backdoor
