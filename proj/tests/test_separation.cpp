#include <gtest/gtest.h>

#include "backdoor/search.hpp"
#include "backdoor/separation.hpp"
#include "support.hpp"

using namespace backdoor;
using namespace testing_support;

TEST(MConnecting, ChainAndCollider) {
    MixedGraph chain = parse_graph("kind: DAG\nA --> B\nB --> C\n");
    EXPECT_FALSE(is_m_connecting(chain, path_of(chain, {"A", "B", "C"}), {}).blocked);

    MixedGraph coll = parse_graph("kind: DAG\nA --> B\nC --> B\n");
    BlockingWitness w = is_m_connecting(coll, path_of(coll, {"A", "B", "C"}), {});
    EXPECT_TRUE(w.blocked);
    EXPECT_EQ(w.reason, BlockingWitness::Reason::ColliderNotAncestorOfZ);
    EXPECT_EQ(w.vertex, coll.index("B"));
    EXPECT_FALSE(is_m_connecting(coll, path_of(coll, {"A", "B", "C"}), vs(coll, {"B"})).blocked);
}

TEST(MConnecting, Fig4bConditioningOnV2) {
    MixedGraph g = fixture("fig4b.mag");
    // V2 is a noncollider on X <-> V2 --> V4, so conditioning on it blocks.
    BlockingWitness short_path = is_m_connecting(g, path_of(g, {"X", "V2", "V4", "Y"}), vs(g, {"V2"}));
    EXPECT_TRUE(short_path.blocked);
    EXPECT_EQ(short_path.reason, BlockingWitness::Reason::DefiniteNoncolliderInZ);
    // On X <-> V2 <-> V3 it is a collider, and conditioning opens it.
    EXPECT_FALSE(is_m_connecting(g, path_of(g, {"X", "V2", "V3", "V5", "Y"}), vs(g, {"V2"})).blocked);
    EXPECT_TRUE(is_m_connecting(g, path_of(g, {"X", "V2", "V3", "V5", "Y"}), {}).blocked);
}

TEST(MConnecting, RejectsBadInput) {
    MixedGraph g = fixture("fig3a.cpdag");
    // V2 on X o-o V2 <-- V1 has a circle and an arrowhead: neither status.
    EXPECT_THROW(is_m_connecting(g, path_of(g, {"X", "V2", "V1"}), {}), GraphError);
    EXPECT_THROW(is_m_connecting(g, path_of(g, {"X", "V2", "Y"}), vs(g, {"X"})), GraphError);
}

TEST(MSeparated, Trivial) {
    MixedGraph empty = fixture("empty.dag");
    EXPECT_TRUE(m_separated(empty, 0, 1, {}));
    MixedGraph chain = parse_graph("kind: DAG\nA --> B\nB --> C\n");
    EXPECT_TRUE(m_separated(chain, chain.index("A"), chain.index("C"), vs(chain, {"B"})));
    EXPECT_FALSE(m_separated(chain, chain.index("A"), chain.index("C"), {}));
}

TEST(MSeparated, AgreesWithMoralizationOnRandomDags) {
    for (const MixedGraph& g : random_suite(GraphKind::DAG, 40, 7, 101)) {
        std::vector<Vertex> all(g.size());
        for (Vertex v = 0; v < g.size(); ++v) all[v] = v;
        for (Vertex x = 0; x < g.size(); ++x)
            for (Vertex y = x + 1; y < g.size(); ++y)
                for (unsigned mask = 0; mask < (1u << g.size()); ++mask) {
                    if (mask & ((1u << x) | (1u << y))) continue;
                    VertexSet z;
                    for (Vertex v : all)
                        if (mask & (1u << v)) z.insert(v);
                    bool sep = m_separated(g, x, y, z);
                    ASSERT_EQ(sep, dsep_moral_oracle(g, x, y, z)) << serialize(g);
                    ASSERT_EQ(sep, m_separated(g, y, x, z));
                }
    }
}

TEST(MSeparated, WitnessPathReplays) {
    for (GraphKind k : {GraphKind::CPDAG, GraphKind::MAG}) {
        Rng rng(7);
        for (const MixedGraph& g : random_suite(k, 60, 7, 111)) {
            for (Vertex x = 0; x < g.size(); ++x)
                for (Vertex y = x + 1; y < g.size(); ++y) {
                    VertexSet z;
                    for (Vertex v = 0; v < g.size(); ++v)
                        if (v != x && v != y && rng.chance(0.3)) z.insert(v);
                    auto p = m_connecting_path(g, x, y, z);
                    EXPECT_EQ(p.has_value(), !m_separated(g, x, y, z));
                    EXPECT_EQ(p.has_value(), !m_separated(g, y, x, z));
                    if (p) {
                        EXPECT_FALSE(is_m_connecting(g, *p, z).blocked);
                        EXPECT_TRUE(oracle_m_connecting(g, p->vertices, z));
                    }
                    // Every definite status path is judged the same way by the mark oracle.
                    for (const Path& q : definite_status_paths(g, x, y))
                        EXPECT_EQ(!is_m_connecting(g, q, z).blocked, oracle_m_connecting(g, q.vertices, z));
                }
        }
    }
}

// If a path has no noncollider in Z and every collider in an(Z + {x, y}),
// some (possibly different) path m-connects x and y given Z.
TEST(MSeparated, RelaxedColliderConditionStillConnects) {
    Rng rng(17);
    for (const MixedGraph& g : random_suite(GraphKind::MAG, 80, 7, 121)) {
        for (Vertex x = 0; x < g.size(); ++x)
            for (Vertex y = x + 1; y < g.size(); ++y) {
                VertexSet z;
                for (Vertex v = 0; v < g.size(); ++v)
                    if (v != x && v != y && rng.chance(0.3)) z.insert(v);
                VertexSet zxy = z;
                zxy.insert(x);
                zxy.insert(y);
                const VertexSet an = ancestors(g, zxy);
                bool relaxed = false;
                for (const Path& p : definite_status_paths(g, x, y)) {
                    bool ok = true;
                    for (size_t i = 1; i + 1 < p.vertices.size() && ok; ++i) {
                        Vertex a = p.vertices[i - 1], b = p.vertices[i], c = p.vertices[i + 1];
                        ok = is_collider(g, a, b, c) ? an.count(b) > 0 : z.count(b) == 0;
                    }
                    relaxed = relaxed || ok;
                }
                if (relaxed) EXPECT_FALSE(m_separated(g, x, y, z)) << serialize(g);
            }
    }
}

TEST(DSep, FigureValues) {
    MixedGraph m = fixture("fig4b.mag");
    MixedGraph m_lower = m.without_edges({{m.index("X"), m.index("V3")}});
    EXPECT_EQ(d_sep_set(m_lower, m.index("X"), m.index("Y")), vs(m, {"V1", "V2", "V3"}));

    MixedGraph r = fixture("fig5b.mag");
    MixedGraph r_lower = r.without_edges({{r.index("X"), r.index("Y")}});
    EXPECT_EQ(d_sep_set(r_lower, r.index("X"), r.index("Y")), vs(r, {"V1", "V2"}));

    MixedGraph c = fixture("fig3a.cpdag");
    RepresentativeGraph rep = construct_representative(c, c.index("X"));
    EXPECT_EQ(d_sep_set(rep.lowered, c.index("X"), c.index("Y")), vs(c, {"V1", "V2", "V3"}));
    EXPECT_THROW(d_sep_set(c, c.index("X"), c.index("Y")), GraphError);
}

TEST(DSep, ContainsParentsInDags) {
    for (const MixedGraph& g : random_suite(GraphKind::DAG, 80, 8, 131))
        for (Vertex x = 0; x < g.size(); ++x)
            for (Vertex y = 0; y < g.size(); ++y) {
                if (x == y) continue;
                VertexSet d = d_sep_set(g, x, y), pa = g.parents(x);
                VertexSet an = ancestors(g, {x, y});
                for (Vertex p : pa)
                    if (an.count(p)) EXPECT_TRUE(d.count(p));
            }
}

// Definition by enumeration: V is in D-SEP(x, y) iff some path from x to V
// has every interior vertex a collider and every vertex in an({x, y}).
TEST(DSep, MatchesColliderPathEnumeration) {
    for (GraphKind k : {GraphKind::DAG, GraphKind::MAG}) {
        for (const MixedGraph& g : random_suite(k, 80, 7, 141)) {
            auto an = directed_closure(g);
            for (Vertex x = 0; x < g.size(); ++x)
                for (Vertex y = 0; y < g.size(); ++y) {
                    if (x == y) continue;
                    VertexSet expected;
                    for (Vertex v = 0; v < g.size(); ++v) {
                        if (v == x) continue;
                        for (auto& p : all_simple_paths(g, x, v)) {
                            bool ok = true;
                            for (size_t i = 0; i < p.size() && ok; ++i) ok = an[p[i]][x] || an[p[i]][y];
                            for (size_t i = 1; i + 1 < p.size() && ok; ++i) ok = oracle_collider(g, p[i - 1], p[i], p[i + 1]);
                            if (ok) {
                                expected.insert(v);
                                break;
                            }
                        }
                    }
                    EXPECT_EQ(d_sep_set(g, x, y), expected) << serialize(g);
                }
        }
    }
}

TEST(DSepLemma, AdjacentPairFailsEveryClause) {
    MixedGraph g = fixture("invisible.mag");
    DSepLemmaReport r = check_dsep_lemma(g, g.index("X"), g.index("Y"));
    EXPECT_FALSE(r.separable);
    EXPECT_FALSE(r.y_outside_dsep);
    EXPECT_FALSE(r.dsep_separates);
    ASSERT_TRUE(r.nonadjacent);
    EXPECT_FALSE(*r.nonadjacent);
    EXPECT_TRUE(r.consistent());
}

TEST(DSepLemma, Fig4bAllClausesHold) {
    MixedGraph g = fixture("fig4b.mag");
    DSepLemmaReport r = check_dsep_lemma(g, g.index("X"), g.index("Y"));
    EXPECT_TRUE(r.separable);
    EXPECT_TRUE(r.y_outside_dsep);
    EXPECT_TRUE(r.dsep_separates);
    EXPECT_TRUE(r.nonadjacent.value());
}

TEST(DSepLemma, ClausesAgreeOnRandomGraphs) {
    for (GraphKind k : {GraphKind::DAG, GraphKind::MAG}) {
        for (const MixedGraph& g : random_suite(k, 100, 7, 151))
            for (Vertex x = 0; x < g.size(); ++x)
                for (Vertex y = 0; y < g.size(); ++y)
                    if (x != y) EXPECT_TRUE(check_dsep_lemma(g, x, y).consistent()) << serialize(g);
    }
}
