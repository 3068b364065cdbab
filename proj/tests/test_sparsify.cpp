#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dmc/oracle.hpp"
#include "dmc/sparsify.hpp"

using namespace dmc;

namespace {

Forest path_forest(int n) {
    Forest f;
    for (int i = 0; i < n; ++i) f.vertices.push_back(i);
    for (int i = 0; i + 1 < n; ++i) f.edges.push_back({i, i + 1, 1, {}});
    return f;
}

// center 0, leaves 1..3
Forest star_forest() {
    Forest f;
    f.vertices = {0, 1, 2, 3};
    for (int i = 1; i <= 3; ++i) f.edges.push_back({0, i, 1, {}});
    return f;
}

Multigraph path_graph(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
    return g;
}

Multigraph two_triangles() {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(4, 5, 1);
    g.add_edge(3, 5, 1);
    g.add_edge(2, 3, 1);
    return g;
}

std::int64_t lam(const Multigraph& g, VertexId a, VertexId b, int c) {
    return oracle::steiner_min_cut(g, {a}, {b}, c);
}

}  // namespace

TEST(ConnectingPaths, PathEndpoints) {
    auto paths = connecting_paths(path_forest(5), {0, 4});
    ASSERT_EQ(paths.size(), 1u);
    EXPECT_EQ(paths[0].walk, (std::vector<VertexId>{0, 1, 2, 3, 4}));
}

TEST(ConnectingPaths, StarMeetsAtCenter) {
    auto paths = connecting_paths(star_forest(), {1, 2, 3});
    ASSERT_EQ(paths.size(), 3u);
    for (const auto& p : paths) {
        ASSERT_EQ(p.walk.size(), 2u);
        EXPECT_TRUE(p.walk.front() == 0 || p.walk.back() == 0);
    }
}

TEST(ConnectingPaths, SingleTerminalIsEmpty) { EXPECT_TRUE(connecting_paths(path_forest(4), {0}).empty()); }

TEST(Contract, PathAndStar) {
    auto cp = contract(path_forest(5), {0, 4});
    EXPECT_EQ(cp.vertices, (std::vector<VertexId>{0, 4}));
    ASSERT_EQ(cp.edges.size(), 1u);
    EXPECT_EQ(cp.edges[0].path.size(), 5u);

    auto cs = contract(star_forest(), {1, 2, 3});
    EXPECT_EQ(cs.vertices.size(), 4u);
    EXPECT_EQ(cs.edges.size(), 3u);

    auto ce = contract(path_forest(5), {});
    EXPECT_TRUE(ce.vertices.empty());
    EXPECT_TRUE(ce.edges.empty());
}

TEST(Contract, SpanningForestAvoidsExcluded) {
    auto g = two_triangles();
    auto bridge = *g.find_edge(2, 3);
    auto f = spanning_forest(g, {{2, 3, 1, bridge.eid}});
    EXPECT_EQ(f.edges.size(), 4u);
    for (const auto& e : f.edges) EXPECT_NE(e.eid.id, bridge.eid.id);
}

TEST(Containment, TrivialTerminalSets) {
    auto g = path_graph(3);
    for (const std::vector<VertexId>& T : {std::vector<VertexId>{}, std::vector<VertexId>{1}}) {
        auto cc = build_containment(g, T, 1);
        EXPECT_TRUE(cc.cc.empty());
        ASSERT_EQ(cc.refinement.size(), 1u);
        EXPECT_EQ(cc.refinement.clusters[0].size(), 3u);
    }
}

TEST(Containment, PathHasCutEdge) {
    auto g = path_graph(3);
    auto cc = build_containment(g, {0, 2}, 1);
    EXPECT_FALSE(cc.cc.empty());
    EXPECT_FALSE(validate_containment(g, {0, 2}, 1, cc.cc).has_value());
}

TEST(Containment, FallbackIsAllEdgesAndSingletons) {
    auto g = two_triangles();
    auto fb = containment_fallback(g);
    EXPECT_EQ(fb.cc.size(), g.num_triples());
    EXPECT_EQ(fb.refinement.size(), g.n());
    EXPECT_FALSE(validate_containment(g, {0, 2, 4}, 3, fb.cc).has_value());
}

TEST(ValidateContainment, Examples) {
    auto p = path_graph(3);
    auto v = validate_containment(p, {0, 2}, 1, {});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->min_cut, 1);
    EXPECT_EQ(v->restricted, 2);

    auto g = two_triangles();
    auto b = *g.find_edge(2, 3);
    EXPECT_FALSE(validate_containment(g, {2, 3}, 1, {{2, 3, 1, b.eid}}).has_value());
}

TEST(ValidateContainment, RandomInstancesPass) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        Multigraph g;
        const int n = 6 + t % 6;
        for (int i = 0; i < n; ++i) g.add_vertex(i);
        for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<VertexId>(rng() % i), 1 + static_cast<int>(rng() % 2));
        for (int k = 0; k < n; ++k) {
            VertexId a = rng() % n, b = rng() % n;
            if (a != b && !g.find_edge(a, b)) g.add_edge(a, b, 1);
        }
        std::vector<VertexId> T;
        for (int i = 0; i < n; ++i)
            if (rng() % 2) T.push_back(i);
        const int c = 1 + t % 3;
        auto cc = build_containment(g, T, c);
        EXPECT_FALSE(validate_containment(g, T, c, cc.cc).has_value()) << "trial " << t;
    }
}

TEST(SparsifierCluster, AllEdgesKeepsGraph) {
    auto g = two_triangles();
    auto cc = g.edge_list();
    auto s = build_sparsifier_cluster(g, {2, 3}, cc, spanning_forest(g, cc), 1, 2);
    EXPECT_EQ(s.h.n(), g.n());
    EXPECT_EQ(s.h.m(), g.m());
    for (const auto& e : g.edge_list()) EXPECT_EQ(s.h.find_edge(e.u, e.v)->mult, e.mult);
}

TEST(SparsifierCluster, PathWithOneContainedEdge) {
    auto g = path_graph(3);
    auto ab = *g.find_edge(0, 1);
    std::vector<EdgeRec> cc{{0, 1, 1, ab.eid}};
    const std::int64_t gamma = 2;
    auto s = build_sparsifier_cluster(g, {0, 2}, cc, spanning_forest(g, cc), 1, gamma);
    ASSERT_NE(s.h.find_edge(0, 1), nullptr);
    EXPECT_EQ(s.h.find_edge(0, 1)->mult, 1);
    ASSERT_NE(s.h.find_edge(1, 2), nullptr);
    EXPECT_EQ(s.h.find_edge(1, 2)->mult, gamma);
    EXPECT_EQ(s.h.find_edge(1, 2)->eid.origin, Origin::forest_gamma);
    EXPECT_EQ(lam(s.h, 0, 2, 1), lam(g, 0, 2, 1));
}

TEST(SparsifierCluster, EmptyTerminals) {
    auto g = path_graph(4);
    auto s = build_sparsifier_cluster(g, {}, {}, spanning_forest(g, {}), 1, 2);
    EXPECT_EQ(s.h.n(), 0u);
    EXPECT_THROW(build_sparsifier_cluster(g, {}, {}, spanning_forest(g, {}), 2, 2), ParameterViolation);
}

TEST(SparsifierPartition, Examples) {
    auto g = two_triangles();
    // one cluster without terminals
    auto whole = Partition::from_clusters({g.vertex_list()});
    auto s1 = build_sparsifier_partition(g, whole, {{}}, {spanning_forest(g, {})}, 1, 2);
    EXPECT_EQ(s1.h.n(), 0u);

    auto p = Partition::from_clusters({{0, 1, 2}, {3, 4, 5}});
    std::vector<std::vector<EdgeRec>> cc(2);
    std::vector<Forest> fs{spanning_forest(induced(g, {0, 1, 2}), {}), spanning_forest(induced(g, {3, 4, 5}), {})};
    auto s2 = build_sparsifier_partition(g, p, cc, fs, 1, 2);
    EXPECT_EQ(s2.h.vertex_list(), (std::vector<VertexId>{2, 3}));
    ASSERT_NE(s2.h.find_edge(2, 3), nullptr);
    EXPECT_EQ(s2.h.find_edge(2, 3)->eid.id, g.find_edge(2, 3)->eid.id);

    std::vector<std::vector<VertexId>> single;
    for (VertexId v : g.vertex_list()) single.push_back({v});
    auto ps = Partition::from_clusters(single);
    std::vector<Forest> empty_forests;
    for (VertexId v : g.vertex_list()) empty_forests.push_back({{v}, {}});
    auto s3 = build_sparsifier_partition(g, ps, std::vector<std::vector<EdgeRec>>(g.n()), empty_forests, 1, 2);
    EXPECT_EQ(s3.h.n(), g.n());
    EXPECT_EQ(s3.h.m(), g.m());
}

TEST(ECInit, ExpanderHasNoTerminals) {
    Multigraph g;
    for (int i = 0; i < 5; ++i) g.add_vertex(i);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.add_edge(i, j, 1);
    auto ds = ec_init(g, 3, 0.3, 4);
    EXPECT_EQ(ds.clusters.size(), 1u);
    EXPECT_TRUE(ds.terminals().empty());
    EXPECT_EQ(ds.h.n(), 0u);
}

TEST(ECInit, TwoTrianglesPreserveTerminalConnectivity) {
    auto g = two_triangles();
    auto ds = ec_init(g, 3, 1.0 / 3.0, 4);
    EXPECT_EQ(ds.terminals(), (std::vector<VertexId>{2, 3}));
    EXPECT_EQ(lam(ds.h, 2, 3, 3), lam(g, 2, 3, 3));
}

TEST(ECInit, DisconnectedTerminalsStayDisconnected) {
    auto g = two_triangles();
    g.remove_edge(2, 3);
    g.add_vertex(6);
    g.add_vertex(7);
    g.add_edge(0, 6, 1);
    g.add_edge(4, 7, 1);
    auto ds = ec_init(g, 3, 0.4, 4);
    auto T = ds.terminals();
    for (VertexId a : T)
        for (VertexId b : T)
            if (a < b && (a < 3 || a == 6) != (b < 3 || b == 6)) EXPECT_EQ(lam(ds.h, a, b, 3), 0);
}

TEST(ECUpdate, EmptySequence) {
    auto ds = ec_init(two_triangles(), 3, 1.0 / 3.0, 4);
    auto before = ds.h.serialize();
    auto r = ec_update(ds, {}, 1, 1.0 / 3.0);
    EXPECT_TRUE(r.h_seq.empty());
    EXPECT_TRUE(r.S.empty());
    EXPECT_EQ(ds.h.serialize(), before);
}

TEST(ECUpdate, DeletingBridgeDropsTerminals) {
    auto ds = ec_init(two_triangles(), 3, 1.0 / 3.0, 4);
    auto r = ec_update(ds, {UpdateOp::de(2, 3)}, 1, 1.0 / 3.0);
    auto S = r.S;
    std::sort(S.begin(), S.end());
    EXPECT_EQ(S, (std::vector<VertexId>{2, 3}));
    EXPECT_TRUE(ds.terminals().empty());
}

TEST(ECUpdate, InterclusterInsertion) {
    auto ds = ec_init(two_triangles(), 3, 1.0 / 3.0, 4);
    auto r = ec_update(ds, {UpdateOp::ie(0, 4, 1)}, 1, 1.0 / 3.0);
    std::set<VertexId> S(r.S.begin(), r.S.end());
    EXPECT_TRUE(S.count(0));
    EXPECT_TRUE(S.count(4));
    bool inserted = false;
    for (const auto& op : r.h_seq)
        if (op.kind == UpdateOp::insert_edge && std::min(op.u, op.v) == 0 && std::max(op.u, op.v) == 4) inserted = true;
    EXPECT_TRUE(inserted);
    EXPECT_EQ(ds.h.serialize(), recompute_sparsifier(ds).serialize());
}

TEST(ECUpdate, GradeMustCoverOutput) {
    auto ds = ec_init(two_triangles(), 2, 1.0 / 3.0, 4);
    EXPECT_THROW(ec_update(ds, {UpdateOp::de(2, 3)}, 1, 1.0 / 3.0), ParameterViolation);
}

TEST(ECUpdate, IncrementalMatchesRecompute) {
    std::mt19937_64 rng(4);
    Multigraph g;
    const int n = 24;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<VertexId>(rng() % i), 1);
    for (int k = 0; k < 30; ++k) {
        VertexId a = rng() % n, b = rng() % n;
        if (a != b && !g.find_edge(a, b)) g.add_edge(a, b, 1);
    }
    auto ds = ec_init(g, 15, 0.2, 16);
    int out = 3;
    for (int step = 0; step < 2; ++step) {
        UpdateSeq seq;
        Multigraph cur = ds.g;
        for (int k = 0; k < 3; ++k) {
            VertexId a = rng() % n, b = rng() % n;
            if (a == b) continue;
            auto op = cur.find_edge(a, b) ? UpdateOp::de(a, b) : UpdateOp::ie(a, b, 1);
            cur.apply(op);
            seq.push_back(op);
        }
        ec_update(ds, seq, out, 0.1);
        EXPECT_EQ(ds.h.serialize(), recompute_sparsifier(ds).serialize());
        out = 1;
    }
}

TEST(ECUpdate, VertexDeletedInPrunedBatch) {
    Multigraph g;
    for (int i = 0; i < 13; ++i) g.add_vertex(i);
    for (int i = 0; i < 12; ++i)
        for (int j = i + 1; j < 12; ++j) g.add_edge(i, j, 1);
    g.add_edge(12, 0, 1);
    auto ds = ec_init(g, 3, 0.3, 4);
    ASSERT_EQ(ds.clusters.size(), 1u);
    ec_update(ds, {UpdateOp::de(12, 0), UpdateOp::dv(12)}, 1, 0.3);
    EXPECT_FALSE(ds.cluster_of.count(12));
    EXPECT_EQ(ds.h.serialize(), recompute_sparsifier(ds).serialize());
}
